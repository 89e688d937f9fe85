#ifndef QSERIES_COMBINATORICS_HPP
#define QSERIES_COMBINATORICS_HPP

#include <vector>

#include "qseries/polynomial.hpp"
#include "qseries/rational.hpp"
#include "qseries/scalar.hpp"

namespace qseries {

/* Signed Stirling numbers of the first kind: sum_l s(n,l) x^l = falling
 * factorial x(x-1)...(x-n+1); s(0,0) = 1; zero for k > n. */
Int stirling_first(unsigned n, unsigned k);

/* Stirling numbers of the second kind. */
Int stirling_second(unsigned n, unsigned k);

/* Generalized binomial alpha(alpha-1)...(alpha-n+1)/n! for rational alpha. */
Rat gen_binom(const Rat& alpha, unsigned n);

/* Eulerian polynomial A_m(x), the numerator of sum_j (j+1)^m x^j over
 * (1-x)^{-(m+1)}. A_0 = 1, A_1 = 1, A_2 = 1+x, A_3 = 1+4x+x^2. */
PolyQ eulerian_poly(unsigned m);

/* Complete Bell polynomial Y_m(u_1..u_m), summed over partitions of m. */
PolyQ bell_poly(unsigned m);

/* sigma_{m,c}(n) = sum_{d|n} d^m c^d. */
Scalar divisor_sigma(unsigned m, const Scalar& c, unsigned n);

/* Li_{-m}(x) = x A_m(x) / (1-x)^{m+1}, exact; pole at x = 1. */
Scalar polylog_neg(unsigned m, const Scalar& x);

/* Dilcher's coefficient tables A(j,r,t), C(k,r,t) (including t = 0) and
 * a(k,t) = C(k,1,t), for 1 <= j,k <= maxJ/maxR bounds. */
struct DilcherCoeffTable {
    int max_j = 0, max_r = 0;
    Rat A(int j, int r, int t) const;
    Rat C(int k, int r, int t) const;
    Rat a(int k, int t) const { return C(k, 1, t); }
    std::map<std::tuple<int, int, int>, Rat> a_table, c_table;
};

DilcherCoeffTable dilcher_coeffs(int max_j, int max_r);

/* Single A(j,r,t) by the defining sum, any integer r. */
Rat dilcher_A(int j, int r, int t);

/* Q_{h,r} from the T_r expansion, 0 <= h <= r-1. */
Rat q_coef(unsigned h, unsigned r);

/* N_1 = x_1; N_{i+1} = x_1 N_i + D(N_i) with the derivation D x_r = r x_{r+1}. */
PolyQ n_poly(unsigned i);

/* P_k(x_0..x_{k-1}) = sum_{r=1}^k binom(k-1, k-r) (1/r!) N_r(L_1..L_r),
 * where L_rho = sum_h Q_{h,rho} x_h. */
PolyQ p_poly(unsigned k);

/* Limit coefficients h_1..h_{K+2} of the recurrence theorems, from the
 * polynomial f(n) = sum c_k n^k given by its coefficient list. */
std::vector<Rat> limit_coeffs(const std::vector<Rat>& f_coeffs);

/* d_m = m! sum_{k>=m} c_k stirling2(k,m) and e_{m,j} = (-1)^j binom(m-1,j),
 * the pieces of the partial-fraction form of F(q^n). */
std::vector<Rat> limit_dm(const std::vector<Rat>& f_coeffs); // index 0 = c_0
Rat limit_emj(unsigned m, unsigned j);

} // namespace qseries

#endif
