#ifndef QSERIES_CYCLOTOMIC_HPP
#define QSERIES_CYCLOTOMIC_HPP

#include <vector>

#include "qseries/rational.hpp"

namespace qseries {

/* An element of Q(zeta_N), stored as a residue modulo the N-th cyclotomic
 * polynomial: coef[i] is the coefficient of zeta^i, 0 <= i < phi(N). */
struct Cyclotomic {
    int order = 1;
    std::vector<Rat> coef; // size phi(order)
};

unsigned long euler_phi(int n);

/* Monic Phi_N as a coefficient vector of length phi(N)+1 (low to high).
 * Computed once per N via (x^N - 1) / prod_{d|N, d<N} Phi_d and cached. */
const std::vector<Rat>& cyclotomic_polynomial(int n);

Cyclotomic cyclo_from_rat(int order, const Rat& r);
Cyclotomic cyclo_zeta(int order, long power = 1); // zeta_N^power, any integer power

Cyclotomic cyclo_add(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyclo_sub(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyclo_neg(const Cyclotomic& a);
Cyclotomic cyclo_mul(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyclo_inv(const Cyclotomic& a); // extended Euclid against Phi_N
bool cyclo_is_zero(const Cyclotomic& a);
bool cyclo_eq(const Cyclotomic& a, const Cyclotomic& b);

/* Nonzero only at index 0, i.e. the element lies in the prime field. */
bool cyclo_is_rational(const Cyclotomic& a);

} // namespace qseries

#endif
