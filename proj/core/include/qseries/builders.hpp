#ifndef QSERIES_BUILDERS_HPP
#define QSERIES_BUILDERS_HPP

#include <functional>
#include <optional>

#include "qseries/combinatorics.hpp"
#include "qseries/series.hpp"

/* Shared series constructions. Parameters arrive as Monomial values, which
 * covers both bound scalars (pure coefficient) and formal variables (unit
 * exponent), so one code path serves the whole registry. */
namespace qseries::build {

Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_pow(const Monomial& a, unsigned e);

/* 1/(1-x). Pure-scalar x gives the constant scalar inverse (x != 1);
 * otherwise the geometric series in the monomial. */
Series geom(const VarSpec& spec, const Monomial& x);

/* x/(1-x) = sum_{j>=1} x^j. */
Series geom_from1(const VarSpec& spec, const Monomial& x);

/* (1-x)^{-alpha}. Pure-scalar x requires integer alpha. */
Series inv_pow_one_minus(const VarSpec& spec, const Monomial& x, const Rat& alpha);

/* (q;q)_infinity. */
Series poch_q_inf(const VarSpec& spec);

/* sum_{n>=1} sigma_{m,base}(n) q^n, i.e. S_{m,c} / K_{m+1,c}, with sigma by
 * divisor enumeration. */
Series divisor_series(const VarSpec& spec, unsigned m, const Monomial& base);

/* Li_{-m}(x): exact closed form for scalar x, the formal sum
 * sum_{k>=1} k^m x^k otherwise. */
Series polylog_series(const VarSpec& spec, unsigned m, const Monomial& x);

/* S_{m,c} - Li_{-m}(ac) - sum sigma_{m,ac}(n) q^n. */
Series sfrak(const VarSpec& spec, unsigned m, const Monomial& a, const Monomial& c);

/* sum_{n>=start} w(n) c^n q^n (q^{n+1})_infinity; w(n)=n^m gives the
 * moment sums M_m / M_{m,c} and their tails U_{m,i}. */
Series uchimura_weighted(const VarSpec& spec,
                         const std::function<Rat(long)>& weight,
                         const Monomial& c, long start);
Series uchimura_sum(const VarSpec& spec, unsigned m, const Monomial& c,
                    long start = 1);

/* sum_{n>=1} (-1)^{n-1} q^{binom(n,2)+nr} / ((1-q^n)^alpha (q)_n). */
Series alternating_pole_sum(const VarSpec& spec, const Rat& alpha, long r);

/* The k-fold nested sum over j_1 >= ... >= j_k >= 1 of
 * prod q^{j_i}/(1-q^{j_i}). */
Series nested_divisor_sum(const VarSpec& spec, unsigned k);

/* T_{r,a,c}(x, q); x absent means x = 1. */
Series t_func(const VarSpec& spec, unsigned r, const Monomial& a,
              const Monomial& c, const std::optional<Monomial>& x);

/* A_m evaluated at a monomial argument. */
Series eulerian_at(const VarSpec& spec, unsigned m, const Monomial& x);

/* exp of a series with zero constant term. */
Series exp_series(const Series& e);

/* Re-keys a series onto another VarSpec by variable name; exponents on
 * variables missing from the target must be zero. */
Series rehome(const Series& s, const VarSpec& target);

/* Same variables, tighter bounds: drop monomials outside the target. Used
 * by derivative sides, which are built with inflated bounds because d/dx
 * consumes one total degree per application. */
Series restrict_to(const Series& s, const VarSpec& target);

} // namespace qseries::build

#endif
