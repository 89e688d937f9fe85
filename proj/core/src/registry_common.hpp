#ifndef QSERIES_REGISTRY_COMMON_HPP
#define QSERIES_REGISTRY_COMMON_HPP

#include "qseries/identities.hpp"

/* Internal helpers shared by the two registry translation units. */
namespace qseries::reg {

using namespace build;

inline const Monomial kUnit = Monomial::scalar(Scalar(1));

inline Rat nth_power(long n, unsigned m) {
    Int nm;
    mpz_ui_pow_ui(nm.get_mpz_t(), (unsigned long)n, m);
    return Rat(nm);
}

/* sum_{n>=1} (-1)^{n-1} c^n q^{n(n+1)/2} / ((1-q^n)(cq)_n), the
 * Ramanujan-type side shared by several entries. */
inline Series ramanujan_type_sum(const VarSpec& spec, const Monomial& cm) {
    Series out(spec);
    Series inv_cq = Series::one(spec); // 1/(cq)_n
    for (long n = 1;; ++n) {
        long tri = n * (n + 1) / 2;
        Monomial cqn = cm;
        cqn.exps[0] += (int)n;
        inv_cq = inv_cq * geom(spec, cqn);
        Monomial lead = mono_pow(cm, (unsigned)n);
        lead.exps[0] += (int)tri;
        if (lead.exps[0] > spec.nq || lead.total_degree() > spec.nt) break;
        lead.coef = lead.coef * Scalar(n % 2 ? 1 : -1);
        out += geom(spec, Monomial::q_power((int)n)) * inv_cq *
               Series::monomial(spec, lead);
    }
    return out;
}

/* (q)_inf / (cq)_inf. */
inline Series qinf_over_cqinf(const VarSpec& spec, const Monomial& cm) {
    Monomial cq = cm;
    cq.exps[0] += 1;
    return poch_q_inf(spec) * invert(pochhammer_inf(spec, cq));
}

/* Y_m(K_{1,c},...,K_{m,c}) with K_{j,c} = sum sigma_{j-1,c}(n) q^n. */
inline Series bell_in_divisor_sums(const VarSpec& spec, unsigned m,
                                   const Monomial& cm) {
    std::vector<Series> args;
    for (unsigned j = 1; j <= m; ++j)
        args.push_back(divisor_series(spec, j - 1, cm));
    return bell_poly(m).eval(spec, args);
}

/* sum_{n>=1} prod_{i=1}^n (a - q^i) * extra(n) / (q)_{n+qfact_offset}:
 * the (q/a)_n a^n skeleton of the Gupta-Kumar identities. */
inline Series gk_left_sum(const VarSpec& spec, const Monomial& am,
                          const std::function<Series(long)>& extra,
                          int qfact_offset) {
    Series out(spec);
    Series P = Series::one(spec);
    Series invq = Series::one(spec);
    for (long n = 1; n <= spec.nt; ++n) {
        Series factor = Series::monomial(spec, am) -
                        Series::monomial(spec, Monomial::q_power((int)n));
        P = P * factor;
        long fact_top = n + qfact_offset;
        if (fact_top >= 1)
            invq = invq * geom(spec, Monomial::q_power((int)fact_top));
        if (P.is_zero()) break;
        out += P * invq * extra(n);
    }
    return out;
}

/* W(x) = (x a c)_inf / (x c q)_inf with formal x, bound a and c. */
inline Series gk_product_form(const VarSpec& spec, int xv, const Scalar& a,
                              const Scalar& cc) {
    Monomial num = Monomial::var(xv, a * cc);
    Monomial den = Monomial::var(xv, cc, 1);
    return pochhammer_inf(spec, num) * invert(pochhammer_inf(spec, den));
}

inline Series gk_product_form(const Ctx& c) {
    return gk_product_form(c.spec, c.var_index("x"), c.scalar("a"),
                           c.scalar("c"));
}

/* r-fold x-derivative computed at inflated total degree so the result is
 * exact at the caller's bounds. */
inline Series derive_exactly(const VarSpec& spec, int xv, long r,
                             const std::function<Series(const VarSpec&)>& make) {
    VarSpec inflated(spec.vars, spec.nq, spec.nt + (int)r);
    Series w = make(inflated);
    for (long s = 0; s < r; ++s) w = w.derivative(xv);
    return restrict_to(w, spec);
}

inline Binding bind(std::initializer_list<std::pair<const char*, ParamValue>> kv,
                    int tier = 20) {
    Binding b;
    for (const auto& [k, v] : kv) b.values[k] = v;
    b.bounds = Bounds{tier, tier};
    return b;
}

inline ParamValue F() { return FormalTag{}; }

void append_registry_part2(std::vector<IdentityDescriptor>& reg);

} // namespace qseries::reg

#endif
