#include "qseries/builders.hpp"

namespace qseries::build {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.coef = a.coef * b.coef;
    for (int i = 0; i < kMaxVars; ++i) m.exps[i] = a.exps[i] + b.exps[i];
    return m;
}

Monomial mono_pow(const Monomial& a, unsigned e) {
    Monomial m;
    m.coef = a.coef.pow((long)e);
    for (int i = 0; i < kMaxVars; ++i) m.exps[i] = a.exps[i] * (int)e;
    return m;
}

namespace {

bool is_pure_scalar(const Monomial& m) {
    return m.exps[0] == 0 && m.exps[1] == 0 && m.exps[2] == 0;
}

bool mono_in_bounds(const VarSpec& spec, const Monomial& m) {
    return m.exps[0] <= spec.nq && m.total_degree() <= spec.nt;
}

} // namespace

Series geom(const VarSpec& spec, const Monomial& x) {
    if (is_pure_scalar(x)) {
        Scalar d = Scalar(1) - x.coef;
        return Series(spec, d.inv());
    }
    Series out(spec);
    Monomial p{Scalar(1), {0, 0, 0}};
    while (mono_in_bounds(spec, p) && !p.coef.is_zero()) {
        out.add_term(p.exps, p.coef);
        p = mono_mul(p, x);
    }
    return out;
}

Series geom_from1(const VarSpec& spec, const Monomial& x) {
    if (is_pure_scalar(x)) {
        Scalar d = Scalar(1) - x.coef;
        return Series(spec, x.coef * d.inv());
    }
    Series out = geom(spec, x);
    out.add_term({0, 0, 0}, Scalar(-1));
    return out;
}

Series inv_pow_one_minus(const VarSpec& spec, const Monomial& x, const Rat& alpha) {
    if (is_pure_scalar(x)) {
        if (alpha.get_den() != 1)
            throw std::domain_error("fractional power of a scalar is not exact");
        Scalar d = Scalar(1) - x.coef;
        return Series(spec, d.pow(-alpha.get_num().get_si()));
    }
    return binom_expand(Series::monomial(spec, x), alpha);
}

Series poch_q_inf(const VarSpec& spec) {
    return pochhammer_inf(spec, Monomial::q_power(1));
}

Series divisor_series(const VarSpec& spec, unsigned m, const Monomial& base) {
    Series out(spec);
    for (int n = 1; n <= spec.nq; ++n) {
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            Monomial p = mono_pow(base, (unsigned)d);
            p.exps[0] += n;
            if (!mono_in_bounds(spec, p)) continue;
            Int dm;
            mpz_ui_pow_ui(dm.get_mpz_t(), (unsigned long)d, m);
            out.add_term(p.exps, p.coef * Scalar(Rat(dm)));
        }
    }
    return out;
}

Series polylog_series(const VarSpec& spec, unsigned m, const Monomial& x) {
    if (is_pure_scalar(x))
        return Series(spec, polylog_neg(m, x.coef));
    Series out(spec);
    Monomial p = x;
    for (long k = 1; mono_in_bounds(spec, p); ++k, p = mono_mul(p, x)) {
        Int km;
        mpz_ui_pow_ui(km.get_mpz_t(), (unsigned long)k, m);
        out.add_term(p.exps, p.coef * Scalar(Rat(km)));
    }
    return out;
}

Series sfrak(const VarSpec& spec, unsigned m, const Monomial& a, const Monomial& c) {
    Monomial ac = mono_mul(a, c);
    return divisor_series(spec, m, c) - polylog_series(spec, m, ac) -
           divisor_series(spec, m, ac);
}

Series uchimura_weighted(const VarSpec& spec,
                         const std::function<Rat(long)>& weight,
                         const Monomial& c, long start) {
    Series out(spec);
    for (long n = std::max(start, 1L);; ++n) {
        Monomial lead = mono_pow(c, (unsigned)n);
        lead.exps[0] += (int)n;
        if (!mono_in_bounds(spec, lead)) break;
        Rat w = weight(n);
        if (w == 0) continue;
        Series tail = pochhammer_inf(spec, Monomial::q_power((int)n + 1));
        lead.coef = lead.coef * Scalar(w);
        out += tail * Series::monomial(spec, lead);
    }
    return out;
}

Series uchimura_sum(const VarSpec& spec, unsigned m, const Monomial& c, long start) {
    return uchimura_weighted(
        spec,
        [m](long n) {
            Int nm;
            mpz_ui_pow_ui(nm.get_mpz_t(), (unsigned long)n, m);
            return Rat(nm);
        },
        c, start);
}

Series alternating_pole_sum(const VarSpec& spec, const Rat& alpha, long r) {
    Series out(spec);
    Series inv_qfact = Series::one(spec); // 1/(q;q)_n, grown factor by factor
    for (long n = 1;; ++n) {
        long lead = n * (n - 1) / 2 + n * r;
        if (lead > spec.nq) break;
        inv_qfact = inv_qfact * geom(spec, Monomial::q_power((int)n));
        Series term = inv_pow_one_minus(spec, Monomial::q_power((int)n), alpha) *
                      inv_qfact;
        Scalar sign(n % 2 ? 1 : -1);
        out += term * Series::monomial(spec, Monomial::q_power((int)lead, sign));
    }
    return out;
}

Series nested_divisor_sum(const VarSpec& spec, unsigned k) {
    // level[j] holds the (i+1)-fold inner sum with outermost index <= j;
    // peel levels from the innermost outward
    const int limit = spec.nq;
    std::vector<Series> level((size_t)limit + 1, Series::zero(spec));
    for (unsigned depth = 0; depth < k; ++depth) {
        std::vector<Series> next((size_t)limit + 1, Series::zero(spec));
        Series acc(spec);
        for (int j = 1; j <= limit; ++j) {
            Series term = geom_from1(spec, Monomial::q_power(j));
            if (depth > 0) term = term * level[j];
            acc += term;
            next[j] = acc;
        }
        level = std::move(next);
    }
    return level[limit];
}

Series t_func(const VarSpec& spec, unsigned r, const Monomial& a,
              const Monomial& c, const std::optional<Monomial>& x) {
    Series out(spec);
    Monomial xc = x ? mono_mul(*x, c) : c;
    Monomial ac = mono_mul(a, c);
    Monomial xac = x ? mono_mul(*x, ac) : ac;
    // sum_{n>=1} (c q^n)^r / (1 - x c q^n)^r
    for (long n = 1; (long)r * n <= spec.nq; ++n) {
        Monomial num = mono_pow(c, r);
        num.exps[0] += (int)(r * n);
        if (!mono_in_bounds(spec, num)) break;
        Monomial pole = xc;
        pole.exps[0] += (int)n;
        out += inv_pow_one_minus(spec, pole, Rat((long)r)) *
               Series::monomial(spec, num);
    }
    // minus sum_{n>=0} (a c q^n)^r / (1 - x a c q^n)^r
    for (long n = 0;; ++n) {
        Monomial num = mono_pow(ac, r);
        num.exps[0] += (int)(r * (unsigned)n);
        if (!mono_in_bounds(spec, num)) break;
        Monomial pole = xac;
        pole.exps[0] += (int)n;
        out -= inv_pow_one_minus(spec, pole, Rat((long)r)) *
               Series::monomial(spec, num);
    }
    return out;
}

Series eulerian_at(const VarSpec& spec, unsigned m, const Monomial& x) {
    PolyQ am = eulerian_poly(m);
    Series out(spec);
    am.for_each([&](const std::vector<int>& e, const Rat& coef) {
        Monomial p = mono_pow(x, (unsigned)e[0]);
        p.coef = p.coef * Scalar(coef);
        out.add_term(p.exps, p.coef);
    });
    return out;
}

Series exp_series(const Series& e) {
    if (!e.constant_term().is_zero())
        throw std::domain_error("exp_series: nonzero constant term");
    Series out = Series::one(e.spec());
    Series power = Series::one(e.spec());
    Rat inv_fact(1);
    for (int j = 1; j <= e.spec().nt; ++j) {
        power = power * e;
        if (power.is_zero()) break;
        inv_fact /= j;
        out += power.scaled(Scalar(inv_fact));
    }
    return out;
}

Series rehome(const Series& s, const VarSpec& target) {
    // map source variable slots to target slots by name
    std::vector<int> where(s.spec().arity(), -1);
    for (size_t i = 0; i < s.spec().arity(); ++i)
        for (size_t j = 0; j < target.arity(); ++j)
            if (s.spec().vars[i] == target.vars[j]) where[i] = (int)j;
    Series out(target);
    s.for_each([&](const Exps& e, const Scalar& v) {
        Exps t{0, 0, 0};
        for (size_t i = 0; i < s.spec().arity(); ++i) {
            if (!e[i]) continue;
            if (where[i] < 0)
                throw std::domain_error("rehome: exponent on a dropped variable");
            t[where[i]] += e[i];
        }
        if (!out.in_bounds(t))
            throw std::domain_error("rehome: monomial exceeds target bounds");
        out.add_term(t, v);
    });
    return out;
}

Series restrict_to(const Series& s, const VarSpec& target) {
    if (s.spec().vars != target.vars)
        throw std::domain_error("restrict_to: variable mismatch");
    Series out(target);
    s.for_each([&](const Exps& e, const Scalar& v) {
        if (out.in_bounds(e)) out.add_term(e, v);
    });
    return out;
}

} // namespace qseries::build
