#ifndef QSERIES_SERIES_HPP
#define QSERIES_SERIES_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qseries/scalar.hpp"

namespace qseries {

constexpr int kMaxVars = 3; // q plus at most two auxiliary formal variables

using Exps = std::array<int, kMaxVars>; // exponents; unused slots stay 0

/* Variable layout and truncation discipline of a series ring. vars[0] is
 * always "q"; nq bounds the q-exponent, nt the total degree. */
struct VarSpec {
    std::vector<std::string> vars;
    int nq = 0;
    int nt = 0;

    VarSpec() : vars{"q"} {}
    VarSpec(std::vector<std::string> v, int q_bound, int total_bound);

    static VarSpec q_only(int q_bound) { return VarSpec({"q"}, q_bound, q_bound); }

    int index_of(const std::string& name) const; // throws on unknown
    size_t arity() const { return vars.size(); }
    bool operator==(const VarSpec& o) const {
        return vars == o.vars && nq == o.nq && nt == o.nt;
    }
};

/* coef * q^{exps[0]} * v1^{exps[1]} * v2^{exps[2]}; the argument shape fed
 * to the Pochhammer / hypergeometric builders. A bound parameter is a pure
 * coefficient, a formal one carries an exponent. */
struct Monomial {
    Scalar coef = Scalar(1);
    Exps exps{0, 0, 0};

    static Monomial scalar(const Scalar& c) { return {c, {0, 0, 0}}; }
    static Monomial q_power(int k, const Scalar& c = Scalar(1)) {
        return {c, {k, 0, 0}};
    }
    static Monomial var(int index, const Scalar& c = Scalar(1), int q_shift = 0) {
        Monomial m{c, {q_shift, 0, 0}};
        m.exps[index] = 1;
        return m;
    }
    int total_degree() const { return exps[0] + exps[1] + exps[2]; }
};

/* Truncated formal power series over exact scalars.
 *
 * Coefficients live in a map keyed by packed exponents, graded first by
 * total degree then lexicographically, so iteration (and hence comparison
 * and printing) follows a fixed monomial order. No zero is ever stored;
 * every key respects both truncation bounds. */
class Series {
public:
    explicit Series(const VarSpec& spec) : spec_(spec) {}
    Series(const VarSpec& spec, const Scalar& constant);

    static Series zero(const VarSpec& spec) { return Series(spec); }
    static Series one(const VarSpec& spec) { return Series(spec, Scalar(1)); }
    static Series monomial(const VarSpec& spec, const Scalar& c, const Exps& e);
    static Series monomial(const VarSpec& spec, const Monomial& m) {
        return monomial(spec, m.coef, m.exps);
    }

    const VarSpec& spec() const { return spec_; }
    bool is_zero() const { return coef_.empty(); }
    size_t term_count() const { return coef_.size(); }
    Scalar at(const Exps& e) const;
    Scalar constant_term() const { return at({0, 0, 0}); }

    /* In-bounds check for one exponent tuple. */
    bool in_bounds(const Exps& e) const {
        return e[0] <= spec_.nq && e[0] + e[1] + e[2] <= spec_.nt;
    }

    void add_term(const Exps& e, const Scalar& c); // accumulate, truncating
    void set_term(const Exps& e, const Scalar& c); // overwrite, truncating

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series& operator+=(const Series& b);
    Series& operator-=(const Series& b);
    Series& operator*=(const Series& b) { *this = *this * b; return *this; }
    Series scaled(const Scalar& s) const;
    Series pow(unsigned e) const;

    bool operator==(const Series& o) const {
        return spec_ == o.spec_ && coef_ == o.coef_;
    }

    /* f(v_index -> v^shift removal): these three keep the ring's VarSpec. */
    Series derivative(int var_index) const;
    Series slice(int var_index, int degree) const; // coefficient of v^degree
    Series substitute(int var_index, const Scalar& value) const;

    /* Lowest total degree among stored monomials (nt+1 when zero). */
    int min_total_degree() const;

    void for_each(const std::function<void(const Exps&, const Scalar&)>& fn) const;

    std::string str() const; // canonical human form, graded order
    std::string json() const;

private:
    static uint64_t pack(const Exps& e);
    static Exps unpack(uint64_t k);

    VarSpec spec_;
    std::map<uint64_t, Scalar> coef_;
};

/* Multiplicative inverse; requires an invertible (nonzero) constant term. */
Series invert(const Series& s);

/* (1-x)^{-alpha} = sum_j binom(alpha+j-1, j) x^j for x with zero constant
 * term; for alpha a negative integer -m this is the polynomial (1-x)^m. */
Series binom_expand(const Series& x, const Rat& alpha);

/* prod_{i=0}^{n-1} (1 - x q^i), truncated. */
Series pochhammer(const VarSpec& spec, const Monomial& x, unsigned n);

/* (x; q)_infinity; factors beyond the truncation bounds are identically 1
 * there, so the product always terminates. */
Series pochhammer_inf(const VarSpec& spec, const Monomial& x);

/* Gaussian binomial [N n] = (q;q)_N / ((q;q)_n (q;q)_{N-n}). */
Series qbinom_gauss(const VarSpec& spec, unsigned N, unsigned n);

enum class HypergeomKind { Phi21, Phi32 };

/* Partial sum of the basic hypergeometric series
 *   sum_{n=0}^{terms} (upper)_n z^n / ((lower)_n (q;q)_n).
 * Exact to the bounds whenever z has positive minimal degree and
 * terms >= nt. */
Series basic_hypergeom(const VarSpec& spec, HypergeomKind kind,
                       const std::vector<Monomial>& upper,
                       const std::vector<Monomial>& lower, const Monomial& z,
                       unsigned terms);

struct Mismatch {
    Exps exps;
    Scalar lhs, rhs;
};

/* First differing monomial in graded order, or nullopt when equal. */
std::optional<Mismatch> series_compare(const Series& a, const Series& b);

struct EvalResult {
    double value = 0.0;
    double tail_bound = 0.0;
};

/* Numeric evaluation with every variable bound; |q| < 1 required. The tail
 * bound is |q|^{nq+1}/(1-|q|) times the largest coefficient magnitude among
 * the top three q-degrees. */
EvalResult eval_numeric(const Series& s,
                        const std::map<std::string, double>& binding);

} // namespace qseries

#endif
