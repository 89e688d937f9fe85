#include "qseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qseries {

VarSpec::VarSpec(std::vector<std::string> v, int q_bound, int total_bound)
    : vars(std::move(v)), nq(q_bound), nt(total_bound) {
    if (vars.empty() || vars[0] != "q")
        throw std::invalid_argument("first variable must be q");
    if (vars.size() > kMaxVars)
        throw std::invalid_argument("at most two auxiliary variables");
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw std::invalid_argument("duplicate variable name");
    if (nq > nt) throw std::invalid_argument("nq must not exceed nt");
    if (nq < 0) throw std::invalid_argument("negative bound");
}

int VarSpec::index_of(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return (int)i;
    throw std::invalid_argument("unknown variable: " + name);
}

/* Key layout: total degree in the top 16 bits, then the exponents, so the
 * map's integer order is graded lexicographic. */
uint64_t Series::pack(const Exps& e) {
    uint64_t total = (uint64_t)(e[0] + e[1] + e[2]);
    return (total << 48) | ((uint64_t)e[0] << 32) | ((uint64_t)e[1] << 16) |
           (uint64_t)e[2];
}

Exps Series::unpack(uint64_t k) {
    return Exps{(int)((k >> 32) & 0xffff), (int)((k >> 16) & 0xffff),
                (int)(k & 0xffff)};
}

Series::Series(const VarSpec& spec, const Scalar& constant) : spec_(spec) {
    if (!constant.is_zero()) coef_.emplace(pack({0, 0, 0}), constant);
}

Series Series::monomial(const VarSpec& spec, const Scalar& c, const Exps& e) {
    Series s(spec);
    s.add_term(e, c);
    return s;
}

Scalar Series::at(const Exps& e) const {
    auto it = coef_.find(pack(e));
    return it == coef_.end() ? Scalar(0) : it->second;
}

void Series::add_term(const Exps& e, const Scalar& c) {
    if (c.is_zero() || !in_bounds(e)) return;
    uint64_t k = pack(e);
    auto [it, inserted] = coef_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coef_.erase(it);
    }
}

void Series::set_term(const Exps& e, const Scalar& c) {
    if (!in_bounds(e)) return;
    uint64_t k = pack(e);
    if (c.is_zero())
        coef_.erase(k);
    else
        coef_[k] = c;
}

Series Series::operator-() const {
    Series out(spec_);
    for (const auto& [k, v] : coef_) out.coef_.emplace(k, -v);
    return out;
}

static void require_same_spec(const Series& a, const Series& b) {
    if (!(a.spec() == b.spec()))
        throw std::invalid_argument("VarSpec mismatch");
}

Series& Series::operator+=(const Series& b) {
    require_same_spec(*this, b);
    for (const auto& [k, v] : b.coef_) {
        auto [it, inserted] = coef_.emplace(k, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) coef_.erase(it);
        }
    }
    return *this;
}

Series& Series::operator-=(const Series& b) {
    require_same_spec(*this, b);
    for (const auto& [k, v] : b.coef_) {
        auto [it, inserted] = coef_.emplace(k, -v);
        if (!inserted) {
            it->second -= v;
            if (it->second.is_zero()) coef_.erase(it);
        }
    }
    return *this;
}

Series operator+(const Series& a, const Series& b) {
    Series out = a;
    out += b;
    return out;
}

Series operator-(const Series& a, const Series& b) {
    Series out = a;
    out -= b;
    return out;
}

Series operator*(const Series& a, const Series& b) {
    require_same_spec(a, b);
    Series out(a.spec());
    const int nt = a.spec().nt;
    const int nq = a.spec().nq;
    for (const auto& [ka, va] : a.coef_) {
        const Exps ea = Series::unpack(ka);
        const int grade_a = (int)(ka >> 48);
        if (grade_a > nt) break;
        // partner grades above nt - grade_a cannot contribute
        const uint64_t limit = (uint64_t)(nt - grade_a + 1) << 48;
        for (auto it = b.coef_.begin(); it != b.coef_.end() && it->first < limit;
             ++it) {
            const Exps eb = Series::unpack(it->first);
            Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            if (e[0] > nq) continue;
            Scalar prod = va * it->second;
            if (prod.is_zero()) continue;
            uint64_t k = Series::pack(e);
            auto [slot, inserted] = out.coef_.emplace(k, prod);
            if (!inserted) {
                slot->second += prod;
                if (slot->second.is_zero()) out.coef_.erase(slot);
            }
        }
    }
    return out;
}

Series Series::scaled(const Scalar& s) const {
    Series out(spec_);
    if (s.is_zero()) return out;
    for (const auto& [k, v] : coef_) {
        Scalar prod = v * s;
        if (!prod.is_zero()) out.coef_.emplace(k, prod);
    }
    return out;
}

Series Series::pow(unsigned e) const {
    Series out = Series::one(spec_);
    Series base = *this;
    while (e) {
        if (e & 1) out = out * base;
        if (e >>= 1) base = base * base;
    }
    return out;
}

Series Series::derivative(int var_index) const {
    Series out(spec_);
    for (const auto& [k, v] : coef_) {
        Exps e = unpack(k);
        if (e[var_index] == 0) continue;
        Scalar c = v * Scalar(e[var_index]);
        e[var_index] -= 1;
        out.coef_.emplace(pack(e), c);
    }
    return out;
}

Series Series::slice(int var_index, int degree) const {
    Series out(spec_);
    for (const auto& [k, v] : coef_) {
        Exps e = unpack(k);
        if (e[var_index] != degree) continue;
        e[var_index] = 0;
        out.coef_.emplace(pack(e), v);
    }
    return out;
}

Series Series::substitute(int var_index, const Scalar& value) const {
    Series out(spec_);
    for (const auto& [k, v] : coef_) {
        Exps e = unpack(k);
        Scalar c = v * value.pow(e[var_index]);
        e[var_index] = 0;
        out.add_term(e, c);
    }
    return out;
}

int Series::min_total_degree() const {
    if (coef_.empty()) return spec_.nt + 1;
    return (int)(coef_.begin()->first >> 48);
}

void Series::for_each(
    const std::function<void(const Exps&, const Scalar&)>& fn) const {
    for (const auto& [k, v] : coef_) fn(unpack(k), v);
}

std::string Series::str() const {
    if (coef_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : coef_) {
        Exps e = unpack(k);
        std::string c = v.str();
        bool negative = !c.empty() && c[0] == '-';
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        if (negative) c = c.substr(1);
        bool has_var = e[0] || e[1] || e[2];
        bool unit = (c == "1");
        if (!unit || !has_var) out << c;
        bool star = !unit && has_var;
        for (size_t i = 0; i < spec_.vars.size(); ++i) {
            if (!e[i]) continue;
            if (star) out << "*";
            out << spec_.vars[i];
            if (e[i] > 1) out << "^" << e[i];
            star = true;
        }
        first = false;
    }
    return out.str();
}

std::string Series::json() const {
    std::ostringstream out;
    out << "{\"vars\":[";
    for (size_t i = 0; i < spec_.vars.size(); ++i)
        out << (i ? "," : "") << "\"" << spec_.vars[i] << "\"";
    out << "],\"nq\":" << spec_.nq << ",\"nt\":" << spec_.nt << ",\"coeffs\":[";
    bool first = true;
    for (const auto& [k, v] : coef_) {
        Exps e = unpack(k);
        if (!first) out << ",";
        out << "{\"e\":[";
        for (size_t i = 0; i < spec_.vars.size(); ++i)
            out << (i ? "," : "") << e[i];
        out << "],";
        if (v.is_rational()) {
            const Rat& r = v.as_rat();
            out << "\"num\":\"" << r.get_num().get_str() << "\",\"den\":\""
                << r.get_den().get_str() << "\"";
        } else {
            const Cyclotomic& c = v.as_cyclo();
            out << "\"zeta_order\":" << c.order << ",\"zeta_coeffs\":[";
            for (size_t i = 0; i < c.coef.size(); ++i)
                out << (i ? "," : "") << "{\"num\":\""
                    << c.coef[i].get_num().get_str() << "\",\"den\":\""
                    << c.coef[i].get_den().get_str() << "\"}";
            out << "]";
        }
        out << "}";
        first = false;
    }
    out << "]}";
    return out.str();
}

/* Graded-component recursion: with s = s0 + higher terms, the inverse b
 * satisfies b_0 = 1/s0 and, for each total degree d >= 1,
 *   b_d = -1/s0 * sum_{e=1..d} s_e b_{d-e}. */
Series invert(const Series& s) {
    Scalar c0 = s.constant_term();
    if (c0.is_zero())
        throw std::domain_error("series_invert: zero constant term");
    const int nt = s.spec().nt;
    Scalar inv0 = c0.inv();

    // bucket s by total degree
    std::vector<std::vector<std::pair<Exps, Scalar>>> sbuckets(nt + 1);
    s.for_each([&](const Exps& e, const Scalar& v) {
        sbuckets[e[0] + e[1] + e[2]].push_back({e, v});
    });

    Series out(s.spec(), inv0);
    std::vector<std::vector<std::pair<Exps, Scalar>>> bbuckets(nt + 1);
    bbuckets[0].push_back({{0, 0, 0}, inv0});
    const int nq = s.spec().nq;
    for (int d = 1; d <= nt; ++d) {
        std::map<Exps, Scalar> acc;
        for (int e = 1; e <= d; ++e) {
            for (const auto& [ea, va] : sbuckets[e])
                for (const auto& [eb, vb] : bbuckets[d - e]) {
                    Exps ee{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
                    if (ee[0] > nq) continue;
                    auto [it, inserted] = acc.emplace(ee, va * vb);
                    if (!inserted) it->second += va * vb;
                }
        }
        for (const auto& [e, v] : acc) {
            Scalar c = -(inv0 * v);
            if (c.is_zero()) continue;
            bbuckets[d].push_back({e, c});
            out.add_term(e, c);
        }
    }
    return out;
}

Series binom_expand(const Series& x, const Rat& alpha) {
    if (!x.constant_term().is_zero())
        throw std::domain_error("binom_expand: nonzero constant term");
    Series out = Series::one(x.spec());
    Series xp = Series::one(x.spec());
    Rat coef(1);
    for (int j = 1; j <= x.spec().nt; ++j) {
        coef *= (alpha + j - 1);
        coef /= j;
        if (coef == 0) break; // alpha was a negative integer; done
        xp = xp * x;
        if (xp.is_zero()) break;
        out += xp.scaled(Scalar(coef));
    }
    return out;
}

namespace {

/* 1 - x q^i as a two-term series; zero second term once out of bounds. */
Series pochhammer_factor(const VarSpec& spec, const Monomial& x, int i) {
    Series f = Series::one(spec);
    Exps e = x.exps;
    e[0] += i;
    f.add_term(e, -x.coef);
    return f;
}

bool factor_visible(const VarSpec& spec, const Monomial& x, int i) {
    return x.exps[0] + i <= spec.nq && x.total_degree() + i <= spec.nt;
}

} // namespace

Series pochhammer(const VarSpec& spec, const Monomial& x, unsigned n) {
    Series out = Series::one(spec);
    for (unsigned i = 0; i < n; ++i) {
        if (!factor_visible(spec, x, (int)i)) break; // all later factors are 1 here
        out = out * pochhammer_factor(spec, x, (int)i);
        if (out.is_zero()) break;
    }
    return out;
}

Series pochhammer_inf(const VarSpec& spec, const Monomial& x) {
    Series out = Series::one(spec);
    for (int i = 0; factor_visible(spec, x, i); ++i) {
        out = out * pochhammer_factor(spec, x, i);
        if (out.is_zero()) break;
    }
    return out;
}

Series qbinom_gauss(const VarSpec& spec, unsigned N, unsigned n) {
    if (n > N) throw std::invalid_argument("qbinom_gauss: n > N");
    Monomial q1 = Monomial::q_power(1);
    Series num = pochhammer(spec, q1, N);
    Series den = pochhammer(spec, q1, n) * pochhammer(spec, q1, N - n);
    return num * invert(den);
}

Series basic_hypergeom(const VarSpec& spec, HypergeomKind kind,
                       const std::vector<Monomial>& upper,
                       const std::vector<Monomial>& lower, const Monomial& z,
                       unsigned terms) {
    const size_t want_up = kind == HypergeomKind::Phi21 ? 2 : 3;
    const size_t want_lo = kind == HypergeomKind::Phi21 ? 1 : 2;
    if (upper.size() != want_up || lower.size() != want_lo)
        throw std::invalid_argument("basic_hypergeom: wrong parameter count");

    // term_0 = 1; term_{n+1} = term_n * prod(1-u q^n) * z
    //                        / (prod(1-l q^n) * (1-q^{n+1}))
    Series term = Series::one(spec);
    Series out = term;
    Monomial q1 = Monomial::q_power(1);
    for (unsigned n = 0; n < terms; ++n) {
        for (const auto& u : upper) term = term * pochhammer_factor(spec, u, (int)n);
        Series den = pochhammer_factor(spec, q1, (int)n);
        for (const auto& l : lower) den = den * pochhammer_factor(spec, l, (int)n);
        if (den.constant_term().is_zero())
            throw std::domain_error("basic_hypergeom: non-invertible lower factor");
        term = term * Series::monomial(spec, z) * invert(den);
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

std::optional<Mismatch> series_compare(const Series& a, const Series& b) {
    require_same_spec(a, b);
    Series diff = a - b;
    if (diff.is_zero()) return std::nullopt;
    std::optional<Mismatch> first;
    diff.for_each([&](const Exps& e, const Scalar&) {
        if (!first) first = Mismatch{e, a.at(e), b.at(e)};
    });
    return first;
}

EvalResult eval_numeric(const Series& s,
                        const std::map<std::string, double>& binding) {
    std::vector<double> vals(s.spec().arity());
    for (size_t i = 0; i < s.spec().arity(); ++i) {
        auto it = binding.find(s.spec().vars[i]);
        if (it == binding.end())
            throw std::invalid_argument("unbound variable: " + s.spec().vars[i]);
        vals[i] = it->second;
    }
    if (std::abs(vals[0]) >= 1.0)
        throw std::domain_error("|q| must be < 1 for numeric evaluation");

    EvalResult r;
    double top_mag = 0.0;
    s.for_each([&](const Exps& e, const Scalar& c) {
        double term = c.to_double();
        for (size_t i = 0; i < s.spec().arity(); ++i)
            term *= std::pow(vals[i], e[i]);
        r.value += term;
        if (e[0] >= s.spec().nq - 2)
            top_mag = std::max(top_mag, std::abs(c.to_double()));
    });
    double aq = std::abs(vals[0]);
    r.tail_bound = std::pow(aq, s.spec().nq + 1) / (1.0 - aq) * top_mag;
    return r;
}

} // namespace qseries
