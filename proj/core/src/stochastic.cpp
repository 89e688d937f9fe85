#include "qseries/stochastic.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace qseries {

using namespace build;

uint64_t SplitMix64::next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return (double)(next() >> 11) * 0x1.0p-53;
}

SplitMix64 SplitMix64::substream(uint64_t seed, uint64_t block) {
    SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ull * (block + 1)));
    return SplitMix64(mixer.next());
}

// ---------------------------------------------------------------- heap ----

double heap_pmf(double q, unsigned n) {
    if (q <= 0.0 || q >= 1.0)
        throw std::domain_error("heap_pmf: q must lie in (0,1)");
    double prod = 1.0;
    for (unsigned i = n + 1;; ++i) {
        double factor = std::pow(q, (double)i);
        if (factor < 1e-16) break;
        prod *= (1.0 - factor);
    }
    return std::pow(q, (double)n) * prod;
}

HeapDistribution HeapDistribution::make(double q) {
    HeapDistribution d;
    d.q = q;
    double mass = 0.0;
    for (unsigned n = 0;; ++n) {
        double p = heap_pmf(q, n);
        d.pmf.push_back(p);
        mass += p;
        d.cdf.push_back(mass);
        if (1.0 - mass < 1e-15 && n > 4) break;
        if (n > 4096) break;
    }
    d.residual = std::max(0.0, 1.0 - mass);
    return d;
}

unsigned HeapDistribution::sample(double unit) const {
    // inverse CDF; binary search for the first cdf entry above `unit`
    size_t lo = 0, hi = cdf.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cdf[mid] > unit) hi = mid;
        else lo = mid + 1;
    }
    return (unsigned)std::min(lo, cdf.size() - 1);
}

MomentEstimates histogram_moments(const std::vector<long>& histogram) {
    MomentEstimates m;
    long trials = 0;
    long double sum = 0;
    for (size_t v = 0; v < histogram.size(); ++v) {
        trials += histogram[v];
        sum += (long double)histogram[v] * (long double)v;
    }
    m.trials = trials;
    if (trials == 0) return m;
    long double mean = sum / trials;
    long double c[7] = {0, 0, 0, 0, 0, 0, 0}; // central moment sums
    for (size_t v = 0; v < histogram.size(); ++v) {
        if (!histogram[v]) continue;
        long double d = (long double)v - mean, p = 1;
        for (int k = 1; k <= 6; ++k) {
            p *= d;
            c[k] += (long double)histogram[v] * p;
        }
    }
    long double n = trials;
    long double m2 = c[2] / n, m3 = c[3] / n, m4 = c[4] / n, m6 = c[6] / n;
    m.mean = (double)mean;
    m.mean_se = (double)std::sqrt((double)(m2 / n));
    m.variance = (double)(m2 * n / (n - 1));
    m.variance_se = (double)std::sqrt(std::max(0.0, (double)((m4 - m2 * m2) / n)));
    // k3 = n^2 m3 / ((n-1)(n-2)); its asymptotic variance is
    // (m6 - m3^2 - 6 m2 m4 + 9 m2^3)/n
    m.third_cumulant = (double)(m3 * n * n / ((n - 1) * (n - 2)));
    m.third_cumulant_se = (double)std::sqrt(
        std::max(0.0, (double)((m6 - m3 * m3 - 6 * m2 * m4 + 9 * m2 * m2 * m2) / n)));
    return m;
}

HeapSampleBatch heap_sample(double q, uint64_t seed, long trials) {
    HeapDistribution dist = HeapDistribution::make(q);
    HeapSampleBatch batch;
    batch.q = q;
    batch.seed = seed;
    batch.trials = trials;
    batch.histogram.assign(dist.pmf.size(), 0);
    for (long done = 0; done < trials;) {
        uint64_t block = (uint64_t)(done / kRngBlock);
        SplitMix64 rng = SplitMix64::substream(seed, block);
        long upto = std::min(trials, (long)((block + 1) * kRngBlock));
        for (; done < upto; ++done) {
            unsigned v = dist.sample(rng.next_unit());
            if (v >= batch.histogram.size()) batch.histogram.resize(v + 1, 0);
            batch.histogram[v] += 1;
        }
    }
    batch.moments = histogram_moments(batch.histogram);
    return batch;
}

// ----------------------------------------------------------------- dag ----

Scalar dag_pmf_exact(int n, const Rat& p, int h) {
    if (h < 1 || h > n) throw std::domain_error("dag_pmf_exact: h out of range");
    Rat q = 1 - p;
    Rat out = rat_pow(q, n - h);
    for (int j = 1; j <= h - 1; ++j) out *= (1 - rat_pow(q, n - j));
    return Scalar(out);
}

std::vector<Rat> dag_enumerate_exact(int n, const Rat& p) {
    if (n < 1 || n > 5)
        throw std::domain_error("dag_enumerate_exact: n must be in 1..5");
    const int m = n * (n - 1) / 2; // candidate edges (i,j), i<j
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});

    std::vector<Rat> table(n, Rat(0));
    for (long mask = 0; mask < (1L << m); ++mask) {
        // reachability from vertex 0 along directed edges i -> j
        std::vector<int> stack{0};
        std::vector<bool> seen(n, false);
        seen[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e = 0; e < m; ++e) {
                if (!(mask >> e & 1) || edges[e].first != v) continue;
                if (!seen[edges[e].second]) {
                    seen[edges[e].second] = true;
                    stack.push_back(edges[e].second);
                }
            }
        }
        int gamma = 0;
        for (bool s : seen) gamma += s;
        int bits = __builtin_popcountl(mask);
        table[gamma - 1] += rat_pow(p, bits) * rat_pow(1 - p, m - bits);
    }
    return table;
}

Rat dag_mean_exact(int n, const Rat& p) {
    Rat mean(0);
    for (int h = 1; h <= n; ++h)
        mean += h * dag_pmf_exact(n, p, h).as_rat();
    return mean;
}

DagTrialBatch dag_sample(int n, double p, uint64_t seed, long trials) {
    if (n < 1) throw std::domain_error("dag_sample: n must be >= 1");
    if (p <= 0.0 || p >= 1.0)
        throw std::domain_error("dag_sample: p must lie in (0,1)");
    DagTrialBatch batch;
    batch.n = n;
    batch.p = p;
    batch.seed = seed;
    batch.trials = trials;
    batch.histogram.assign(n, 0);
    std::vector<uint32_t> adj(n); // adj[i] has bit j set when edge i->j present
    for (long done = 0; done < trials;) {
        uint64_t block = (uint64_t)(done / kRngBlock);
        SplitMix64 rng = SplitMix64::substream(seed, block);
        long upto = std::min(trials, (long)((block + 1) * kRngBlock));
        for (; done < upto; ++done) {
            for (int i = 0; i < n; ++i) {
                adj[i] = 0;
                for (int j = i + 1; j < n; ++j)
                    if (rng.next_unit() < p) adj[i] |= (uint32_t)1 << j;
            }
            uint32_t seen = 1;
            std::vector<int> stack{0};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                uint32_t fresh = adj[v] & ~seen;
                seen |= fresh;
                while (fresh) {
                    int w = __builtin_ctz(fresh);
                    fresh &= fresh - 1;
                    stack.push_back(w);
                }
            }
            batch.histogram[__builtin_popcount(seen) - 1] += 1;
        }
    }
    // moments of gamma itself; histogram index h-1 holds gamma = h
    std::vector<long> shifted(batch.histogram.size() + 1, 0);
    for (size_t i = 0; i < batch.histogram.size(); ++i)
        shifted[i + 1] = batch.histogram[i];
    batch.moments = histogram_moments(shifted);
    return batch;
}

std::string DagTrialBatch::json() const {
    std::ostringstream out;
    out << "{\"command\":\"simulate\",\"kind\":\"dag\",\"n\":" << n
        << ",\"p\":" << p << ",\"seed\":" << seed << ",\"trials\":" << trials
        << ",\"histogram\":[";
    for (size_t i = 0; i < histogram.size(); ++i)
        out << (i ? "," : "") << histogram[i];
    out << "]}";
    return out.str();
}

// ---------------------------------------------------------- recurrences ----

DrivingSequence DrivingSequence::polynomial(std::vector<Rat> c) {
    DrivingSequence f;
    f.kind = Kind::Poly;
    f.poly = std::move(c);
    return f;
}

DrivingSequence DrivingSequence::periodic(std::vector<Rat> pattern) {
    DrivingSequence f;
    f.kind = Kind::Periodic;
    f.pattern = std::move(pattern);
    return f;
}

DrivingSequence DrivingSequence::geometric(const Rat& b) {
    DrivingSequence f;
    f.kind = Kind::Geometric;
    f.base = b;
    return f;
}

Rat DrivingSequence::at(long n) const {
    switch (kind) {
    case Kind::Poly: {
        Rat acc(0), np(1);
        for (size_t k = 0; k < poly.size(); ++k) {
            acc += poly[k] * np;
            np *= n;
        }
        return acc;
    }
    case Kind::Periodic: {
        long N = (long)pattern.size();
        long idx = (n - 1) % N; // pattern holds f(1..N)
        if (idx < 0) idx += N;
        return pattern[(size_t)idx];
    }
    default:
        return rat_pow(base, n);
    }
}

RecurrenceState recurrence_advance(const RecurrenceState& s) {
    RecurrenceState next = s;
    long l = s.index + 1;
    next.index = l;
    const VarSpec& spec = s.t.spec();
    if (s.mode == RecMode::Acs) {
        Series keep = Series::one(spec) -
                      Series::monomial(spec, Monomial::q_power((int)(l - 1)));
        next.t = Series(spec, Scalar(s.f.at(l))) + keep * s.t;
        return next;
    }
    // two-var: divide by the unit (1 - a q^l)
    Monomial aql = Monomial::var(1, Scalar(1), (int)l);
    Series unit_inv = geom(spec, aql);
    Monomial a0 = Monomial::var(1);
    Series numer(spec, Scalar(s.f.at(l)));
    numer -= Series::monomial(spec, a0).scaled(Scalar(s.f.at(l + 1)));
    Series keep = Series::one(spec) -
                  Series::monomial(spec, Monomial::q_power((int)(l - 1)));
    next.t = (numer + keep * s.t) * unit_inv;
    return next;
}

// --------------------------------------------------------------- limits ----

std::vector<Scalar> periodic_ck(const std::vector<Rat>& pattern) {
    if (pattern.empty()) throw std::domain_error("periodic_ck: empty pattern");
    int N = (int)pattern.size();
    std::vector<Scalar> out;
    for (int k = 0; k < N; ++k) {
        Scalar acc(0);
        for (int j = 1; j <= N; ++j)
            acc += Scalar(pattern[(size_t)j - 1]) *
                   Scalar::zeta(N, (long)(1 - j) * k);
        out.push_back(acc * Scalar(rat(1, N)));
    }
    return out;
}

namespace {

long ceil_div(long x, long n) {
    // ceiling of x/n for n > 0
    return x >= 0 ? (x + n - 1) / n : -((-x) / n);
}

/* Closed forms per mode; spec is the target ring of the recurrence side. */
Series limit_closed_form(const LimitConfig& cfg, const VarSpec& spec) {
    switch (cfg.mode) {
    case LimitMode::AcsPoly: {
        std::vector<Rat> h = limit_coeffs(cfg.f.poly);
        Series out(spec);
        for (size_t j = 1; j <= h.size(); ++j) {
            if (h[j - 1] == 0) continue;
            std::vector<Series> args;
            for (size_t s = 0; s < j; ++s)
                args.push_back(divisor_series(spec, (unsigned)s,
                                              Monomial::scalar(Scalar(1))));
            out += p_poly((unsigned)j).eval(spec, args).scaled(Scalar(h[j - 1]));
        }
        return out;
    }
    case LimitMode::TwoVarPoly: {
        std::vector<Rat> h = limit_coeffs(cfg.f.poly);
        Monomial am = Monomial::var(1);
        Series out(spec);
        for (size_t j = 1; j <= h.size(); ++j) {
            if (h[j - 1] == 0) continue;
            std::vector<Series> args;
            for (size_t s = 0; s < j; ++s)
                args.push_back(sfrak(spec, (unsigned)s, am,
                                     Monomial::scalar(Scalar(1))));
            out += p_poly((unsigned)j).eval(spec, args).scaled(Scalar(h[j - 1]));
        }
        return out;
    }
    case LimitMode::GeometricB: {
        const Rat& b = cfg.f.base;
        Scalar bs{b};
        Series out(spec, bs * Scalar(Rat(1) - b).inv());
        Series binf = pochhammer_inf(spec, Monomial::scalar(bs));
        out -= (poch_q_inf(spec) * invert(binf)).scaled(bs);
        return out;
    }
    case LimitMode::Periodic: {
        int N = (int)cfg.f.pattern.size();
        std::vector<Scalar> c = periodic_ck(cfg.f.pattern);
        Monomial am = Monomial::var(1);
        Series out =
            sfrak(spec, 0, am, Monomial::scalar(Scalar(1))).scaled(c[0]);
        Series tail(spec);
        for (int k = 1; k < N; ++k) {
            Scalar zk = Scalar::zeta(N, k);
            out += Series(spec, c[(size_t)k] * (Scalar(1) - zk).inv());
            Monomial azk = am;
            azk.coef = azk.coef * zk;
            tail += (pochhammer_inf(spec, azk) *
                     invert(pochhammer_inf(spec, Monomial::scalar(zk))))
                        .scaled(c[(size_t)k]);
        }
        out -= poch_q_inf(spec) *
               invert(pochhammer_inf(spec, am)) * tail;
        return out;
    }
    default: { // Ceiling
        int N = (int)cfg.f.pattern.size();
        Monomial am = Monomial::var(1);
        Series sum(spec);
        Series A = Series::one(spec);    // (a)_{n-1}
        Series invq = Series::one(spec); // 1/(q)_n
        for (long n = 1; n <= spec.nt; ++n) {
            if (n > 1) {
                Monomial aq = am;
                aq.exps[0] += (int)(n - 2);
                A = A * (Series::one(spec) - Series::monomial(spec, aq));
            }
            invq = invq * geom(spec, Monomial::q_power((int)n));
            Rat w(0);
            for (long j = 1; j <= N; ++j)
                w += cfg.f.pattern[(size_t)j - 1] * ceil_div(n + 1 - j, N);
            if (w == 0) continue;
            Monomial aq1 = am;
            aq1.exps[0] += (int)(n - 1);
            Series top = Series::monomial(spec, Monomial::q_power((int)n)) -
                         Series::monomial(spec, aq1);
            sum += (top * A * invq).scaled(Scalar(w));
        }
        return poch_q_inf(spec) * invert(pochhammer_inf(spec, am)) * sum;
    }
    }
}

/* The partial limit expression at the recurrence's current index. */
Series limit_expression(const LimitConfig& cfg, const RecurrenceState& st) {
    const VarSpec& spec = st.t.spec();
    Rat fsum(0);
    for (long i = 1; i <= st.index; ++i) fsum += cfg.f.at(i);
    if (st.mode == RecMode::Acs) return Series(spec, Scalar(fsum)) - st.t;
    // sum f - a/(1-a) f(l+1) - (1-aq^l)/(1-a) t_l
    Monomial am = Monomial::var(1);
    Series inv1a = geom(spec, am); // 1/(1-a)
    Series out(spec, Scalar(fsum));
    out -= (Series::monomial(spec, am) * inv1a)
               .scaled(Scalar(cfg.f.at(st.index + 1)));
    Monomial aql = am;
    aql.exps[0] += (int)st.index;
    Series front = Series::one(spec) - Series::monomial(spec, aql);
    out -= front * inv1a * st.t;
    return out;
}

} // namespace

LimitReport limit_verify(const LimitConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    LimitReport rep;
    rep.mode = cfg.mode;
    rep.bounds = cfg.bounds;

    bool two_var = cfg.mode == LimitMode::TwoVarPoly ||
                   cfg.mode == LimitMode::Periodic ||
                   cfg.mode == LimitMode::Ceiling;
    VarSpec spec = two_var
                       ? VarSpec({"q", "a"}, cfg.bounds.nq, cfg.bounds.nt)
                       : VarSpec::q_only(cfg.bounds.nq);
    // the ceiling corollary drives the same two-variable recurrence as the
    // periodic theorem; only the closed form differs
    RecMode mode = two_var ? RecMode::TwoVar : RecMode::Acs;
    RecurrenceState st(mode, cfg.f, spec);

    Series prev = limit_expression(cfg, st);
    int stable_steps = 0;
    const long cap = 4L * cfg.bounds.nt;
    while (st.index < cap) {
        st = recurrence_advance(st);
        Series cur = limit_expression(cfg, st);
        if (cur == prev) {
            if (++stable_steps >= 2) {
                rep.stabilized = true;
                break;
            }
        } else {
            stable_steps = 0;
        }
        prev = std::move(cur);
    }
    rep.stabilization_index = st.index;

    if (!rep.stabilized) {
        rep.outcome = Outcome::Review; // flagged, not asserted
    } else {
        Series closed = limit_closed_form(cfg, spec);
        auto mis = series_compare(prev, closed);
        if (mis) {
            rep.outcome = Outcome::Fail;
            rep.mismatch = mis;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

static const char* limit_mode_name(LimitMode m) {
    switch (m) {
    case LimitMode::AcsPoly: return "acs-poly";
    case LimitMode::TwoVarPoly: return "two-var-poly";
    case LimitMode::Periodic: return "periodic";
    case LimitMode::GeometricB: return "geometric-b";
    default: return "ceiling";
    }
}

std::string LimitReport::json() const {
    std::ostringstream out;
    out << "{\"command\":\"limit\",\"id\":\"" << limit_mode_name(mode)
        << "\",\"nq\":" << bounds.nq << ",\"nt\":" << bounds.nt
        << ",\"outcome\":\""
        << (outcome == Outcome::Pass ? "pass"
                                     : outcome == Outcome::Fail ? "fail" : "review")
        << "\",\"stabilization_index\":" << stabilization_index
        << ",\"millis\":" << millis << "}";
    return out.str();
}

} // namespace qseries
