#ifndef QSERIES_STOCHASTIC_HPP
#define QSERIES_STOCHASTIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseries/identities.hpp"
#include "qseries/series.hpp"

namespace qseries {

/* SplitMix64; the documented generator behind every sampler here. Trials
 * are partitioned into blocks of kRngBlock, each block running its own
 * substream derived from (seed, block index), so histogram merging is
 * associative and the stream is reproducible on any build. */
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next();
    double next_unit(); // [0, 1)
    static SplitMix64 substream(uint64_t seed, uint64_t block);
};

constexpr long kRngBlock = 1 << 16;

// ---------------------------------------------------------------- heap ----

/* Pr(X = n) = q^n (q^{n+1}; q)_infinity for 0 < q < 1; the infinite product
 * is truncated once its factors are within 1e-16 of 1. */
double heap_pmf(double q, unsigned n);

struct HeapDistribution {
    double q = 0.5;
    std::vector<double> pmf; // n = 0 .. cutoff
    std::vector<double> cdf;
    double residual = 0.0; // 1 - accumulated mass

    static HeapDistribution make(double q);
    unsigned sample(double unit) const; // inverse CDF
};

struct MomentEstimates {
    long trials = 0;
    double mean = 0, mean_se = 0;
    double variance = 0, variance_se = 0;
    double third_cumulant = 0, third_cumulant_se = 0;
};

struct HeapSampleBatch {
    double q = 0.5;
    uint64_t seed = 0;
    long trials = 0;
    std::vector<long> histogram; // outcome n -> count
    MomentEstimates moments;
};

HeapSampleBatch heap_sample(double q, uint64_t seed, long trials);

/* Moment/cumulant estimates (with standard errors) from an outcome
 * histogram; shared by the heap and digraph samplers. */
MomentEstimates histogram_moments(const std::vector<long>& histogram);

// ----------------------------------------------------------------- dag ----

/* Pr(gamma_n(1) = h) = (1-p)^{n-h} prod_{j=1}^{h-1} (1 - (1-p)^{n-j}). */
Scalar dag_pmf_exact(int n, const Rat& p, int h);

/* Brute force over all 2^{n(n-1)/2} edge subsets; n <= 5. Index h-1. */
std::vector<Rat> dag_enumerate_exact(int n, const Rat& p);

/* Exact E(gamma) from the closed-form pmf. */
Rat dag_mean_exact(int n, const Rat& p);

struct DagTrialBatch {
    int n = 0;
    double p = 0.5;
    uint64_t seed = 0;
    long trials = 0;
    std::vector<long> histogram; // gamma = h -> count, index h-1
    MomentEstimates moments;     // of gamma

    std::string json() const;
};

DagTrialBatch dag_sample(int n, double p, uint64_t seed, long trials);

// ---------------------------------------------------------- recurrences ----

enum class RecMode { Acs, TwoVar };

/* The driving sequence f(n): a polynomial in n, a periodic pattern
 * (f(1..N) repeating), or a geometric b^n. */
struct DrivingSequence {
    enum class Kind { Poly, Periodic, Geometric } kind = Kind::Poly;
    std::vector<Rat> poly;    // c_0..c_K
    std::vector<Rat> pattern; // f(1..N)
    Rat base;                 // b

    static DrivingSequence polynomial(std::vector<Rat> c);
    static DrivingSequence periodic(std::vector<Rat> pattern);
    static DrivingSequence geometric(const Rat& b);
    Rat at(long n) const;
};

struct RecurrenceState {
    RecMode mode = RecMode::Acs;
    DrivingSequence f;
    long index = 0;
    Series t; // t_index

    RecurrenceState(RecMode m, DrivingSequence fs, const VarSpec& spec)
        : mode(m), f(std::move(fs)), t(Series::zero(spec)) {}
};

/* One step: acs mode t_l = f(l) + (1-q^{l-1}) t_{l-1}; two-var mode
 * t_l = (f(l) - a f(l+1))/(1-aq^l) + ((1-q^{l-1})/(1-aq^l)) t_{l-1},
 * with "a" the second ring variable. */
RecurrenceState recurrence_advance(const RecurrenceState& s);

// --------------------------------------------------------------- limits ----

enum class LimitMode { AcsPoly, TwoVarPoly, Periodic, GeometricB, Ceiling };

struct LimitConfig {
    LimitMode mode = LimitMode::AcsPoly;
    DrivingSequence f;
    Bounds bounds{25, 25};
};

struct LimitReport {
    LimitMode mode = LimitMode::AcsPoly;
    Bounds bounds;
    bool stabilized = false;
    long stabilization_index = 0;
    Outcome outcome = Outcome::Pass; // Review when not stabilized
    std::optional<Mismatch> mismatch;
    double millis = 0;

    std::string json() const;
};

/* Advances the recurrence until every retained coefficient of the limit
 * expression is unchanged across two consecutive steps (capped at 4*nt,
 * flagged not failed), then compares against the closed form. */
LimitReport limit_verify(const LimitConfig& config);

/* c_k = (1/N) sum_{j=1}^N f(j) zeta_N^{(1-j)k}, exact in Q(zeta_N). */
std::vector<Scalar> periodic_ck(const std::vector<Rat>& pattern);

} // namespace qseries

#endif
