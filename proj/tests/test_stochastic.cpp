#include <doctest.h>

#include <cmath>

#include "qseries/stochastic.hpp"

using namespace qseries;
using namespace qseries::build;

namespace {

double divisor_limit(unsigned sigma_power, double q) {
    VarSpec spec = VarSpec::q_only(60);
    Series s = divisor_series(spec, sigma_power, Monomial::scalar(Scalar(1)));
    return eval_numeric(s, {{"q", q}}).value;
}

} // namespace

TEST_CASE("splitmix substreams are deterministic") {
    SplitMix64 a = SplitMix64::substream(42, 3);
    SplitMix64 b = SplitMix64::substream(42, 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 c = SplitMix64::substream(42, 4);
    CHECK(SplitMix64::substream(42, 3).next() != c.next());
}

TEST_CASE("heap pmf") {
    CHECK_THROWS_AS(heap_pmf(0.0, 1), std::domain_error);
    CHECK_THROWS_AS(heap_pmf(1.0, 1), std::domain_error);

    // Pr(X=0) = (q;q)_inf, cross-checked against the exact series. The
    // reported tail bound sees only the top three stored q-degrees, which
    // vanish for this sparse series, so bound the tail geometrically.
    for (double q : {0.3, 0.5, 0.7}) {
        VarSpec spec = VarSpec::q_only(60);
        EvalResult r = eval_numeric(poch_q_inf(spec), {{"q", q}});
        double envelope = std::pow(q, 61) / (1.0 - q);
        CHECK(std::abs(heap_pmf(q, 0) - r.value) < envelope + 1e-12);
    }

    // normalization by direct summation
    HeapDistribution d = HeapDistribution::make(0.5);
    double mass = 0;
    for (double p : d.pmf) mass += p;
    CHECK(std::abs(mass - 1.0) < 1e-10);
    CHECK(d.residual < 1e-10);

    // mean equals the divisor generating function at q
    double mean = 0;
    for (size_t n = 0; n < d.pmf.size(); ++n) mean += (double)n * d.pmf[n];
    CHECK(std::abs(mean - divisor_limit(0, 0.5)) < 1e-8);
}

TEST_CASE("heap sampling is reproducible and lands on the cumulants") {
    HeapSampleBatch one = heap_sample(0.5, 99, 200000);
    HeapSampleBatch two = heap_sample(0.5, 99, 200000);
    CHECK(one.histogram == two.histogram);

    for (double q : {0.3, 0.5}) {
        HeapSampleBatch b = heap_sample(q, 1, 1000000);
        CHECK(std::abs(b.moments.mean - divisor_limit(0, q)) <
              5 * b.moments.mean_se);
        CHECK(std::abs(b.moments.variance - divisor_limit(1, q)) <
              5 * b.moments.variance_se);
        CHECK(std::abs(b.moments.third_cumulant - divisor_limit(2, q)) <
              5 * b.moments.third_cumulant_se);
    }
}

TEST_CASE("dag exact pmf") {
    CHECK(dag_pmf_exact(1, rat(1, 2), 1) == Scalar(1));
    // n = 2: the single possible edge
    CHECK(dag_pmf_exact(2, rat(1, 3), 1) == Scalar(rat(2, 3)));
    CHECK(dag_pmf_exact(2, rat(1, 3), 2) == Scalar(rat(1, 3)));
    CHECK_THROWS_AS(dag_pmf_exact(3, rat(1, 2), 0), std::domain_error);
    CHECK_THROWS_AS(dag_pmf_exact(3, rat(1, 2), 4), std::domain_error);

    // total probability telescopes to 1 exactly
    for (int n : {1, 2, 3, 5, 10, 30}) {
        Rat total(0);
        for (int h = 1; h <= n; ++h) total += dag_pmf_exact(n, rat(1, 2), h).as_rat();
        CHECK(total == rat(1));
        total = 0;
        for (int h = 1; h <= n; ++h) total += dag_pmf_exact(n, rat(3, 7), h).as_rat();
        CHECK(total == rat(1));
    }
}

TEST_CASE("closed pmf equals exhaustive enumeration") {
    for (const Rat& p : {rat(1, 2), rat(1, 3), rat(3, 7)}) {
        for (int n = 1; n <= 4; ++n) {
            auto table = dag_enumerate_exact(n, p);
            Rat total(0);
            for (int h = 1; h <= n; ++h) {
                CHECK(Scalar(table[(size_t)h - 1]) == dag_pmf_exact(n, p, h));
                total += table[(size_t)h - 1];
            }
            CHECK(total == rat(1));
        }
    }
    CHECK_THROWS_AS(dag_enumerate_exact(6, rat(1, 2)), std::domain_error);
}

TEST_CASE("exact mean converges monotonically to the divisor series") {
    double target = divisor_limit(0, 0.5);
    double prev_gap = 1e9;
    for (int n : {10, 15, 20, 25, 30}) {
        Rat mean = dag_mean_exact(n, rat(1, 2));
        double gap = std::abs(((double)n - mean.get_d()) - target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-6); // the n = 30 gap
}

TEST_CASE("dag sampling: determinism, degenerate case, limit bands") {
    DagTrialBatch a = dag_sample(6, 0.5, 42, 5000);
    DagTrialBatch b = dag_sample(6, 0.5, 42, 5000);
    CHECK(a.histogram == b.histogram);

    DagTrialBatch solo = dag_sample(1, 0.5, 1, 1000);
    CHECK(solo.histogram[0] == 1000);

    DagTrialBatch big = dag_sample(12, 0.5, 14, 200000);
    double mean_gap =
        std::abs((12.0 - big.moments.mean) - divisor_limit(0, 0.5));
    CHECK(mean_gap < 4 * big.moments.mean_se);
    double var_gap = std::abs(big.moments.variance - divisor_limit(1, 0.5));
    CHECK(var_gap < 5 * big.moments.variance_se);

    // against the exact finite-n law the sampler is much tighter
    double exact_mean = dag_mean_exact(12, rat(1, 2)).get_d();
    CHECK(std::abs(big.moments.mean - exact_mean) < 4 * big.moments.mean_se);

    CHECK_THROWS_AS(dag_sample(0, 0.5, 1, 10), std::domain_error);
    CHECK_THROWS_AS(dag_sample(3, 1.5, 1, 10), std::domain_error);
}

TEST_CASE("trial batches serialize their defining fields") {
    DagTrialBatch b = dag_sample(4, 0.25, 9, 100);
    std::string j = b.json();
    CHECK(j.find("\"n\":4") != std::string::npos);
    CHECK(j.find("\"p\":0.25") != std::string::npos);
    CHECK(j.find("\"seed\":9") != std::string::npos);
    CHECK(j.find("\"trials\":100") != std::string::npos);
    CHECK(j.find("\"histogram\":[") != std::string::npos);
}

TEST_CASE("recurrence steps") {
    // acs with f == 1: t_1 = 1 because (1 - q^0) kills the carry
    VarSpec spec = VarSpec::q_only(10);
    RecurrenceState st(RecMode::Acs, DrivingSequence::polynomial({rat(1)}), spec);
    st = recurrence_advance(st);
    CHECK(st.t == Series(spec, Scalar(1)));

    // t_3 expanded by hand: 1 + (1-q^2)(2 - q) = 3 - q - 2q^2 + q^3
    st = recurrence_advance(st);
    CHECK(st.t == Series(spec, Scalar(2)) -
                      Series::monomial(spec, Monomial::q_power(1)));
    st = recurrence_advance(st);
    Series expect(spec, Scalar(3));
    expect.add_term({1, 0, 0}, Scalar(-1));
    expect.add_term({2, 0, 0}, Scalar(-2));
    expect.add_term({3, 0, 0}, Scalar(1));
    CHECK(st.t == expect);

    // two-var, f(n) = n: t_1 = (1 - 2a)/(1 - a q)
    VarSpec av({"q", "a"}, 8, 8);
    RecurrenceState tv(RecMode::TwoVar,
                       DrivingSequence::polynomial({rat(0), rat(1)}), av);
    tv = recurrence_advance(tv);
    Series expect2 = (Series(av, Scalar(1)) -
                      Series::monomial(av, Monomial::var(1, Scalar(2)))) *
                     geom(av, Monomial::var(1, Scalar(1), 1));
    CHECK(tv.t == expect2);
}

TEST_CASE("driving sequences") {
    DrivingSequence poly = DrivingSequence::polynomial({rat(2), rat(0), rat(1)});
    CHECK(poly.at(3) == rat(11)); // 2 + 9
    DrivingSequence per = DrivingSequence::periodic({rat(1), rat(-1)});
    CHECK(per.at(1) == rat(1));
    CHECK(per.at(2) == rat(-1));
    CHECK(per.at(7) == rat(1));
    DrivingSequence geo = DrivingSequence::geometric(rat(-1));
    CHECK(geo.at(5) == rat(-1));
}

TEST_CASE("limit theorems: polynomial driving sequences") {
    for (const auto& coeffs :
         {std::vector<Rat>{rat(1)}, std::vector<Rat>{rat(0), rat(1)},
          std::vector<Rat>{rat(0), rat(0), rat(1)},
          std::vector<Rat>{rat(2), rat(1)}}) {
        LimitConfig cfg;
        cfg.mode = LimitMode::AcsPoly;
        cfg.f = DrivingSequence::polynomial(coeffs);
        cfg.bounds = Bounds{25, 25};
        LimitReport rep = limit_verify(cfg);
        CHECK(rep.stabilized);
        CHECK(rep.outcome == Outcome::Pass);

        cfg.mode = LimitMode::TwoVarPoly;
        LimitReport rep2 = limit_verify(cfg);
        CHECK(rep2.stabilized);
        CHECK(rep2.outcome == Outcome::Pass);
    }
}

TEST_CASE("stabilized acs limit for f == 1 is the divisor series") {
    // run the recurrence directly and compare the stabilized expression
    VarSpec spec = VarSpec::q_only(25);
    RecurrenceState st(RecMode::Acs, DrivingSequence::polynomial({rat(1)}), spec);
    Rat fsum(0);
    Series expr(spec);
    for (int l = 1; l <= 27; ++l) {
        st = recurrence_advance(st);
        fsum += 1;
        expr = Series(spec, Scalar(fsum)) - st.t;
    }
    CHECK(expr == divisor_series(spec, 0, Monomial::scalar(Scalar(1))));
}

TEST_CASE("two-variable closed form slices to the single-variable one") {
    VarSpec av({"q", "a"}, 20, 20);
    VarSpec qv = VarSpec::q_only(20);
    for (unsigned h = 0; h <= 3; ++h) {
        Series two = sfrak(av, h, Monomial::var(1), Monomial::scalar(Scalar(1)));
        Series one = divisor_series(qv, h, Monomial::scalar(Scalar(1)));
        CHECK(rehome(two.slice(1, 0), qv) == one);
    }
}

TEST_CASE("limit theorems: geometric driving sequences") {
    LimitConfig cfg;
    cfg.mode = LimitMode::GeometricB;
    cfg.f = DrivingSequence::geometric(rat(-1));
    cfg.bounds = Bounds{15, 15};
    LimitReport rep = limit_verify(cfg);
    CHECK(rep.stabilized);
    CHECK(rep.outcome == Outcome::Pass);

    // b = -1 closed form is the alternating theta sum -q + q^4 - q^9
    VarSpec spec = VarSpec::q_only(15);
    Scalar b(rat(-1));
    Series closed(spec, b * Scalar(rat(2)).inv());
    closed -= (poch_q_inf(spec) *
               invert(pochhammer_inf(spec, Monomial::scalar(b))))
                  .scaled(b);
    Series theta(spec);
    theta.add_term({1, 0, 0}, Scalar(-1));
    theta.add_term({4, 0, 0}, Scalar(1));
    theta.add_term({9, 0, 0}, Scalar(-1));
    CHECK(closed == theta);

    cfg.f = DrivingSequence::geometric(rat(1, 2));
    cfg.bounds = Bounds{25, 25};
    CHECK(limit_verify(cfg).outcome == Outcome::Pass);
}

TEST_CASE("fourier coefficients of periodic sequences") {
    auto constant = periodic_ck({rat(1), rat(1)});
    CHECK(constant[0] == Scalar(1));
    CHECK(constant[1].is_zero());

    auto alternating = periodic_ck({rat(1), rat(-1)});
    CHECK(alternating[0].is_zero());
    CHECK(alternating[1] == Scalar(1));

    // inverse transform reconstructs the pattern exactly in Q(zeta_3)
    std::vector<Rat> pattern{rat(1), rat(0), rat(-1)};
    auto c = periodic_ck(pattern);
    for (int j = 1; j <= 3; ++j) {
        Scalar back(0);
        for (int k = 0; k < 3; ++k)
            back += c[(size_t)k] * Scalar::zeta(3, (long)(j - 1) * k);
        CHECK(back == Scalar(pattern[(size_t)j - 1]));
    }
}

TEST_CASE("limit theorems: periodic and ceiling forms") {
    for (const auto& pattern :
         {std::vector<Rat>{rat(1), rat(-1)}, std::vector<Rat>{rat(1), rat(0), rat(-1)}}) {
        LimitConfig cfg;
        cfg.mode = LimitMode::Periodic;
        cfg.f = DrivingSequence::periodic(pattern);
        cfg.bounds = Bounds{25, 25};
        LimitReport rep = limit_verify(cfg);
        CHECK(rep.stabilized);
        CHECK(rep.outcome == Outcome::Pass);

        cfg.mode = LimitMode::Ceiling;
        LimitReport rep2 = limit_verify(cfg);
        CHECK(rep2.stabilized);
        CHECK(rep2.outcome == Outcome::Pass);
    }
}

TEST_CASE("periodic closed form meets the geometric one at a = 0") {
    // N=2 with f(1) = -1, f(2) = 1 is f(n) = (-1)^n; its a-degree-0 slice
    // must match the b = -1 geometric closed form
    VarSpec av({"q", "a"}, 20, 20);
    VarSpec qv = VarSpec::q_only(20);
    auto c = periodic_ck({rat(-1), rat(1)});
    Monomial am = Monomial::var(1);
    Series periodic =
        sfrak(av, 0, am, Monomial::scalar(Scalar(1))).scaled(c[0]);
    Scalar z = Scalar::zeta(2, 1);
    periodic += Series(av, c[1] * (Scalar(1) - z).inv());
    Monomial azk = am;
    azk.coef = azk.coef * z;
    periodic -= poch_q_inf(av) * invert(pochhammer_inf(av, am)) *
                (pochhammer_inf(av, azk) *
                 invert(pochhammer_inf(av, Monomial::scalar(z))))
                    .scaled(c[1]);

    Scalar b(rat(-1));
    Series geometric(qv, b * Scalar(rat(2)).inv());
    geometric -= (poch_q_inf(qv) *
                  invert(pochhammer_inf(qv, Monomial::scalar(b))))
                     .scaled(b);
    CHECK(rehome(periodic.slice(1, 0), qv) == geometric);
}

TEST_CASE("generating-function identity behind the limit theorems") {
    // T(a,q,q) = -sum_n (q/a)_n F(q^n) (a/q)^n / (q)_n for driving
    // polynomials with f(1) = 0, with a formal
    for (const auto& coeffs :
         {std::vector<Rat>{rat(-1), rat(1)},              // f(n) = n - 1
          std::vector<Rat>{rat(-1), rat(0), rat(1)}}) {   // f(n) = n^2 - 1
        DrivingSequence f = DrivingSequence::polynomial(coeffs);
        VarSpec spec({"q", "a"}, 18, 18);
        RecurrenceState st(RecMode::TwoVar, f, spec);
        Series lhs(spec); // sum q^l t_l, exact once l exceeds the bounds
        for (int l = 1; l <= 19; ++l) {
            st = recurrence_advance(st);
            lhs += st.t * Series::monomial(spec, Monomial::q_power(l));
        }
        Series rhs(spec);
        Series P = Series::one(spec);    // prod_{i=1}^n (a - q^i)
        Series invq = Series::one(spec); // 1/(q)_n
        for (long n = 1; 2 * n <= spec.nt; ++n) {
            P = P * (Series::monomial(spec, Monomial::var(1)) -
                     Series::monomial(spec, Monomial::q_power((int)n)));
            invq = invq * geom(spec, Monomial::q_power((int)n));
            Series g(spec); // F(q^n) q^{-n} = sum_{j>=2} f(j) q^{n(j-1)}
            for (long j = 2; n * (j - 1) <= spec.nq; ++j)
                g.add_term({(int)(n * (j - 1)), 0, 0}, Scalar(f.at(j)));
            rhs -= P * invq * g;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("limit report JSON shape") {
    LimitConfig cfg;
    cfg.mode = LimitMode::AcsPoly;
    cfg.f = DrivingSequence::polynomial({rat(1)});
    cfg.bounds = Bounds{12, 12};
    std::string j = limit_verify(cfg).json();
    CHECK(j.find("\"id\":\"acs-poly\"") != std::string::npos);
    CHECK(j.find("\"outcome\":\"pass\"") != std::string::npos);
    CHECK(j.find("\"stabilization_index\":") != std::string::npos);
}
