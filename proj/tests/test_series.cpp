#include <doctest.h>

#include <cmath>

#include "qseries/builders.hpp"
#include "qseries/series.hpp"

using namespace qseries;

namespace {

/* Small deterministic generator for randomized ring-law checks. */
struct TestRng {
    uint64_t s;
    explicit TestRng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { return lo + (long)(next() % (uint64_t)(hi - lo + 1)); }
};

Series random_series(TestRng& rng, const VarSpec& spec, int terms) {
    Series s(spec);
    for (int t = 0; t < terms; ++t) {
        Exps e{(int)rng.range(0, spec.nq), 0, 0};
        if (spec.arity() > 1) e[1] = (int)rng.range(0, 3);
        long num = rng.range(-6, 6), den = rng.range(1, 5);
        s.add_term(e, Scalar(rat(num, den)));
    }
    return s;
}

} // namespace

TEST_CASE("variable specs enforce their invariants") {
    CHECK_THROWS_AS(VarSpec({"a", "q"}, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(VarSpec({"q", "a", "a"}, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(VarSpec({"q", "a", "b", "c"}, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(VarSpec({"q"}, 7, 5), std::invalid_argument);
    VarSpec ok({"q", "a"}, 5, 9);
    CHECK(ok.index_of("a") == 1);
    CHECK_THROWS_AS(ok.index_of("t"), std::invalid_argument);
}

TEST_CASE("product and truncation basics") {
    VarSpec spec = VarSpec::q_only(5);
    Series one_plus = Series::one(spec);
    one_plus.add_term({1, 0, 0}, Scalar(1));
    Series one_minus = Series::one(spec);
    one_minus.add_term({1, 0, 0}, Scalar(-1));
    Series prod = one_plus * one_minus; // 1 - q^2
    CHECK(prod.at({0, 0, 0}) == Scalar(1));
    CHECK(prod.at({1, 0, 0}).is_zero());
    CHECK(prod.at({2, 0, 0}) == Scalar(-1));

    VarSpec tight = VarSpec::q_only(1);
    Series q = Series::monomial(tight, Scalar(1), {1, 0, 0});
    CHECK((q * q).is_zero()); // q^2 truncated away
}

TEST_CASE("additive inverse of the divisor series") {
    VarSpec spec = VarSpec::q_only(20);
    Series d = build::divisor_series(spec, 0, Monomial::scalar(Scalar(1)));
    CHECK((d + (-d)).is_zero());
}

TEST_CASE("ring laws on randomized small series") {
    VarSpec spec({"q", "a"}, 8, 10);
    TestRng rng(0xbead5eed);
    for (int trial = 0; trial < 60; ++trial) {
        Series x = random_series(rng, spec, 5);
        Series y = random_series(rng, spec, 5);
        Series z = random_series(rng, spec, 5);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + y == y + x);
        CHECK((x - x).is_zero());
    }
}

TEST_CASE("series inversion") {
    VarSpec spec = VarSpec::q_only(3);
    Series s = Series::one(spec);
    s.add_term({1, 0, 0}, Scalar(-1)); // 1 - q
    Series inv = invert(s);
    for (int i = 0; i <= 3; ++i) CHECK(inv.at({i, 0, 0}) == Scalar(1));

    VarSpec av({"q", "a"}, 4, 4);
    Series t = Series::one(av);
    t.add_term({1, 1, 0}, Scalar(-1)); // 1 - a q
    Series ti = invert(t);
    CHECK(ti.at({0, 0, 0}) == Scalar(1));
    CHECK(ti.at({1, 1, 0}) == Scalar(1));
    CHECK(ti.at({2, 2, 0}) == Scalar(1));
    CHECK(ti.term_count() == 3); // a^3 q^3 exceeds the total bound

    Series zero_const = Series::monomial(VarSpec::q_only(4), Scalar(1), {1, 0, 0});
    zero_const.add_term({2, 0, 0}, Scalar(1));
    CHECK_THROWS_AS(invert(zero_const), std::domain_error);
}

TEST_CASE("invert round-trips on 200 randomized unit series") {
    VarSpec spec({"q", "a"}, 7, 9);
    TestRng rng(0x5eed1234);
    int done = 0;
    while (done < 200) {
        Series s = random_series(rng, spec, 6);
        long c0 = rng.range(1, 7);
        s.set_term({0, 0, 0}, Scalar(rat(c0, 1))); // force a unit
        CHECK(s * invert(s) == Series::one(spec));
        ++done;
    }
}

TEST_CASE("pochhammer values") {
    VarSpec spec = VarSpec::q_only(6);
    CHECK(pochhammer(spec, Monomial::var(0, Scalar(1)), 0) == Series::one(spec));

    // (q;q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3
    Series p2 = pochhammer(spec, Monomial::q_power(1), 2);
    CHECK(p2.at({0, 0, 0}) == Scalar(1));
    CHECK(p2.at({1, 0, 0}) == Scalar(-1));
    CHECK(p2.at({2, 0, 0}) == Scalar(-1));
    CHECK(p2.at({3, 0, 0}) == Scalar(1));
    CHECK(p2.term_count() == 4);

    // (q^2; q)_inf to Nq=4: (1-q^2)(1-q^3)(1-q^4) = 1 - q^2 - q^3 - q^4 + ...
    VarSpec four = VarSpec::q_only(4);
    Series pinf = pochhammer_inf(four, Monomial::q_power(2));
    CHECK(pinf.at({0, 0, 0}) == Scalar(1));
    CHECK(pinf.at({1, 0, 0}).is_zero());
    CHECK(pinf.at({2, 0, 0}) == Scalar(-1));
    CHECK(pinf.at({3, 0, 0}) == Scalar(-1));
    CHECK(pinf.at({4, 0, 0}) == Scalar(-1));
}

TEST_CASE("pochhammer telescoping over the parameter pool") {
    VarSpec spec({"q", "a"}, 15, 18);
    std::vector<Monomial> pool = {
        Monomial::q_power(1), Monomial::q_power(2, Scalar(rat(1, 2))),
        Monomial::scalar(Scalar(rat(-2, 3))), Monomial::var(1),
        Monomial::var(1, Scalar(rat(3, 5)), 1)};
    for (const auto& x : pool)
        for (unsigned n = 0; n <= 12; ++n) {
            Series lhs = pochhammer(spec, x, n + 1);
            Exps shifted = x.exps;
            shifted[0] += (int)n;
            Series factor = Series::one(spec);
            factor.add_term(shifted, -x.coef);
            CHECK(lhs == pochhammer(spec, x, n) * factor);
        }
}

TEST_CASE("binomial expansion") {
    VarSpec spec = VarSpec::q_only(6);
    Series q = Series::monomial(spec, Scalar(1), {1, 0, 0});
    Series geom = binom_expand(q, rat(1));
    for (int i = 0; i <= 6; ++i) CHECK(geom.at({i, 0, 0}) == Scalar(1));

    Series sq = binom_expand(q, rat(-2)); // (1-q)^2
    CHECK(sq.at({0, 0, 0}) == Scalar(1));
    CHECK(sq.at({1, 0, 0}) == Scalar(-2));
    CHECK(sq.at({2, 0, 0}) == Scalar(1));
    CHECK(sq.term_count() == 3);

    VarSpec two = VarSpec::q_only(2);
    Series half = binom_expand(Series::monomial(two, Scalar(1), {1, 0, 0}),
                               rat(1, 2));
    CHECK(half.at({0, 0, 0}) == Scalar(1));
    CHECK(half.at({1, 0, 0}) == Scalar(rat(1, 2)));
    CHECK(half.at({2, 0, 0}) == Scalar(rat(3, 8)));

    CHECK_THROWS_AS(binom_expand(Series::one(spec), rat(1)), std::domain_error);
}

TEST_CASE("binom_expand(x,alpha) * binom_expand(x,-alpha) = 1") {
    VarSpec spec({"q", "a"}, 10, 12);
    Series x = Series::monomial(spec, Scalar(rat(2, 3)), {1, 0, 0});
    x.add_term({0, 1, 0}, Scalar(rat(-1, 2)));
    for (const Rat& alpha : {rat(1, 2), rat(-5, 3), rat(3), rat(-2), rat(7, 4)})
        CHECK(binom_expand(x, alpha) * binom_expand(x, Rat(-alpha)) ==
              Series::one(spec));
}

TEST_CASE("Gaussian binomials") {
    VarSpec spec = VarSpec::q_only(40);
    CHECK(qbinom_gauss(spec, 6, 0) == Series::one(spec));

    Series b21 = qbinom_gauss(spec, 2, 1); // 1 + q
    CHECK(b21.at({0, 0, 0}) == Scalar(1));
    CHECK(b21.at({1, 0, 0}) == Scalar(1));
    CHECK(b21.term_count() == 2);

    // independent oracle: the coefficient of q^k in [N n] counts the
    // partitions of k with at most n parts, each at most N-n
    auto box_partitions = [](int k, int parts, int cap) {
        std::function<long(int, int, int)> count = [&](int rem, int slots,
                                                       int maxpart) -> long {
            if (rem == 0) return 1;
            if (slots == 0) return 0;
            long total = 0;
            for (int p = std::min(rem, maxpart); p >= 1; --p)
                total += count(rem - p, slots - 1, p);
            return total;
        };
        return count(k, parts, cap);
    };
    for (unsigned N : {4u, 5u, 7u})
        for (unsigned n = 0; n <= N; ++n) {
            Series b = qbinom_gauss(spec, N, n);
            for (int k = 0; k <= (int)(n * (N - n)); ++k)
                CHECK(b.at({k, 0, 0}) ==
                      Scalar(Rat(box_partitions(k, (int)n, (int)(N - n)))));
        }

    // symmetry [N n] = [N N-n] for N <= 12
    for (unsigned N = 1; N <= 12; ++N)
        for (unsigned n = 0; n <= N; ++n)
            CHECK(qbinom_gauss(spec, N, n) == qbinom_gauss(spec, N, N - n));

    CHECK_THROWS_AS(qbinom_gauss(spec, 3, 4), std::invalid_argument);
}

TEST_CASE("basic hypergeometric series") {
    VarSpec spec = VarSpec::q_only(20);
    Monomial A = Monomial::scalar(Scalar(rat(1, 2)));
    Monomial B = Monomial::scalar(Scalar(rat(1, 3)));
    Monomial C = Monomial::q_power(1);

    // zero argument: only n=0 survives
    Series at_zero = basic_hypergeom(spec, HypergeomKind::Phi21, {A, B}, {C},
                                     Monomial::scalar(Scalar(0)), 20);
    CHECK(at_zero == Series::one(spec));

    // q-Gauss evaluation: argument C/(AB) = 6q
    Monomial z = Monomial::q_power(1, Scalar(6));
    Series lhs = basic_hypergeom(spec, HypergeomKind::Phi21, {A, B}, {C}, z, 20);
    Monomial ca = Monomial::q_power(1, Scalar(2)); // C/A
    Monomial cb = Monomial::q_power(1, Scalar(3)); // C/B
    Series rhs = pochhammer_inf(spec, ca) * pochhammer_inf(spec, cb) *
                 invert(pochhammer_inf(spec, C) * pochhammer_inf(spec, z));
    CHECK(lhs == rhs);

    // stability under increasing `terms` once terms >= nt
    Series more = basic_hypergeom(spec, HypergeomKind::Phi21, {A, B}, {C}, z, 35);
    CHECK(lhs == more);
}

TEST_CASE("comparison reports the first mismatching monomial") {
    VarSpec spec = VarSpec::q_only(10);
    Series s = Series::one(spec);
    s.add_term({1, 0, 0}, Scalar(1));
    CHECK(!series_compare(s, s).has_value());

    Series t = Series::one(spec);
    t.add_term({1, 0, 0}, Scalar(2));
    auto mis = series_compare(s, t);
    REQUIRE(mis.has_value());
    CHECK(mis->exps == Exps{1, 0, 0});
    CHECK(mis->lhs == Scalar(1));
    CHECK(mis->rhs == Scalar(2));

    VarSpec other = VarSpec::q_only(11);
    CHECK_THROWS_AS(series_compare(s, Series::one(other)), std::invalid_argument);
}

TEST_CASE("numeric evaluation") {
    VarSpec spec = VarSpec::q_only(2);
    Series s = Series::one(spec);
    s.add_term({1, 0, 0}, Scalar(1));
    s.add_term({2, 0, 0}, Scalar(1));
    CHECK(eval_numeric(s, {{"q", 0.0}}).value == doctest::Approx(1.0));

    VarSpec g = VarSpec::q_only(30);
    Series geom = binom_expand(Series::monomial(g, Scalar(1), {1, 0, 0}), rat(1));
    auto r = eval_numeric(geom, {{"q", 0.5}});
    CHECK(std::abs(r.value - 2.0) < 1e-8);
    CHECK(r.tail_bound < 1e-8);

    // divisor series vs direct term-by-term summation
    VarSpec d40 = VarSpec::q_only(40);
    Series dser = build::divisor_series(d40, 0, Monomial::scalar(Scalar(1)));
    double direct = 0;
    for (int n = 1; n <= 40; ++n) {
        int divisors = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) ++divisors;
        direct += divisors * std::pow(0.5, n);
    }
    CHECK(std::abs(eval_numeric(dser, {{"q", 0.5}}).value - direct) < 1e-12);

    CHECK_THROWS(eval_numeric(dser, {}));
}

TEST_CASE("derivative, slice and substitute") {
    VarSpec spec({"q", "a"}, 6, 8);
    Series s(spec);
    s.add_term({2, 3, 0}, Scalar(rat(1, 2)));
    s.add_term({1, 0, 0}, Scalar(5));
    Series ds = s.derivative(1);
    CHECK(ds.at({2, 2, 0}) == Scalar(rat(3, 2)));
    CHECK(ds.term_count() == 1);
    CHECK(s.slice(1, 3).at({2, 0, 0}) == Scalar(rat(1, 2)));
    CHECK(s.substitute(1, Scalar(2)).at({2, 0, 0}) == Scalar(4));
}

TEST_CASE("json serialization carries exact coefficients") {
    VarSpec spec = VarSpec::q_only(3);
    Series s = Series::one(spec);
    s.add_term({2, 0, 0}, Scalar(rat(-7, 3)));
    std::string j = s.json();
    CHECK(j.find("\"num\":\"-7\"") != std::string::npos);
    CHECK(j.find("\"den\":\"3\"") != std::string::npos);
    CHECK(j.find("\"nq\":3") != std::string::npos);
}
