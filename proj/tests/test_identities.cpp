#include <doctest.h>

#include <set>

#include "qseries/identities.hpp"

using namespace qseries;

namespace {

Binding B(std::initializer_list<std::pair<const char*, ParamValue>> kv, int nq,
          int nt = 0) {
    Binding b;
    for (const auto& [k, v] : kv) b.values[k] = v;
    b.bounds = Bounds{nq, nt ? nt : nq};
    return b;
}

} // namespace

TEST_CASE("registry is complete and well-formed") {
    const char* required[] = {
        "ramanujan-entry4", "kluyver", "uchimura-3way", "uchimura-bell",
        "abem-bell", "exp-cumulant", "dilcher-1", "acs-lemma", "dixit-maji",
        "gupta-kumar-alpha", "general-f", "rr-alpha", "cor-2var-rr",
        "uchimura-2var", "dilcher-corrected", "dilcher-original-discrepancy",
        "acs-pk", "gk-pk", "gk-pk-2var", "gk-pk-2var-c", "eulerian-3way",
        "entry4-uchimura-type", "uchimura-mm-3way", "lemma5", "lemma6",
        "lemma7", "t-deriv", "prelim-qbinomial", "prelim-fine", "prelim-qgauss",
        "prelim-3phi2", "chu-vandermonde", "finite-uchimura", "u-tails"};
    std::set<std::string> ids;
    for (const auto& d : registry()) ids.insert(d.id);
    for (const char* id : required) CHECK(ids.count(id) == 1);
    CHECK(registry().size() >= 30);
    for (const auto& d : registry()) {
        CHECK(d.sides.size() >= 2);
        CHECK(d.sides.size() <= 3);
        // deterministic listing: ids unique
        int formal = 0;
        for (const auto& p : d.schema)
            if (p.mode == ParamMode::Formal) ++formal;
        CHECK(formal <= 2);
    }
    CHECK(ids.size() == registry().size());
    CHECK_THROWS_AS(find_identity("no-such-id"), std::invalid_argument);
}

TEST_CASE("frozen side values") {
    // divisor side of the Kluyver identity to order 6: d(n) coefficients
    Series kd = build_side("kluyver", "divisor", B({}, 6));
    CHECK(kd.str() == "q + 2*q^2 + 2*q^3 + 3*q^4 + 2*q^5 + 4*q^6");

    // sum n q^n (q^{n+1})inf expanded by hand to order 3
    Series uu = build_side("uchimura-3way", "uchimura", B({}, 3));
    CHECK(uu.str() == "q + 2*q^2 + 2*q^3");

    // generalized divisor side at c = 1/2
    Series e4 = build_side("ramanujan-entry4", "divisor",
                           B({{"c", rat(1, 2)}}, 3));
    CHECK(e4.at({1, 0, 0}) == Scalar(rat(1, 2)));
    CHECK(e4.at({2, 0, 0}) == Scalar(rat(3, 4)));
    CHECK(e4.at({3, 0, 0}) == Scalar(rat(5, 8)));
}

TEST_CASE("verification examples") {
    CHECK(verify_identity("kluyver", B({}, 20)).outcome == Outcome::Pass);
    CHECK(verify_identity("gk-pk-2var",
                          B({{"a", FormalTag{}}, {"c", rat(1, 3)}, {"k", 2L}},
                            25))
              .outcome == Outcome::Pass);
    CHECK_THROWS_AS(verify_identity("nonexistent", B({}, 10)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_side("kluyver", "no-side", B({}, 10)),
                    std::invalid_argument);
    // schema validation
    CHECK_THROWS_AS(verify_identity("ramanujan-entry4", B({}, 10)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        verify_identity("ramanujan-entry4",
                        B({{"c", rat(1, 2)}, {"zz", 1L}}, 10)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        verify_identity("gk-pk", B({{"a", rat(1, 2)}, {"k", 2L}}, 10)),
        std::invalid_argument); // a must be formal
}

TEST_CASE("default suite policy") {
    for (const auto& d : registry()) {
        auto suite = d.default_suite();
        CHECK(suite.size() >= 3);
        for (const auto& b : suite) {
            CHECK((b.bounds.nq == 20 || b.bounds.nq == 30 || b.bounds.nq == 40 ||
                   b.bounds.nq == 60));
            d.validate(b); // throws on malformed suite entries
        }
    }
    // entry4 sweeps the documented c pool
    auto e4 = default_param_suite("ramanujan-entry4");
    std::set<std::string> cs;
    for (const auto& b : e4) cs.insert(rat_str(b.scalar("c").as_rat()));
    CHECK(cs == std::set<std::string>{"1/2", "-1/3", "2/5"});

    // the unification suite hits (1,1), (2,2), (5/2,3)
    auto u2 = default_param_suite("uchimura-2var");
    std::set<std::pair<std::string, long>> pairs;
    for (const auto& b : u2)
        pairs.insert({rat_str(b.ratio("alpha")), b.knob("r")});
    CHECK(pairs.count({"1", 1}));
    CHECK(pairs.count({"2", 2}));
    CHECK(pairs.count({"5/2", 3}));

    auto fu = default_param_suite("finite-uchimura");
    std::set<long> ns;
    for (const auto& b : fu) ns.insert(b.knob("N"));
    CHECK(ns.count(1));
    CHECK(ns.count(2));
    CHECK(ns.count(7));

    // order override rewrites both bounds
    for (const auto& b : default_param_suite("kluyver", 33)) {
        CHECK(b.bounds.nq == 33);
        CHECK(b.bounds.nt == 33);
    }
    CHECK_THROWS_AS(default_param_suite("nope"), std::invalid_argument);

    // every suite with rational parameters spans them: at least one
    // negative value and at least one with denominator >= 5
    for (const auto& d : registry()) {
        bool has_rational_param = false;
        for (const auto& p : d.schema)
            has_rational_param = has_rational_param ||
                                 p.mode == ParamMode::Bound ||
                                 p.mode == ParamMode::RatKnob;
        if (!has_rational_param) continue;
        bool negative = false, small_den = false;
        for (const auto& b : d.default_suite())
            for (const auto& [k, v] : b.values) {
                Rat r;
                if (auto* s = std::get_if<Scalar>(&v)) r = s->as_rat();
                else if (auto* rr = std::get_if<Rat>(&v)) r = *rr;
                else continue;
                negative = negative || r < 0;
                small_den = small_den || r.get_den() >= 5;
            }
        INFO(d.id);
        CHECK(negative);
        CHECK(small_den);
    }
}

TEST_CASE("unification: uchimura-2var specializes to both parents") {
    // (alpha, r) = (1,1): same series as the first Uchimura equality
    Binding b11 = B({{"alpha", rat(1)}, {"r", 1L}}, 25);
    CHECK(build_side("uchimura-2var", "ramanujan", b11) ==
          build_side("uchimura-3way", "ramanujan", B({}, 25)));
    CHECK(build_side("uchimura-2var", "uchimura", b11) ==
          build_side("uchimura-3way", "uchimura", B({}, 25)));

    // (alpha, r) = (k,k): the first Dilcher equality
    for (long k = 1; k <= 4; ++k) {
        Binding bkk = B({{"alpha", Rat(rat(k))}, {"r", k}}, 25);
        Binding bk = B({{"k", k}}, 25);
        CHECK(build_side("uchimura-2var", "ramanujan", bkk) ==
              build_side("dilcher-1", "ramanujan", bk));
        CHECK(build_side("uchimura-2var", "uchimura", bkk) ==
              build_side("dilcher-1", "uchimura", bk));
    }
}

TEST_CASE("constructive chain: T -> Q -> N -> P assembles the polynomial side") {
    // sum_r binom(k-1,k-r)/r! N_r(T_1(1,q),...,T_r(1,q)) must equal
    // P_k(Sfrak_0,...,Sfrak_{k-1}) with a formal
    VarSpec spec({"q", "a"}, 20, 20);
    Monomial am = Monomial::var(1);
    Monomial cm = Monomial::scalar(Scalar(rat(1, 3)));
    for (unsigned k = 1; k <= 4; ++k) {
        std::vector<Series> ts;
        for (unsigned r = 1; r <= k; ++r)
            ts.push_back(build::t_func(spec, r, am, cm, std::nullopt));
        Series via_n(spec);
        for (unsigned r = 1; r <= k; ++r) {
            Rat w(binom_int((long)k - 1, (long)(k - r)));
            w /= Rat(factorial(r));
            std::vector<Series> args(ts.begin(), ts.begin() + r);
            via_n += n_poly(r).eval(spec, args).scaled(Scalar(w));
        }
        std::vector<Series> sf;
        for (unsigned h = 0; h < k; ++h)
            sf.push_back(build::sfrak(spec, h, am, cm));
        Series via_p = p_poly(k).eval(spec, sf);
        CHECK(via_n == via_p);
    }
}

TEST_CASE("formal verification specializes to bound rebuilds where finite") {
    // dixit-maji right side: substitute a = 1/2 into the (a,b)-formal build
    // and rebuild with a bound; complete wherever every contributing a-power
    // is retained, i.e. on monomials q^i b^k with 2i + k <= nt, (i,k) != (0,0)
    const int n = 16;
    VarSpec formal_spec({"q", "a", "b"}, n, n);
    VarSpec direct_spec({"q", "b"}, n, n);
    Binding bf = B({{"a", FormalTag{}}, {"b", FormalTag{}}, {"c", rat(2, 5)}}, n);
    Series formal_rhs = build_side("dixit-maji", "rhs", bf);
    Series substituted = formal_rhs.substitute(1, Scalar(rat(1, 2)));

    // direct rebuild with a bound to 1/2 (same summation structure)
    Monomial am = Monomial::scalar(Scalar(rat(1, 2)));
    Monomial bm = Monomial::var(1);
    Monomial cm = Monomial::scalar(Scalar(rat(2, 5)));
    Series direct(direct_spec);
    {
        Series C = Series::one(direct_spec);
        Series invB = Series::one(direct_spec);
        for (long m = 0; m + 1 <= n; ++m) {
            if (m > 0) {
                Monomial bq = bm;
                bq.exps[0] += (int)(m - 1);
                C = C * (Series::monomial(direct_spec, cm) -
                         Series::monomial(direct_spec, bq));
                invB = invB * build::geom(direct_spec, bq);
            }
            Monomial aq = am, bq2 = bm;
            aq.exps[0] += (int)m;
            bq2.exps[0] += (int)m;
            direct += C * invB *
                      (build::geom_from1(direct_spec, aq) -
                       build::geom_from1(direct_spec, bq2));
        }
    }
    int checked = 0;
    for (int i = 0; i <= n; ++i)
        for (int k = 0; 2 * i + k <= n; ++k) {
            if (i == 0 && k == 0) continue;
            CHECK(substituted.at(Exps{i, 0, k}) == direct.at(Exps{i, k, 0}));
            ++checked;
        }
    CHECK(checked > 50);
}

TEST_CASE("truncation monotonicity: passes do not flip at higher order") {
    const char* picks[] = {"kluyver", "acs-pk", "gk-pk"};
    for (const char* id : picks) {
        for (auto& b : default_param_suite(id, 20))
            CHECK(verify_identity(id, b).outcome == Outcome::Pass);
        for (auto& b : default_param_suite(id, 40))
            CHECK(verify_identity(id, b).outcome == Outcome::Pass);
    }
}

TEST_CASE("tail builders agree with an independently assembled moment sum") {
    VarSpec spec = VarSpec::q_only(25);
    for (unsigned m = 0; m <= 3; ++m) {
        Series direct(spec);
        for (int i = 1; i <= 25; ++i) {
            Int im;
            mpz_ui_pow_ui(im.get_mpz_t(), (unsigned long)i, m);
            direct += pochhammer_inf(spec, Monomial::q_power(i + 1)) *
                      Series::monomial(spec,
                                       Monomial::q_power(i, Scalar(Rat(im))));
        }
        CHECK(build::uchimura_sum(spec, m, Monomial::scalar(Scalar(1)), 1) ==
              direct);
    }
}

TEST_CASE("uncorrected tail form agrees to high order and is flagged") {
    // the difference telescopes through vanishing integer falling factorials,
    // so no mismatch exists; the report must come back as review
    for (long k = 2; k <= 5; ++k) {
        VerificationReport rep =
            verify_identity("dilcher-original-discrepancy", B({{"k", k}}, 60));
        CHECK(rep.outcome == Outcome::Review);
        CHECK(rep.expected_divergence);
        CHECK(!rep.gates_exit());
    }
}

TEST_CASE("exponential form slices to the moment sums") {
    Binding b = B({{"c", rat(1, 2)}, {"t", FormalTag{}}}, 12);
    Series moments = build_side("exp-cumulant", "moments", b);
    const IdentityDescriptor& d = find_identity("exp-cumulant");
    VarSpec spec = d.make_spec(b);
    Monomial cm = Monomial::scalar(Scalar(rat(1, 2)));
    for (unsigned m = 1; m <= 4; ++m) {
        VarSpec inner({"q", "t"}, 12 - (int)m, 12 - (int)m);
        Series slice = build::restrict_to(
            build::rehome(moments.slice(1, (int)m), inner), inner);
        Series mm = build::uchimura_sum(inner, m, cm)
                        .scaled(Scalar(Rat(1) / Rat(factorial(m))));
        CHECK(slice == mm);
    }
}

TEST_CASE("perturbed sides are localized exactly") {
    struct Pick {
        const char* id;
        const char* side_a;
        const char* side_b;
        Binding b;
    };
    std::vector<Pick> picks = {
        {"kluyver", "ramanujan", "divisor", B({}, 18)},
        {"ramanujan-entry4", "ramanujan", "divisor", B({{"c", rat(1, 2)}}, 16)},
        {"dilcher-1", "ramanujan", "divisor", B({{"k", 2L}}, 15)},
        {"acs-pk", "ramanujan", "polynomial", B({{"k", 2L}}, 15)},
        {"uchimura-3way", "uchimura", "ramanujan", B({}, 18)},
    };
    uint64_t state = 0x12345678;
    auto rng = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    int done = 0;
    while (done < 50) {
        const Pick& p = picks[rng() % picks.size()];
        Series a = build_side(p.id, p.side_a, p.b);
        Series t = build_side(p.id, p.side_b, p.b);
        REQUIRE(!series_compare(a, t).has_value());
        // perturb one random in-bounds coefficient of the second side
        int at = 1 + (int)(rng() % (uint64_t)p.b.bounds.nq);
        Exps e{at, 0, 0};
        Scalar bump(Rat((long)(1 + rng() % 5)));
        t.add_term(e, bump);
        auto mis = series_compare(a, t);
        REQUIRE(mis.has_value());
        CHECK(mis->exps == e);
        CHECK(mis->rhs - mis->lhs == bump);
        ++done;
    }
}

TEST_CASE("suite files parse into runnable bindings") {
    std::string text =
        "# comment line\n"
        "kluyver\n"
        "ramanujan-entry4 c=1/2\n"
        "uchimura-2var alpha=5/2 r=3\n"
        "gk-pk a=formal k=2\n"
        "general-f a=formal b=formal c=1/2 d=1/3 f=1,2\n";
    auto work = parse_suite_file(text, 15);
    REQUIRE(work.size() == 5);
    CHECK(work[0].first == "kluyver");
    CHECK(work[1].second.scalar("c") == Scalar(rat(1, 2)));
    CHECK(work[2].second.ratio("alpha") == rat(5, 2));
    CHECK(work[3].second.is_formal("a"));
    CHECK(work[4].second.lambda("f").size() == 2);
    for (auto& [id, b] : work) {
        CHECK(b.bounds.nq == 15);
        CHECK(verify_identity(id, b).outcome == Outcome::Pass);
    }
    CHECK_THROWS(parse_suite_file("kluyver oops", 10));
}

TEST_CASE("report JSON carries the documented fields") {
    VerificationReport rep = verify_identity("kluyver", B({}, 12));
    std::string j = rep.json();
    CHECK(j.find("\"command\":\"verify\"") != std::string::npos);
    CHECK(j.find("\"id\":\"kluyver\"") != std::string::npos);
    CHECK(j.find("\"nq\":12") != std::string::npos);
    CHECK(j.find("\"outcome\":\"pass\"") != std::string::npos);
    CHECK(j.find("\"millis\":") != std::string::npos);
}
