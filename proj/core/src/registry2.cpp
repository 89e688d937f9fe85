#include "registry_common.hpp"

namespace qseries::reg {

namespace {

/* sum_{n>=1} prod_{i=1}^n (a - q^i) * (1-cq^n)^{-(k+1)} / (q)_{n-1},
 * the two-variable polynomial-theorem left side. */
Series gk2var_lhs(const VarSpec& spec, const Monomial& am, const Monomial& cm,
                  long k) {
    return gk_left_sum(
        spec, am,
        [&](long n) {
            Monomial cq = cm;
            cq.exps[0] += (int)n;
            return inv_pow_one_minus(spec, cq, Rat(k + 1));
        },
        -1);
}

/* -(1/c) (q)inf (ac)inf / ((cq)inf (a)inf) P_k(Sfrak_{0,a,c}..). */
Series gk2var_rhs(const VarSpec& spec, const Monomial& am, const Monomial& cm,
                  long k) {
    std::vector<Series> args;
    for (long h = 0; h < k; ++h)
        args.push_back(sfrak(spec, (unsigned)h, am, cm));
    Series pk = p_poly((unsigned)k).eval(spec, args);
    Monomial cq = cm;
    cq.exps[0] += 1;
    Series prefix = poch_q_inf(spec) *
                    pochhammer_inf(spec, mono_mul(am, cm)) *
                    invert(pochhammer_inf(spec, cq) * pochhammer_inf(spec, am));
    return -(prefix * pk).scaled(cm.coef.inv());
}

/* sum_{n=1}^.. (-1)^{n-1} q^{binom(n+1,2)} (1-cq^n)^{-(k+1)} / (q)_{n-1}. */
Series gk2var_c_lhs(const VarSpec& spec, const Monomial& cm, long k) {
    Series out(spec);
    Series invq = Series::one(spec); // 1/(q)_{n-1}
    for (long n = 1;; ++n) {
        if (n >= 2) invq = invq * geom(spec, Monomial::q_power((int)(n - 1)));
        long tri = n * (n + 1) / 2;
        if (tri > spec.nq) break;
        Monomial cq = cm;
        cq.exps[0] += (int)n;
        Scalar sign(n % 2 ? 1 : -1);
        out += invq * inv_pow_one_minus(spec, cq, Rat(k + 1)) *
               Series::monomial(spec, Monomial::q_power((int)tri, sign));
    }
    return out;
}

std::vector<Binding> int_knob_suite(const char* name, long from, long to,
                                    std::initializer_list<int> tiers) {
    std::vector<Binding> v;
    auto t = tiers.begin();
    for (long k = from; k <= to; ++k) {
        int tier = t != tiers.end() ? *t++ : 20;
        v.push_back(bind({{name, k}}, tier));
    }
    return v;
}

} // namespace

void append_registry_part2(std::vector<IdentityDescriptor>& reg) {
    // --- rr-alpha ---------------------------------------------------------
    // Both sides drop the classical-binomial constant sum_j binom(alpha+j-1,j)c^j
    // = (1-c)^{-alpha}: irrational for fractional alpha and not a finite sum
    // on the transformed side. Every retained monomial is exact.
    reg.push_back(IdentityDescriptor{
        "rr-alpha",
        "binomial-kernel transformation, f(z)=(1-z)^{-alpha} in the master identity",
        {{"a", ParamMode::Formal, ""},
         {"b", ParamMode::Formal, ""},
         {"c", ParamMode::Bound, "|c|<1"},
         {"d", ParamMode::Bound, "d != 1"},
         {"alpha", ParamMode::RatKnob, ""}},
        {{"lhs",
          [](const Ctx& c) {
              Monomial am = c.param("a"), bm = c.param("b"), cm = c.param("c");
              Scalar dd = c.scalar("d");
              Rat alpha = c.ratio("alpha");
              Series out(c.spec);
              Series P = Series::one(c.spec);
              Series invD = Series::one(c.spec);
              for (long n = 1; n <= c.spec.nt; ++n) {
                  Monomial bq = bm;
                  bq.exps[0] += (int)(n - 1);
                  P = P * (Series::monomial(c.spec, am) -
                           Series::monomial(c.spec, bq));
                  invD = invD *
                         geom(c.spec, Monomial::q_power((int)(n - 1), dd));
                  if (P.is_zero()) break;
                  Monomial cq = cm;
                  cq.exps[0] += (int)n;
                  out += P * invD * inv_pow_one_minus(c.spec, cq, alpha);
              }
              return out;
          }},
         {"rhs",
          [](const Ctx& c) {
              Monomial am = c.param("a"), bm = c.param("b");
              Scalar cc = c.scalar("c"), dd = c.scalar("d");
              Rat alpha = c.ratio("alpha");
              Series out(c.spec);
              for (long j = 0; j + 1 <= c.spec.nt; ++j) {
                  Scalar w = Scalar(gen_binom(alpha + j - 1, (unsigned)j)) *
                             cc.pow(j);
                  if (w.is_zero()) continue;
                  Monomial aqj = am;
                  aqj.exps[0] += (int)j;
                  Series inner = geom_from1(c.spec, aqj); // n=0 term minus 1
                  Series G = Series::one(c.spec);
                  Series invD = Series::one(c.spec);
                  Series invA = geom(c.spec, aqj);
                  for (long n = 1;; ++n) {
                      Monomial adq = am;
                      adq.coef = adq.coef * dd;
                      adq.exps[0] += (int)(n - 1);
                      G = G * (Series::monomial(c.spec, adq) -
                               Series::monomial(c.spec, bm));
                      invD = invD *
                             geom(c.spec, Monomial::q_power((int)(n - 1), dd));
                      Monomial aq = am;
                      aq.exps[0] += (int)(j + n);
                      invA = invA * geom(c.spec, aq);
                      long lead = n + n * (n - 1) / 2 + j * n;
                      if (lead > c.spec.nt || G.is_zero()) break;
                      long shift = n * (n - 1) / 2 + j * n;
                      inner += G * invD * invA *
                               Series::monomial(c.spec,
                                                Monomial::q_power((int)shift));
                  }
                  out += inner.scaled(w);
              }
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"a", F()}, {"b", F()}, {"c", rat(1, 3)}, {"d", rat(1, 4)},
                      {"alpha", rat(1, 2)}}, 20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(-1, 4)}, {"d", rat(2, 5)},
                      {"alpha", rat(-3, 2)}}, 20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(2, 5)}, {"d", rat(-1, 3)},
                      {"alpha", rat(3)}}, 20)};
        }});

    // --- cor-2var-rr --------------------------------------------------------
    // Same normalization as rr-alpha (the shared constant is (1-c)^{-alpha}).
    reg.push_back(IdentityDescriptor{
        "cor-2var-rr",
        "d=q case: sum (b/a)_n a^n/((1-cq^n)^alpha (q)_n) = sum c^n binom(alpha+n-1,n) (bq^n)inf/(aq^n)inf",
        {{"a", ParamMode::Formal, ""},
         {"b", ParamMode::Formal, ""},
         {"c", ParamMode::Bound, "|c|<1"},
         {"alpha", ParamMode::RatKnob, ""}},
        {{"lhs",
          [](const Ctx& c) {
              Monomial am = c.param("a"), bm = c.param("b"), cm = c.param("c");
              Rat alpha = c.ratio("alpha");
              Series out(c.spec);
              Series P = Series::one(c.spec);
              Series invq = Series::one(c.spec);
              for (long n = 1; n <= c.spec.nt; ++n) {
                  Monomial bq = bm;
                  bq.exps[0] += (int)(n - 1);
                  P = P * (Series::monomial(c.spec, am) -
                           Series::monomial(c.spec, bq));
                  invq = invq * geom(c.spec, Monomial::q_power((int)n));
                  if (P.is_zero()) break;
                  Monomial cq = cm;
                  cq.exps[0] += (int)n;
                  out += P * invq * inv_pow_one_minus(c.spec, cq, alpha);
              }
              return out;
          }},
         {"rhs",
          [](const Ctx& c) {
              Monomial am = c.param("a"), bm = c.param("b");
              Scalar cc = c.scalar("c");
              Rat alpha = c.ratio("alpha");
              // walk n downward so the infinite products grow one factor at
              // a time: (bq^n)inf = (1-bq^n)(bq^{n+1})inf and the inverse of
              // (aq^n)inf gains geom(aq^n)
              Series pb = Series::one(c.spec);
              Series ia = Series::one(c.spec);
              Series out(c.spec);
              for (long n = c.spec.nt - 1; n >= 0; --n) {
                  Monomial bq = bm;
                  bq.exps[0] += (int)n;
                  pb = pb * (Series::one(c.spec) - Series::monomial(c.spec, bq));
                  Monomial aq = am;
                  aq.exps[0] += (int)n;
                  ia = ia * geom(c.spec, aq);
                  Scalar w = Scalar(gen_binom(alpha + n - 1, (unsigned)n)) *
                             cc.pow(n);
                  if (w.is_zero()) continue;
                  Series bracket = pb * ia;
                  bracket -= Series::one(c.spec);
                  out += bracket.scaled(w);
              }
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"a", F()}, {"b", F()}, {"c", rat(1, 3)},
                      {"alpha", rat(1, 2)}}, 20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(-1, 4)},
                      {"alpha", rat(5, 2)}}, 20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(2, 5)},
                      {"alpha", rat(-2)}}, 20)};
        }});

    // --- uchimura-2var ------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "uchimura-2var",
        "two-parameter unification of the Uchimura and Dilcher identities",
        {{"alpha", ParamMode::RatKnob, "(1,1) recovers Uchimura, (k,k) Dilcher"},
         {"r", ParamMode::IntKnob, "1..5"}},
        {{"ramanujan",
          [](const Ctx& c) {
              return alternating_pole_sum(c.spec, c.ratio("alpha"), c.knob("r"));
          }},
         {"uchimura",
          [](const Ctx& c) {
              Rat alpha = c.ratio("alpha");
              long r = c.knob("r");
              return uchimura_weighted(
                  c.spec,
                  [alpha, r](long j) {
                      // binom(alpha+j-r, alpha) = binom(alpha+j-r, j-r)
                      return gen_binom(alpha + j - r, (unsigned)(j - r));
                  },
                  kUnit, r);
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"alpha", rat(1)}, {"r", 1L}}, 40),
                bind({{"alpha", rat(2)}, {"r", 2L}}, 30),
                bind({{"alpha", rat(5, 2)}, {"r", 3L}}, 30),
                bind({{"alpha", rat(-1, 2)}, {"r", 2L}}, 20),
                bind({{"alpha", rat(3, 5)}, {"r", 2L}}, 20),
                bind({{"alpha", rat(4)}, {"r", 4L}}, 20)};
        }});

    // --- dilcher-corrected ---------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "dilcher-corrected",
        "tail-corrected and r-extended form of Dilcher 1995, Thm 3",
        {{"k", ParamMode::IntKnob, "1..5"}, {"r", ParamMode::IntKnob, "1..5"}},
        {{"ramanujan",
          [](const Ctx& c) {
              return alternating_pole_sum(c.spec, Rat(c.knob("k")), c.knob("r"));
          }},
         {"tails",
          [](const Ctx& c) {
              long k = c.knob("k"), r = c.knob("r");
              Series out(c.spec);
              for (long t = 1; t <= k; ++t)
                  for (long j = 0; j + t <= k; ++j) {
                      Rat w = Rat(binom_int(k - 1, j + t - 1)) *
                              dilcher_A((int)(j + t), (int)r, (int)t);
                      if (w == 0) continue;
                      out += uchimura_sum(c.spec, (unsigned)t, kUnit,
                                          r + j + t - 1)
                                 .scaled(Scalar(w));
                  }
              for (long j = 1; j <= k; ++j) {
                  Rat w = Rat(binom_int(k - 1, j - 1)) *
                          dilcher_A((int)j, (int)r, 0);
                  if (w == 0) continue;
                  out += uchimura_sum(c.spec, 0, kUnit, r + j - 1)
                             .scaled(Scalar(w));
              }
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"k", 1L}, {"r", 1L}}, 40),
                bind({{"k", 2L}, {"r", 3L}}, 30),
                bind({{"k", 3L}, {"r", 2L}}, 30),
                bind({{"k", 4L}, {"r", 4L}}, 20),
                bind({{"k", 5L}, {"r", 1L}}, 20),
                bind({{"k", 2L}, {"r", 5L}}, 20)};
        }});

    // --- dilcher-original-discrepancy ----------------------------------------
    // Dilcher's published r=1 right side with the full sums U_t(q) instead of
    // the tails. A mismatch is expected by the corrected theorem's reading;
    // if none appears to the bounds the report flags the entry for review.
    reg.push_back(IdentityDescriptor{
        "dilcher-original-discrepancy",
        "Dilcher 1995, Thm 3 as printed (full U_t(q), no tails)",
        {{"k", ParamMode::IntKnob, "2..5"}},
        {{"ramanujan",
          [](const Ctx& c) {
              return alternating_pole_sum(c.spec, Rat(c.knob("k")), 1);
          }},
         {"uncorrected-tails",
          [](const Ctx& c) {
              long k = c.knob("k");
              Series out(c.spec);
              for (long t = 1; t <= k; ++t) {
                  Rat a_kt(0); // a(k,t) = sum_j binom(k-1,j+t-1) s(j+t,t)/(j+t)!
                  for (long j = 0; j + t <= k; ++j)
                      a_kt += Rat(binom_int(k - 1, j + t - 1)) *
                              dilcher_A((int)(j + t), 1, (int)t);
                  if (a_kt == 0) continue;
                  out += uchimura_sum(c.spec, (unsigned)t, kUnit, 1)
                             .scaled(Scalar(a_kt));
              }
              return out;
          }}},
        true,
        [] { return int_knob_suite("k", 2, 5, {40, 40, 40, 40}); }});

    // --- acs-pk -------------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "acs-pk",
        "Andrews-Crippa-Simon 1997, Thm 2.1; P_k built constructively",
        {{"k", ParamMode::IntKnob, "1..4"}},
        {{"ramanujan",
          [](const Ctx& c) {
              return alternating_pole_sum(c.spec, Rat(c.knob("k")), 1);
          }},
         {"polynomial",
          [](const Ctx& c) {
              long k = c.knob("k");
              std::vector<Series> args;
              for (long h = 0; h < k; ++h)
                  args.push_back(divisor_series(c.spec, (unsigned)h, kUnit));
              return p_poly((unsigned)k).eval(c.spec, args);
          }}},
        false,
        [] { return int_knob_suite("k", 1, 4, {40, 30, 30, 20}); }});

    // --- gk-pk --------------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "gk-pk",
        "Gupta-Kumar 2021: -sum (q/a)_n a^n/((1-q^n)^k (q)_n) = P_k(Sfrak_{0,a}..)",
        {{"a", ParamMode::Formal, ""}, {"k", ParamMode::IntKnob, "1..4"}},
        {{"ramanujan",
          [](const Ctx& c) {
              long k = c.knob("k");
              return -gk_left_sum(
                  c.spec, c.param("a"),
                  [&](long n) {
                      return inv_pow_one_minus(c.spec,
                                               Monomial::q_power((int)n), Rat(k));
                  },
                  0);
          }},
         {"polynomial",
          [](const Ctx& c) {
              long k = c.knob("k");
              Monomial am = c.param("a");
              std::vector<Series> args;
              for (long h = 0; h < k; ++h)
                  args.push_back(sfrak(c.spec, (unsigned)h, am, kUnit));
              return p_poly((unsigned)k).eval(c.spec, args);
          }}},
        false,
        [] {
            std::vector<Binding> v;
            int tiers[4] = {30, 30, 20, 20};
            for (long k = 1; k <= 4; ++k)
                v.push_back(bind({{"a", F()}, {"k", k}}, tiers[k - 1]));
            return v;
        }});

    // --- gk-pk-2var -----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "gk-pk-2var",
        "two-variable polynomial theorem over Sfrak_{m,a,c}",
        {{"a", ParamMode::Formal, ""},
         {"c", ParamMode::Bound, "|ac|<1, |cq|<1"},
         {"k", ParamMode::IntKnob, "1..4"}},
        {{"lhs",
          [](const Ctx& c) {
              return gk2var_lhs(c.spec, c.param("a"), c.param("c"), c.knob("k"));
          }},
         {"polynomial",
          [](const Ctx& c) {
              return gk2var_rhs(c.spec, c.param("a"), c.param("c"), c.knob("k"));
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"a", F()}, {"c", rat(1, 3)}, {"k", 1L}}, 30),
                bind({{"a", F()}, {"c", rat(-1, 4)}, {"k", 2L}}, 20),
                bind({{"a", F()}, {"c", rat(2, 5)}, {"k", 2L}}, 20),
                bind({{"a", F()}, {"c", rat(1, 3)}, {"k", 3L}}, 20),
                bind({{"a", F()}, {"c", rat(-1, 4)}, {"k", 4L}}, 20)};
        }});

    // --- gk-pk-2var-c ---------------------------------------------------------
    // The a->0 corollary; the third side re-derives the left side by slicing
    // the a-formal two-variable builder at a-degree zero.
    reg.push_back(IdentityDescriptor{
        "gk-pk-2var-c",
        "a->0 limit: sum (-1)^{n-1} q^{binom(n+1,2)}/((1-cq^n)^{k+1}(q)_{n-1}) = (1/c)(q)inf/(cq)inf P_k(S_{0,c}..)",
        {{"c", ParamMode::Bound, "|c|<1"}, {"k", ParamMode::IntKnob, "1..4"}},
        {{"lhs",
          [](const Ctx& c) {
              return gk2var_c_lhs(c.spec, c.param("c"), c.knob("k"));
          }},
         {"polynomial",
          [](const Ctx& c) {
              long k = c.knob("k");
              Monomial cm = c.param("c");
              std::vector<Series> args;
              for (long h = 0; h < k; ++h)
                  args.push_back(divisor_series(c.spec, (unsigned)h, cm));
              Series pk = p_poly((unsigned)k).eval(c.spec, args);
              Monomial cq = cm;
              cq.exps[0] += 1;
              return (poch_q_inf(c.spec) * invert(pochhammer_inf(c.spec, cq)) *
                      pk)
                  .scaled(cm.coef.inv());
          }},
         {"two-var-slice",
          [](const Ctx& c) {
              VarSpec inner({"q", "a"}, c.spec.nq, c.spec.nt);
              Monomial am = Monomial::var(1);
              Series full = gk2var_lhs(inner, am, c.param("c"), c.knob("k"));
              return -rehome(full.slice(1, 0), c.spec);
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"c", rat(1, 3)}, {"k", 1L}}, 30),
                bind({{"c", rat(-1, 4)}, {"k", 2L}}, 30),
                bind({{"c", rat(2, 5)}, {"k", 3L}}, 20),
                bind({{"c", rat(1, 3)}, {"k", 4L}}, 20)};
        }});

    // --- eulerian-3way --------------------------------------------------------
    // m = 0 is excluded: the Bell side needs m >= 1 (the m=0 instance is
    // inconsistent with sum q^n (q^{n+1})inf = 1 - (q)inf).
    reg.push_back(IdentityDescriptor{
        "eulerian-3way",
        "Eulerian-kernel Ramanujan-type expression for M_{m,c}",
        {{"m", ParamMode::IntKnob, "1..5"}, {"c", ParamMode::Bound, ""}},
        {{"uchimura",
          [](const Ctx& c) {
              return uchimura_sum(c.spec, (unsigned)c.knob("m"), c.param("c"));
          }},
         {"ramanujan-eulerian",
          [](const Ctx& c) {
              unsigned m = (unsigned)c.knob("m");
              Monomial cm = c.param("c");
              Series out(c.spec);
              Series invq = Series::one(c.spec); // 1/(q)_{n-1}
              for (long n = 1;; ++n) {
                  if (n >= 2)
                      invq = invq * geom(c.spec, Monomial::q_power((int)(n - 1)));
                  long lead = n * (n - 1) / 2 + n; // q^{binom(n,2)} c q^n
                  if (lead > c.spec.nq) break;
                  Monomial cq = cm;
                  cq.exps[0] += (int)n;
                  Monomial front = cq;
                  front.exps[0] += (int)(n * (n - 1) / 2);
                  front.coef = front.coef * Scalar(n % 2 ? 1 : -1);
                  out += invq * eulerian_at(c.spec, m, cq) *
                         inv_pow_one_minus(c.spec, cq, Rat((long)m + 1)) *
                         Series::monomial(c.spec, front);
              }
              return out;
          }},
         {"bell",
          [](const Ctx& c) {
              Monomial cm = c.param("c");
              return qinf_over_cqinf(c.spec, cm) *
                     bell_in_divisor_sums(c.spec, (unsigned)c.knob("m"), cm);
          }}},
        false,
        [] {
            std::vector<Binding> v;
            Rat pool[3] = {rat(1, 2), rat(-1, 3), rat(2, 5)};
            for (long m = 1; m <= 5; ++m)
                v.push_back(bind({{"m", m}, {"c", pool[(m - 1) % 3]}},
                                 m <= 2 ? 30 : 20));
            return v;
        }});

    // --- entry4-uchimura-type ---------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "entry4-uchimura-type",
        "Uchimura-type expression completing the Ramanujan entry",
        {{"c", ParamMode::Bound, ""}},
        {{"uchimura-type",
          [](const Ctx& c) {
              Monomial cm = c.param("c");
              Monomial cq = cm;
              cq.exps[0] += 1;
              return pochhammer_inf(c.spec, cq) * invert(poch_q_inf(c.spec)) *
                     uchimura_sum(c.spec, 1, cm);
          }},
         {"ramanujan",
          [](const Ctx& c) { return ramanujan_type_sum(c.spec, c.param("c")); }},
         {"divisor",
          [](const Ctx& c) { return divisor_series(c.spec, 0, c.param("c")); }}},
        false,
        [] {
            return std::vector<Binding>{bind({{"c", rat(1, 2)}}, 30),
                                        bind({{"c", rat(-1, 3)}}, 30),
                                        bind({{"c", rat(2, 5)}}, 20)};
        }});

    // --- uchimura-mm-3way -----------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "uchimura-mm-3way",
        "c=1 Eulerian form: M_m = sum (-1)^{n-1} q^{binom(n,2)+n} A_m(q^n)/((1-q^n)^m (q)_n) = Y_m(K_1..K_m)",
        {{"m", ParamMode::IntKnob, "1..5"}},
        {{"uchimura",
          [](const Ctx& c) {
              return uchimura_sum(c.spec, (unsigned)c.knob("m"), kUnit);
          }},
         {"ramanujan-eulerian",
          [](const Ctx& c) {
              unsigned m = (unsigned)c.knob("m");
              Series out(c.spec);
              Series invq = Series::one(c.spec);
              for (long n = 1;; ++n) {
                  invq = invq * geom(c.spec, Monomial::q_power((int)n));
                  long lead = n * (n - 1) / 2 + n;
                  if (lead > c.spec.nq) break;
                  Monomial qn = Monomial::q_power((int)n);
                  Scalar sign(n % 2 ? 1 : -1);
                  out += invq * eulerian_at(c.spec, m, qn) *
                         inv_pow_one_minus(c.spec, qn, Rat((long)m)) *
                         Series::monomial(c.spec,
                                          Monomial::q_power((int)lead, sign));
              }
              return out;
          }},
         {"bell",
          [](const Ctx& c) {
              return bell_in_divisor_sums(c.spec, (unsigned)c.knob("m"), kUnit);
          }}},
        false, [] { return int_knob_suite("m", 1, 5, {30, 30, 20, 20, 20}); }});

    // --- lemma5 -----------------------------------------------------------
    // Verified as a formal-x identity: the r-th x-derivative of the product
    // form against the term-by-term derivative of its q-binomial expansion.
    reg.push_back(IdentityDescriptor{
        "lemma5",
        "r-th derivative of (xac)inf/(xcq)inf via the q-binomial theorem",
        {{"r", ParamMode::IntKnob, "1..5"},
         {"a", ParamMode::Bound, "|a|<1"},
         {"c", ParamMode::Bound, "|cq|<1"},
         {"x", ParamMode::Formal, "differentiation variable"}},
        {{"product-derivative",
          [](const Ctx& c) {
              int xv = c.var_index("x");
              Scalar a = c.scalar("a"), cc = c.scalar("c");
              return derive_exactly(c.spec, xv, c.knob("r"),
                                    [&](const VarSpec& s) {
                                        return gk_product_form(s, xv, a, cc);
                                    });
          }},
         {"qbinom-sum",
          [](const Ctx& c) {
              long r = c.knob("r");
              int xv = c.var_index("x");
              Scalar a = c.scalar("a"), cc = c.scalar("c");
              Rat rfact(factorial((unsigned)r));
              Series out(c.spec);
              Series A = Series::one(c.spec);    // (a)_{n-1}
              Series invq = Series::one(c.spec); // 1/(q)_n
              for (long n = 1;; ++n) {
                  if (n > 1)
                      A = A * (Series::one(c.spec) -
                               Series::monomial(
                                   c.spec,
                                   Monomial::q_power((int)(n - 2), a)));
                  invq = invq * geom(c.spec, Monomial::q_power((int)n));
                  if (n - r + (n - 1) > c.spec.nt) break;
                  if (n < r) continue;
                  Rat w = rfact * Rat(binom_int(n, r));
                  Series top = // (a/q)_n q^n = (q^n - a q^{n-1}) (a)_{n-1}
                      Series::monomial(c.spec, Monomial::q_power((int)n)) -
                      Series::monomial(c.spec,
                                       Monomial::q_power((int)(n - 1), a));
                  Monomial xpow;
                  xpow.exps[xv] = (int)(n - r);
                  xpow.coef = Scalar(w) * cc.pow(n);
                  out += top * A * invq * Series::monomial(c.spec, xpow);
              }
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"r", 1L}, {"a", rat(1, 2)}, {"c", rat(1, 3)}, {"x", F()}}, 30),
                bind({{"r", 2L}, {"a", rat(-1, 3)}, {"c", rat(2, 5)}, {"x", F()}}, 20),
                bind({{"r", 3L}, {"a", rat(2, 7)}, {"c", rat(-1, 2)}, {"x", F()}}, 20),
                bind({{"r", 5L}, {"a", rat(1, 2)}, {"c", rat(1, 3)}, {"x", F()}}, 20)};
        }});

    // --- lemma6 -----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "lemma6",
        "d^i/dx^i of (xac)inf/(xcq)inf = (xac)inf/(xcq)inf N_i(T_1..T_i)",
        {{"i", ParamMode::IntKnob, "1..5"},
         {"a", ParamMode::Bound, ""},
         {"c", ParamMode::Bound, ""},
         {"x", ParamMode::Formal, ""}},
        {{"derivative",
          [](const Ctx& c) {
              int xv = c.var_index("x");
              Scalar a = c.scalar("a"), cc = c.scalar("c");
              return derive_exactly(c.spec, xv, c.knob("i"),
                                    [&](const VarSpec& s) {
                                        return gk_product_form(s, xv, a, cc);
                                    });
          }},
         {"nform",
          [](const Ctx& c) {
              long i = c.knob("i");
              Monomial am = c.param("a"), cm = c.param("c");
              Monomial xm = Monomial::var(c.var_index("x"));
              std::vector<Series> ts;
              for (long rr = 1; rr <= i; ++rr)
                  ts.push_back(t_func(c.spec, (unsigned)rr, am, cm, xm));
              return gk_product_form(c) *
                     n_poly((unsigned)i).eval(c.spec, ts);
          }}},
        false,
        [] {
            std::vector<Binding> v;
            Rat pa[3] = {rat(1, 2), rat(-1, 3), rat(2, 7)};
            Rat pc[3] = {rat(1, 3), rat(2, 5), rat(-1, 2)};
            for (long i = 1; i <= 5; ++i)
                v.push_back(bind({{"i", i},
                                  {"a", pa[(i - 1) % 3]},
                                  {"c", pc[(i - 1) % 3]},
                                  {"x", F()}},
                                 i <= 2 ? 30 : 20));
            return v;
        }});

    // --- lemma7 -----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "lemma7",
        "T_{r,a,c}(1,q) = sum_h Q_{h,r} Sfrak_{h,a,c}(q)",
        {{"r", ParamMode::IntKnob, "1..6"},
         {"a", ParamMode::Bound, ""},
         {"c", ParamMode::Bound, ""}},
        {{"t-function",
          [](const Ctx& c) {
              return t_func(c.spec, (unsigned)c.knob("r"), c.param("a"),
                            c.param("c"), std::nullopt);
          }},
         {"q-combination",
          [](const Ctx& c) {
              unsigned r = (unsigned)c.knob("r");
              Monomial am = c.param("a"), cm = c.param("c");
              Series out(c.spec);
              for (unsigned h = 0; h < r; ++h) {
                  Rat qh = q_coef(h, r);
                  if (qh == 0) continue;
                  out += sfrak(c.spec, h, am, cm).scaled(Scalar(qh));
              }
              return out;
          }}},
        false,
        [] {
            std::vector<Binding> v;
            Rat pa[3] = {rat(1, 2), rat(-1, 3), rat(2, 7)};
            Rat pc[3] = {rat(1, 3), rat(2, 5), rat(-1, 2)};
            for (long r = 1; r <= 6; ++r)
                v.push_back(bind({{"r", r},
                                  {"a", pa[(r - 1) % 3]},
                                  {"c", pc[(r - 1) % 3]}},
                                 r <= 3 ? 30 : 20));
            return v;
        }});

    // --- t-deriv ----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "t-deriv",
        "d/dx T_{r,a,c}(x,q) = r T_{r+1,a,c}(x,q)",
        {{"r", ParamMode::IntKnob, "1..5"},
         {"a", ParamMode::Bound, ""},
         {"c", ParamMode::Bound, ""},
         {"x", ParamMode::Formal, ""}},
        {{"derivative",
          [](const Ctx& c) {
              int xv = c.var_index("x");
              Monomial xm = Monomial::var(xv);
              Monomial am = c.param("a"), cm = c.param("c");
              unsigned r = (unsigned)c.knob("r");
              return derive_exactly(c.spec, xv, 1, [&](const VarSpec& s) {
                  return t_func(s, r, am, cm, xm);
              });
          }},
         {"scaled-next",
          [](const Ctx& c) {
              Monomial xm = Monomial::var(c.var_index("x"));
              return t_func(c.spec, (unsigned)c.knob("r") + 1, c.param("a"),
                            c.param("c"), xm)
                  .scaled(Scalar(c.knob("r")));
          }}},
        false,
        [] {
            std::vector<Binding> v;
            Rat pa[3] = {rat(1, 2), rat(-1, 3), rat(2, 7)};
            Rat pc[3] = {rat(1, 3), rat(2, 5), rat(-1, 2)};
            for (long r = 1; r <= 5; ++r)
                v.push_back(bind({{"r", r},
                                  {"a", pa[(r - 1) % 3]},
                                  {"c", pc[(r - 1) % 3]},
                                  {"x", F()}},
                                 r <= 3 ? 30 : 20));
            return v;
        }});

    // --- prelim-qbinomial ---------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "prelim-qbinomial",
        "Gasper-Rahman (1.3.2): sum (A)_n z^n/(q)_n = (Az)inf/(z)inf",
        {{"A", ParamMode::Bound, ""},
         {"zc", ParamMode::Bound, "scalar part of z"},
         {"zs", ParamMode::IntKnob, "q-shift of z, >= 1"}},
        {{"sum",
          [](const Ctx& c) {
              Scalar A = c.scalar("A");
              Monomial z = c.param("zc", (int)c.knob("zs"));
              Series out = Series::one(c.spec);
              Series pa = Series::one(c.spec);
              Series invq = Series::one(c.spec);
              Monomial zn = z;
              for (long n = 1;; ++n) {
                  pa = pa * (Series::one(c.spec) -
                             Series::monomial(
                                 c.spec, Monomial::q_power((int)(n - 1), A)));
                  invq = invq * geom(c.spec, Monomial::q_power((int)n));
                  if (zn.exps[0] > c.spec.nq) break;
                  out += pa * invq * Series::monomial(c.spec, zn);
                  zn = mono_mul(zn, z);
              }
              return out;
          }},
         {"product",
          [](const Ctx& c) {
              Monomial z = c.param("zc", (int)c.knob("zs"));
              Monomial az = z;
              az.coef = az.coef * c.scalar("A");
              return pochhammer_inf(c.spec, az) *
                     invert(pochhammer_inf(c.spec, z));
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"A", rat(1, 2)}, {"zc", rat(1)}, {"zs", 1L}}, 40),
                bind({{"A", rat(-1, 3)}, {"zc", rat(2, 5)}, {"zs", 1L}}, 30),
                bind({{"A", rat(3)}, {"zc", rat(1, 2)}, {"zs", 2L}}, 20)};
        }});

    // --- prelim-fine --------------------------------------------------------
    // B carries a q-shift so the transformed series truncates exactly; a pure
    // scalar B only admits partial sums (see the op-level contract).
    reg.push_back(IdentityDescriptor{
        "prelim-fine",
        "Gasper-Rahman (III.1), Fine's transformation",
        {{"A", ParamMode::Bound, ""},
         {"bc", ParamMode::Bound, ""},
         {"bs", ParamMode::IntKnob, ">= 1"},
         {"cc", ParamMode::Bound, ""},
         {"cs", ParamMode::IntKnob, ">= bs"},
         {"zc", ParamMode::Bound, ""},
         {"zs", ParamMode::IntKnob, ">= 1"}},
        {{"lhs",
          [](const Ctx& c) {
              Monomial A = c.param("A"), B = c.param("bc", (int)c.knob("bs"));
              Monomial C = c.param("cc", (int)c.knob("cs"));
              Monomial z = c.param("zc", (int)c.knob("zs"));
              return basic_hypergeom(c.spec, HypergeomKind::Phi21, {A, B}, {C},
                                     z, (unsigned)c.spec.nt);
          }},
         {"rhs",
          [](const Ctx& c) {
              Monomial A = c.param("A"), B = c.param("bc", (int)c.knob("bs"));
              Monomial C = c.param("cc", (int)c.knob("cs"));
              Monomial z = c.param("zc", (int)c.knob("zs"));
              Monomial az = mono_mul(A, z);
              Monomial cb{C.coef * B.coef.inv(),
                          {C.exps[0] - B.exps[0], 0, 0}};
              Series prefix = pochhammer_inf(c.spec, az) *
                              pochhammer_inf(c.spec, B) *
                              invert(pochhammer_inf(c.spec, z) *
                                     pochhammer_inf(c.spec, C));
              return prefix * basic_hypergeom(c.spec, HypergeomKind::Phi21,
                                              {cb, z}, {az}, B,
                                              (unsigned)c.spec.nt);
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"A", rat(1, 2)}, {"bc", rat(1, 4)}, {"bs", 1L},
                      {"cc", rat(1)}, {"cs", 1L}, {"zc", rat(1)}, {"zs", 1L}},
                     30),
                bind({{"A", rat(-1, 3)}, {"bc", rat(1, 2)}, {"bs", 1L},
                      {"cc", rat(1, 3)}, {"cs", 2L}, {"zc", rat(2, 5)},
                      {"zs", 1L}},
                     20),
                bind({{"A", rat(2)}, {"bc", rat(1, 5)}, {"bs", 1L},
                      {"cc", rat(1)}, {"cs", 1L}, {"zc", rat(1)}, {"zs", 1L}},
                     20)};
        }});

    // --- prelim-qgauss --------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "prelim-qgauss",
        "Gasper-Rahman (II.8), q-Gauss sum",
        {{"A", ParamMode::Bound, ""},
         {"B", ParamMode::Bound, ""},
         {"cc", ParamMode::Bound, ""},
         {"cs", ParamMode::IntKnob, ">= 1"}},
        {{"phi-sum",
          [](const Ctx& c) {
              Monomial A = c.param("A"), B = c.param("B");
              Monomial C = c.param("cc", (int)c.knob("cs"));
              Monomial z{C.coef * (A.coef * B.coef).inv(), C.exps};
              return basic_hypergeom(c.spec, HypergeomKind::Phi21, {A, B}, {C},
                                     z, (unsigned)c.spec.nt);
          }},
         {"product",
          [](const Ctx& c) {
              Monomial A = c.param("A"), B = c.param("B");
              Monomial C = c.param("cc", (int)c.knob("cs"));
              Monomial ca{C.coef * A.coef.inv(), C.exps};
              Monomial cb{C.coef * B.coef.inv(), C.exps};
              Monomial z{C.coef * (A.coef * B.coef).inv(), C.exps};
              return pochhammer_inf(c.spec, ca) * pochhammer_inf(c.spec, cb) *
                     invert(pochhammer_inf(c.spec, C) *
                            pochhammer_inf(c.spec, z));
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"A", rat(1, 2)}, {"B", rat(1, 3)}, {"cc", rat(1)},
                      {"cs", 1L}}, 30),
                bind({{"A", rat(-1, 3)}, {"B", rat(2, 5)}, {"cc", rat(1, 2)},
                      {"cs", 1L}}, 20),
                bind({{"A", rat(3)}, {"B", rat(1, 4)}, {"cc", rat(1)},
                      {"cs", 2L}}, 20)};
        }});

    // --- prelim-3phi2 -----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "prelim-3phi2",
        "Gasper-Rahman (III.9), 3phi2 transformation",
        {{"A", ParamMode::Bound, ""},
         {"B", ParamMode::Bound, ""},
         {"C", ParamMode::Bound, ""},
         {"dc", ParamMode::Bound, ""},
         {"ds", ParamMode::IntKnob, ">= 1"},
         {"ec", ParamMode::Bound, ""},
         {"es", ParamMode::IntKnob, ">= 1"}},
        {{"lhs",
          [](const Ctx& c) {
              Monomial A = c.param("A"), B = c.param("B"), C = c.param("C");
              Monomial D = c.param("dc", (int)c.knob("ds"));
              Monomial E = c.param("ec", (int)c.knob("es"));
              Monomial arg{D.coef * E.coef * (A.coef * B.coef * C.coef).inv(),
                           {D.exps[0] + E.exps[0], 0, 0}};
              return basic_hypergeom(c.spec, HypergeomKind::Phi32, {A, B, C},
                                     {D, E}, arg, (unsigned)c.spec.nt);
          }},
         {"rhs",
          [](const Ctx& c) {
              Monomial A = c.param("A"), B = c.param("B"), C = c.param("C");
              Monomial D = c.param("dc", (int)c.knob("ds"));
              Monomial E = c.param("ec", (int)c.knob("es"));
              Monomial arg1{D.coef * E.coef * (A.coef * B.coef * C.coef).inv(),
                            {D.exps[0] + E.exps[0], 0, 0}};
              Monomial ea{E.coef * A.coef.inv(), E.exps};
              Monomial debc{D.coef * E.coef * (B.coef * C.coef).inv(),
                            {D.exps[0] + E.exps[0], 0, 0}};
              Monomial db{D.coef * B.coef.inv(), D.exps};
              Monomial dc_{D.coef * C.coef.inv(), D.exps};
              Series prefix =
                  pochhammer_inf(c.spec, ea) * pochhammer_inf(c.spec, debc) *
                  invert(pochhammer_inf(c.spec, E) *
                         pochhammer_inf(c.spec, arg1));
              return prefix * basic_hypergeom(c.spec, HypergeomKind::Phi32,
                                              {A, db, dc_}, {D, debc}, ea,
                                              (unsigned)c.spec.nt);
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"A", rat(1, 2)}, {"B", rat(2)}, {"C", rat(3)},
                      {"dc", rat(1)}, {"ds", 1L}, {"ec", rat(1, 3)},
                      {"es", 1L}}, 20),
                bind({{"A", rat(-1, 2)}, {"B", rat(3)}, {"C", rat(2)},
                      {"dc", rat(1)}, {"ds", 1L}, {"ec", rat(2, 5)},
                      {"es", 2L}}, 20),
                bind({{"A", rat(1, 3)}, {"B", rat(-2)}, {"C", rat(5)},
                      {"dc", rat(1, 2)}, {"ds", 2L}, {"ec", rat(1)},
                      {"es", 1L}}, 20)};
        }});

    // --- chu-vandermonde ---------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "chu-vandermonde",
        "Chu-Vandermonde convolution",
        {{"k", ParamMode::IntKnob, "1..12"}, {"n", ParamMode::IntKnob, "1..12"}},
        {{"lhs",
          [](const Ctx& c) {
              return Series(c.spec,
                            Scalar(Rat(binom_int(c.knob("k") + c.knob("n") - 1,
                                                 c.knob("k")))));
          }},
         {"rhs",
          [](const Ctx& c) {
              long k = c.knob("k"), n = c.knob("n");
              Rat acc(0);
              for (long r = 1; r <= k; ++r)
                  acc += Rat(binom_int(n, r)) * Rat(binom_int(k - 1, k - r));
              return Series(c.spec, Scalar(acc));
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"k", 1L}, {"n", 1L}}, 20), bind({{"k", 3L}, {"n", 5L}}, 20),
                bind({{"k", 7L}, {"n", 2L}}, 20),
                bind({{"k", 12L}, {"n", 12L}}, 20),
                bind({{"k", 5L}, {"n", 9L}}, 20)};
        }});

    // --- finite-uchimura -----------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "finite-uchimura",
        "van Hamme / Guo-Zeng finite analogue",
        {{"N", ParamMode::IntKnob, "1..10"}},
        {{"uchimura-finite",
          [](const Ctx& c) {
              long N = c.knob("N");
              Series out(c.spec);
              for (long n = 1; n <= c.spec.nq; ++n) {
                  Series tailpoch = pochhammer(
                      c.spec, Monomial::q_power((int)(n + 1)), (unsigned)(N - 1));
                  out += tailpoch * Series::monomial(
                                        c.spec,
                                        Monomial::q_power((int)n, Scalar(n)));
                  if (n + N <= c.spec.nq)
                      out -= tailpoch *
                             Series::monomial(
                                 c.spec,
                                 Monomial::q_power((int)(n + N), Scalar(n)));
              }
              return out;
          }},
         {"ramanujan-finite",
          [](const Ctx& c) {
              long N = c.knob("N");
              Series out(c.spec);
              for (long n = 1; n <= N; ++n) {
                  long tri = n * (n + 1) / 2;
                  if (tri > c.spec.nq) break;
                  Scalar sign(n % 2 ? 1 : -1);
                  out += qbinom_gauss(c.spec, (unsigned)N, (unsigned)n) *
                         geom(c.spec, Monomial::q_power((int)n)) *
                         Series::monomial(c.spec,
                                          Monomial::q_power((int)tri, sign));
              }
              return out;
          }},
         {"divisor-finite",
          [](const Ctx& c) {
              long N = c.knob("N");
              Series out(c.spec);
              for (long n = 1; n <= N; ++n)
                  out += geom_from1(c.spec, Monomial::q_power((int)n));
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"N", 1L}}, 30), bind({{"N", 2L}}, 30),
                bind({{"N", 7L}}, 30), bind({{"N", 10L}}, 40)};
        }});

    // --- u-tails ------------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "u-tails",
        "tail consistency: U_{m,i} - U_{m,i+1} = i^m q^i (q^{i+1})inf",
        {{"m", ParamMode::IntKnob, "0..5"}, {"i", ParamMode::IntKnob, ">= 1"}},
        {{"tail-difference",
          [](const Ctx& c) {
              unsigned m = (unsigned)c.knob("m");
              long i = c.knob("i");
              return uchimura_sum(c.spec, m, kUnit, i) -
                     uchimura_sum(c.spec, m, kUnit, i + 1);
          }},
         {"single-term",
          [](const Ctx& c) {
              unsigned m = (unsigned)c.knob("m");
              long i = c.knob("i");
              return pochhammer_inf(c.spec, Monomial::q_power((int)(i + 1))) *
                     Series::monomial(
                         c.spec,
                         Monomial::q_power((int)i, Scalar(nth_power(i, m))));
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"m", 0L}, {"i", 1L}}, 30),
                bind({{"m", 1L}, {"i", 1L}}, 30),
                bind({{"m", 2L}, {"i", 3L}}, 30),
                bind({{"m", 3L}, {"i", 5L}}, 20),
                bind({{"m", 5L}, {"i", 8L}}, 20)};
        }});
}

} // namespace qseries::reg
