#include "registry_common.hpp"

namespace qseries {

using namespace reg;

namespace {

std::vector<IdentityDescriptor> make_registry_part1() {
    std::vector<IdentityDescriptor> reg;

    // --- ramanujan-entry4 ------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "ramanujan-entry4",
        "Ramanujan, Notebook II; Berndt, Part V p.263; Uchimura 1981 eq.(3)",
        {{"c", ParamMode::Bound, "bound rational, cq^n != 1"}},
        {{"ramanujan",
          [](const Ctx& c) { return ramanujan_type_sum(c.spec, c.param("c")); }},
         {"divisor",
          [](const Ctx& c) { return divisor_series(c.spec, 0, c.param("c")); }}},
        false,
        [] {
            return std::vector<Binding>{bind({{"c", rat(1, 2)}}, 20),
                                        bind({{"c", rat(-1, 3)}}, 30),
                                        bind({{"c", rat(2, 5)}}, 40)};
        }});

    // --- kluyver ----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "kluyver",
        "Kluyver 1919; Fine eqs.(12.4)/(12.42); Uchimura 1981 Thm 2",
        {},
        {{"ramanujan",
          [](const Ctx& c) { return ramanujan_type_sum(c.spec, kUnit); }},
         {"divisor",
          [](const Ctx& c) { return divisor_series(c.spec, 0, kUnit); }}},
        false,
        [] {
            return std::vector<Binding>{bind({}, 20), bind({}, 30), bind({}, 40)};
        }});

    // --- uchimura-3way ----------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "uchimura-3way",
        "Uchimura 1981, Thm 2 (all three expressions)",
        {},
        {{"uchimura",
          [](const Ctx& c) { return uchimura_sum(c.spec, 1, kUnit); }},
         {"ramanujan",
          [](const Ctx& c) { return ramanujan_type_sum(c.spec, kUnit); }},
         {"divisor",
          [](const Ctx& c) { return divisor_series(c.spec, 0, kUnit); }}},
        false,
        [] {
            return std::vector<Binding>{bind({}, 20), bind({}, 30), bind({}, 40)};
        }});

    // --- uchimura-bell ----------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "uchimura-bell",
        "Uchimura 1987: M_m = Y_m(K_1,...,K_m)",
        {{"m", ParamMode::IntKnob, "1..5"}},
        {{"uchimura",
          [](const Ctx& c) {
              return uchimura_sum(c.spec, (unsigned)c.knob("m"), kUnit);
          }},
         {"bell",
          [](const Ctx& c) {
              return bell_in_divisor_sums(c.spec, (unsigned)c.knob("m"), kUnit);
          }}},
        false,
        [] {
            std::vector<Binding> v;
            for (long m = 1; m <= 5; ++m)
                v.push_back(bind({{"m", m}}, m <= 3 ? 30 : 20));
            return v;
        }});

    // --- abem-bell ----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "abem-bell",
        "one-variable Bell form: M_{m,c} = (q)inf/(cq)inf Y_m(K_{1,c},...)",
        {{"m", ParamMode::IntKnob, "1..5"}, {"c", ParamMode::Bound, "|cq|<1"}},
        {{"uchimura",
          [](const Ctx& c) {
              return uchimura_sum(c.spec, (unsigned)c.knob("m"), c.param("c"));
          }},
         {"bell",
          [](const Ctx& c) {
              Monomial cm = c.param("c");
              return qinf_over_cqinf(c.spec, cm) *
                     bell_in_divisor_sums(c.spec, (unsigned)c.knob("m"), cm);
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"m", 1L}, {"c", rat(1, 2)}}, 30),
                bind({{"m", 2L}, {"c", rat(-1, 3)}}, 30),
                bind({{"m", 3L}, {"c", rat(2, 5)}}, 20),
                bind({{"m", 5L}, {"c", rat(1, 2)}}, 20)};
        }});

    // --- exp-cumulant -------------------------------------------------------
    // Formal-t exponential form; shares the K/M builders with abem-bell. The
    // cumulant sum runs to m < nt, so every retained (q,t)-monomial is exact,
    // covering t-orders well past 5.
    reg.push_back(IdentityDescriptor{
        "exp-cumulant",
        "moment/cumulant exponential: (q)inf/(cq)inf exp(sum K_{m,c} t^m/m!) = (q)inf/(cq)inf + sum M_{m,c} t^m/m!",
        {{"c", ParamMode::Bound, "|cq|<1"},
         {"t", ParamMode::Formal, "exponential bookkeeping variable"}},
        {{"exp",
          [](const Ctx& c) {
              Monomial cm = c.param("c");
              int tv = c.var_index("t");
              Series e(c.spec);
              Rat inv_fact(1);
              for (int m = 1; m < c.spec.nt; ++m) {
                  inv_fact /= m;
                  Monomial tm;
                  tm.coef = Scalar(inv_fact);
                  tm.exps[tv] = m;
                  e += divisor_series(c.spec, (unsigned)(m - 1), cm) *
                       Series::monomial(c.spec, tm);
              }
              return qinf_over_cqinf(c.spec, cm) * exp_series(e);
          }},
         {"moments",
          [](const Ctx& c) {
              Monomial cm = c.param("c");
              int tv = c.var_index("t");
              Series out = qinf_over_cqinf(c.spec, cm);
              Rat inv_fact(1);
              for (int m = 1; m < c.spec.nt; ++m) {
                  inv_fact /= m;
                  Monomial tm;
                  tm.coef = Scalar(inv_fact);
                  tm.exps[tv] = m;
                  out += uchimura_sum(c.spec, (unsigned)m, cm) *
                         Series::monomial(c.spec, tm);
              }
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"c", rat(1, 2)}, {"t", F()}}, 20),
                bind({{"c", rat(-1, 3)}, {"t", F()}}, 20),
                bind({{"c", rat(2, 5)}, {"t", F()}}, 30)};
        }});

    // --- dilcher-1 ----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "dilcher-1",
        "Dilcher 1995, eqs.(4.3)/(5.7)",
        {{"k", ParamMode::IntKnob, "1..5"}},
        {{"uchimura",
          [](const Ctx& c) {
              long k = c.knob("k");
              return uchimura_weighted(
                  c.spec, [k](long n) { return Rat(binom_int(n, k)); }, kUnit, k);
          }},
         {"ramanujan",
          [](const Ctx& c) {
              long k = c.knob("k");
              return alternating_pole_sum(c.spec, Rat(k), k);
          }},
         {"divisor",
          [](const Ctx& c) {
              return nested_divisor_sum(c.spec, (unsigned)c.knob("k"));
          }}},
        false,
        [] {
            std::vector<Binding> v;
            int tiers[5] = {40, 30, 30, 20, 20};
            for (long k = 1; k <= 5; ++k)
                v.push_back(bind({{"k", k}}, tiers[k - 1]));
            return v;
        }});

    // --- acs-lemma ----------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "acs-lemma",
        "Andrews-Crippa-Simon 1997, Lemma 2.2",
        {{"k", ParamMode::IntKnob, "1..5"}},
        {{"uchimura-type",
          [](const Ctx& c) {
              long k = c.knob("k");
              Series sum(c.spec); // binom(k+n-1,k) vanishes at n=0 for k>=1
              Series invq = Series::one(c.spec);
              for (long n = 1; n <= c.spec.nq; ++n) {
                  invq = invq * geom(c.spec, Monomial::q_power((int)n));
                  Rat w(binom_int(k + n - 1, k));
                  if (w == 0) continue;
                  sum += invq * Series::monomial(
                                    c.spec, Monomial::q_power((int)n, Scalar(w)));
              }
              return poch_q_inf(c.spec) * sum;
          }},
         {"ramanujan",
          [](const Ctx& c) {
              return alternating_pole_sum(c.spec, Rat(c.knob("k")), 1);
          }}},
        false,
        [] {
            std::vector<Binding> v;
            int tiers[5] = {40, 30, 30, 20, 20};
            for (long k = 1; k <= 5; ++k)
                v.push_back(bind({{"k", k}}, tiers[k - 1]));
            return v;
        }});

    // --- dixit-maji ---------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "dixit-maji",
        "Dixit-Maji, Thm 2.1 (two-variable entry form)",
        {{"a", ParamMode::Formal, "summand carries no q^n growth in a"},
         {"b", ParamMode::Formal, "summand carries no q^n growth in b"},
         {"c", ParamMode::Bound, "|c| < 1 rational; |c|=1 left unexercised"}},
        {{"lhs",
          [](const Ctx& c) {
              Monomial am = c.param("a"), bm = c.param("b"), cm = c.param("c");
              Series out(c.spec);
              Series P = Series::one(c.spec);    // prod_{i<n} (a - b q^i)
              Series invB = Series::one(c.spec); // 1/(b)_n
              for (long n = 1; n <= c.spec.nt; ++n) {
                  Monomial bq = bm;
                  bq.exps[0] += (int)(n - 1);
                  P = P * (Series::monomial(c.spec, am) -
                           Series::monomial(c.spec, bq));
                  invB = invB * geom(c.spec, bq);
                  if (P.is_zero()) break;
                  Monomial cq = cm;
                  cq.exps[0] += (int)n;
                  out += P * invB * geom(c.spec, cq);
              }
              return out;
          }},
         {"rhs",
          [](const Ctx& c) {
              Monomial am = c.param("a"), bm = c.param("b"), cm = c.param("c");
              Series out(c.spec);
              Series C = Series::one(c.spec);    // prod_{i<m} (c - b q^i)
              Series invB = Series::one(c.spec); // 1/(b)_m
              for (long m = 0; m + 1 <= c.spec.nt; ++m) {
                  if (m > 0) {
                      Monomial bq = bm;
                      bq.exps[0] += (int)(m - 1);
                      C = C * (Series::monomial(c.spec, cm) -
                               Series::monomial(c.spec, bq));
                      invB = invB * geom(c.spec, bq);
                  }
                  Monomial aq = am, bq2 = bm;
                  aq.exps[0] += (int)m;
                  bq2.exps[0] += (int)m;
                  out += C * invB *
                         (geom_from1(c.spec, aq) - geom_from1(c.spec, bq2));
              }
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"a", F()}, {"b", F()}, {"c", rat(1, 2)}}, 20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(-1, 3)}}, 20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(2, 5)}}, 30)};
        }});

    // --- gupta-kumar-alpha ----------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "gupta-kumar-alpha",
        "Gupta-Kumar 2021 Thm 1.1, rational-alpha extension",
        {{"a", ParamMode::Formal, "coefficient-finiteness needs a formal"},
         {"alpha", ParamMode::RatKnob, "rational sample of the complex claim"}},
        {{"ramanujan",
          [](const Ctx& c) {
              Rat alpha = c.ratio("alpha");
              return gk_left_sum(
                  c.spec, c.param("a"),
                  [&](long n) {
                      return inv_pow_one_minus(c.spec,
                                               Monomial::q_power((int)n), alpha);
                  },
                  0);
          }},
         {"uchimura-type",
          [](const Ctx& c) {
              Rat alpha = c.ratio("alpha");
              Monomial am = c.param("a");
              Series A = Series::one(c.spec);    // (a)_{n-1}
              Series invq = Series::one(c.spec); // 1/(q)_n
              Series sum(c.spec);
              for (long n = 1; n <= c.spec.nt; ++n) {
                  if (n > 1) {
                      Monomial aq = am;
                      aq.exps[0] += (int)(n - 2);
                      A = A * (Series::one(c.spec) -
                               Series::monomial(c.spec, aq));
                  }
                  invq = invq * geom(c.spec, Monomial::q_power((int)n));
                  Rat w = gen_binom(alpha + n - 1, (unsigned)(n - 1));
                  if (w == 0) continue;
                  Monomial aq1 = am;
                  aq1.exps[0] += (int)(n - 1);
                  // (a/q)_n q^n = (q^n - a q^{n-1}) (a)_{n-1}
                  Series top =
                      Series::monomial(c.spec, Monomial::q_power((int)n)) -
                      Series::monomial(c.spec, aq1);
                  sum += (top * A * invq).scaled(Scalar(w));
              }
              return -(poch_q_inf(c.spec) *
                       invert(pochhammer_inf(c.spec, am)) * sum);
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"a", F()}, {"alpha", rat(2)}}, 30),
                bind({{"a", F()}, {"alpha", rat(1, 2)}}, 20),
                bind({{"a", F()}, {"alpha", rat(-3, 5)}}, 20),
                bind({{"a", F()}, {"alpha", rat(5, 2)}}, 20)};
        }});

    // --- general-f --------------------------------------------------------
    reg.push_back(IdentityDescriptor{
        "general-f",
        "master transformation of sum (b/a)_n a^n f(cq^n)/(d)_n for finite-series f",
        {{"a", ParamMode::Formal, ""},
         {"b", ParamMode::Formal, ""},
         {"c", ParamMode::Bound, "|c|<1"},
         {"d", ParamMode::Bound, "d != 1"},
         {"f", ParamMode::Lambda, "lambda_0..lambda_J"}},
        {{"lhs",
          [](const Ctx& c) {
              const auto& lam = c.lambda("f");
              Monomial am = c.param("a"), bm = c.param("b");
              Scalar cc = c.scalar("c"), dd = c.scalar("d");
              Scalar f_at_c(0); // n = 0 term: f(c)
              for (size_t j = 0; j < lam.size(); ++j)
                  f_at_c += Scalar(lam[j]) * cc.pow((long)j);
              Series out(c.spec, f_at_c);
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
                  Series fval(c.spec); // f(cq^n) = sum_j lam_j c^j q^{jn}
                  for (size_t j = 0; j < lam.size(); ++j) {
                      if (lam[j] == 0) continue;
                      fval.add_term({(int)((long)j * n), 0, 0},
                                    Scalar(lam[j]) * cc.pow((long)j));
                  }
                  out += P * invD * fval;
              }
              return out;
          }},
         {"rhs",
          [](const Ctx& c) {
              const auto& lam = c.lambda("f");
              Monomial am = c.param("a"), bm = c.param("b");
              Scalar cc = c.scalar("c"), dd = c.scalar("d");
              Series out(c.spec);
              for (size_t j = 0; j < lam.size(); ++j) {
                  if (lam[j] == 0) continue;
                  Series inner(c.spec);
                  Series G = Series::one(c.spec);    // prod_{i<n} (ad q^i - b)
                  Series invD = Series::one(c.spec); // 1/(d)_n
                  Monomial aqj = am;
                  aqj.exps[0] += (int)j;
                  Series invA = geom(c.spec, aqj); // 1/(a q^j)_{n+1}
                  for (long n = 0;; ++n) {
                      if (n > 0) {
                          Monomial adq = am;
                          adq.coef = adq.coef * dd;
                          adq.exps[0] += (int)(n - 1);
                          G = G * (Series::monomial(c.spec, adq) -
                                   Series::monomial(c.spec, bm));
                          invD = invD * geom(c.spec, Monomial::q_power(
                                                         (int)(n - 1), dd));
                          // (a q^j)_{n+1} gains the factor 1 - a q^{j+n}
                          Monomial aq = am;
                          aq.exps[0] += (int)((long)j + n);
                          invA = invA * geom(c.spec, aq);
                      }
                      long lead = n + n * (n - 1) / 2 + (long)j * n;
                      if (lead > c.spec.nt || G.is_zero()) break;
                      long shift = n * (n - 1) / 2 + (long)j * n;
                      inner += G * invD * invA *
                               Series::monomial(
                                   c.spec, Monomial::q_power((int)shift));
                  }
                  out += inner.scaled(Scalar(lam[j]) * cc.pow((long)j));
              }
              return out;
          }}},
        false,
        [] {
            return std::vector<Binding>{
                bind({{"a", F()}, {"b", F()}, {"c", rat(1, 2)},
                      {"d", rat(1, 3)}, {"f", std::vector<Rat>{rat(1), rat(2)}}},
                     20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(-1, 3)},
                      {"d", rat(-1, 2)},
                      {"f", std::vector<Rat>{rat(0), rat(1), rat(1)}}},
                     20),
                bind({{"a", F()}, {"b", F()}, {"c", rat(2, 5)}, {"d", rat(1, 4)},
                      {"f", std::vector<Rat>{rat(3, 5), rat(-1, 2), rat(0),
                                             rat(1)}}},
                     20)};
        }});

    return reg;
}

} // namespace

const std::vector<IdentityDescriptor>& registry() {
    static const std::vector<IdentityDescriptor> instance = [] {
        auto r = make_registry_part1();
        reg::append_registry_part2(r);
        return r;
    }();
    return instance;
}

} // namespace qseries
