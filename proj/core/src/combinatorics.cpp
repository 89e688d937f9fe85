#include "qseries/combinatorics.hpp"

#include <mutex>

namespace qseries {

namespace {

/* Triangle caches grown on demand; guarded since callers may be concurrent. */
std::mutex g_tri_mutex;
std::vector<std::vector<Int>> g_s1, g_s2;

void grow_triangles(unsigned n) {
    if (g_s1.empty()) {
        g_s1.push_back({Int(1)});
        g_s2.push_back({Int(1)});
    }
    while (g_s1.size() <= n) {
        unsigned m = g_s1.size();
        std::vector<Int> r1(m + 1, Int(0)), r2(m + 1, Int(0));
        for (unsigned k = 1; k <= m; ++k) {
            // s(m,k) = s(m-1,k-1) - (m-1) s(m-1,k)
            r1[k] = g_s1[m - 1][k - 1] -
                    Int((long)(m - 1)) * (k < m ? g_s1[m - 1][k] : Int(0));
            // s~(m,k) = s~(m-1,k-1) + k s~(m-1,k)
            r2[k] = g_s2[m - 1][k - 1] +
                    Int((long)k) * (k < m ? g_s2[m - 1][k] : Int(0));
        }
        g_s1.push_back(std::move(r1));
        g_s2.push_back(std::move(r2));
    }
}

} // namespace

Int stirling_first(unsigned n, unsigned k) {
    if (k > n) return Int(0);
    std::lock_guard<std::mutex> lock(g_tri_mutex);
    grow_triangles(n);
    return g_s1[n][k];
}

Int stirling_second(unsigned n, unsigned k) {
    if (k > n) return Int(0);
    std::lock_guard<std::mutex> lock(g_tri_mutex);
    grow_triangles(n);
    return g_s2[n][k];
}

Rat gen_binom(const Rat& alpha, unsigned n) {
    Rat out(1);
    for (unsigned i = 0; i < n; ++i) {
        out *= (alpha - (long)i);
        out /= (long)(i + 1);
    }
    return out;
}

PolyQ eulerian_poly(unsigned m) {
    // coefficient of x^t: sum_{i<=t} (-1)^i binom(m+1,i) (t+1-i)^m
    PolyQ p(1);
    if (m == 0) {
        p.add_term({0}, Rat(1));
        return p;
    }
    for (unsigned t = 0; t + 1 <= m; ++t) {
        Rat c(0);
        for (unsigned i = 0; i <= t; ++i) {
            Int power;
            mpz_ui_pow_ui(power.get_mpz_t(), t + 1 - i, m);
            Int term = binom_int((long)m + 1, (long)i) * power;
            if (i % 2) c -= Rat(term);
            else c += Rat(term);
        }
        p.add_term({(int)t}, c);
    }
    return p;
}

PolyQ bell_poly(unsigned m) {
    if (m == 0) return PolyQ::constant(0, Rat(1));
    PolyQ out((int)m);
    // enumerate (k_1,...,k_m) with sum i*k_i = m
    std::vector<int> k(m + 1, 0);
    Rat mfact(factorial(m));
    std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned rem) {
        if (i > m || rem == 0) {
            if (rem != 0) return;
            Rat c = mfact;
            std::vector<int> e(m, 0);
            for (unsigned j = 1; j <= m; ++j) {
                if (!k[j]) continue;
                e[j - 1] = k[j];
                c /= Rat(factorial((unsigned)k[j]));
                c /= rat_pow(Rat(factorial(j)), k[j]);
            }
            out.add_term(e, c);
            return;
        }
        for (unsigned c = 0; c * i <= rem; ++c) {
            k[i] = (int)c;
            rec(i + 1, rem - c * i);
        }
        k[i] = 0;
    };
    rec(1, m);
    return out;
}

Scalar divisor_sigma(unsigned m, const Scalar& c, unsigned n) {
    if (n == 0) throw std::domain_error("divisor_sigma: n must be >= 1");
    Scalar out(0);
    for (unsigned d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        unsigned e = n / d;
        Int dm, em;
        mpz_ui_pow_ui(dm.get_mpz_t(), d, m);
        out += Scalar(Rat(dm)) * c.pow((long)d);
        if (e != d) {
            mpz_ui_pow_ui(em.get_mpz_t(), e, m);
            out += Scalar(Rat(em)) * c.pow((long)e);
        }
    }
    return out;
}

Scalar polylog_neg(unsigned m, const Scalar& x) {
    if (x.is_rational() && x.as_rat() == 1)
        throw std::domain_error("polylog_neg: pole at x = 1");
    PolyQ am = eulerian_poly(m);
    Scalar num(0);
    am.for_each([&](const std::vector<int>& e, const Rat& c) {
        num += Scalar(c) * x.pow(e[0]);
    });
    Scalar one_minus = Scalar(1) - x;
    return x * num * one_minus.pow(-(long)(m + 1));
}

Rat dilcher_A(int j, int r, int t) {
    // A(j,r,t) = sum_{l=t}^j s(j,l)/j! binom(l,t) (1-r)^{l-t}
    Rat out(0);
    Rat jfact(factorial((unsigned)j));
    for (int l = t; l <= j; ++l) {
        Rat term(stirling_first((unsigned)j, (unsigned)l));
        term /= jfact;
        term *= Rat(binom_int(l, t));
        term *= rat_pow(Rat(1 - r), l - t); // (1-r)^0 = 1 even at r = 1
        out += term;
    }
    return out;
}

DilcherCoeffTable dilcher_coeffs(int max_j, int max_r) {
    if (max_j < 1 || max_r < 1)
        throw std::invalid_argument("dilcher_coeffs: bounds must be >= 1");
    DilcherCoeffTable tab;
    tab.max_j = max_j;
    tab.max_r = max_r;
    for (int r = 1; r <= max_r; ++r) {
        for (int j = 1; j <= max_j; ++j)
            for (int t = 0; t <= j; ++t)
                tab.a_table[{j, r, t}] = dilcher_A(j, r, t);
        for (int k = 1; k <= max_j; ++k) {
            // C(k,r,t) = sum_{j=0}^{k-t} binom(k-1, j+t-1) A(j+t, r, t), t >= 1
            for (int t = 1; t <= k; ++t) {
                Rat c(0);
                for (int j = 0; j <= k - t; ++j)
                    c += Rat(binom_int(k - 1, j + t - 1)) * dilcher_A(j + t, r, t);
                tab.c_table[{k, r, t}] = c;
            }
            // C(k,r,0) = sum_{j=1}^{k} binom(k-1, j-1) A(j, r, 0)
            Rat c0(0);
            for (int j = 1; j <= k; ++j)
                c0 += Rat(binom_int(k - 1, j - 1)) * dilcher_A(j, r, 0);
            tab.c_table[{k, r, 0}] = c0;
        }
    }
    return tab;
}

Rat DilcherCoeffTable::A(int j, int r, int t) const {
    if (t > j) return Rat(0); // empty defining sum
    auto it = a_table.find({j, r, t});
    if (it == a_table.end()) throw std::out_of_range("A(j,r,t) not tabulated");
    return it->second;
}

Rat DilcherCoeffTable::C(int k, int r, int t) const {
    if (t > k) return Rat(0);
    auto it = c_table.find({k, r, t});
    if (it == c_table.end()) throw std::out_of_range("C(k,r,t) not tabulated");
    return it->second;
}

Rat q_coef(unsigned h, unsigned r) {
    if (h >= r) throw std::domain_error("q_coef: requires h <= r-1");
    Rat out(0);
    for (unsigned j = 0; j + h + 1 <= r; ++j) {
        Rat term(stirling_first(r - j - 1, h));
        term *= Rat(binom_int((long)r - 1, (long)j));
        term /= Rat(factorial(r - j - 1));
        out += term;
    }
    if ((r + h - 1) % 2) out = -out;
    return out;
}

PolyQ n_poly(unsigned i) {
    if (i < 1) throw std::invalid_argument("n_poly: i >= 1");
    PolyQ n = PolyQ::variable((int)i, 0); // N_1 = x_1
    for (unsigned step = 1; step < i; ++step) {
        // N_{s+1} = x_1 N_s + D(N_s), D x_r = r x_{r+1}
        PolyQ next = PolyQ::variable((int)i, 0) * n;
        n.for_each([&](const std::vector<int>& e, const Rat& c) {
            for (unsigned r = 0; r < i; ++r) {
                if (!e[r]) continue;
                std::vector<int> de = e;
                de[r] -= 1;
                de[r + 1] += 1; // degree of N_s is s < i, so r+1 < i is safe
                next.add_term(de, c * Rat((long)e[r]) * Rat((long)(r + 1)));
            }
        });
        n = next;
    }
    return n;
}

PolyQ p_poly(unsigned k) {
    if (k < 1) throw std::invalid_argument("p_poly: k >= 1");
    // L_rho = sum_{h=0}^{rho-1} Q_{h,rho} x_h as a polynomial in x_0..x_{k-1}
    std::vector<PolyQ> L;
    for (unsigned rho = 1; rho <= k; ++rho) {
        PolyQ l((int)k);
        for (unsigned h = 0; h < rho; ++h) {
            std::vector<int> e(k, 0);
            e[h] = 1;
            l.add_term(e, q_coef(h, rho));
        }
        L.push_back(l);
    }
    PolyQ out((int)k);
    for (unsigned r = 1; r <= k; ++r) {
        PolyQ n = n_poly(r);
        std::vector<PolyQ> args(L.begin(), L.begin() + r);
        PolyQ nr = n.compose(args);
        Rat c(binom_int((long)k - 1, (long)(k - r)));
        c /= Rat(factorial(r));
        out = out + nr.scaled(c);
    }
    return out;
}

std::vector<Rat> limit_coeffs(const std::vector<Rat>& f_coeffs) {
    if (f_coeffs.empty())
        throw std::invalid_argument("limit_coeffs: empty coefficient list");
    bool any = false;
    for (const auto& c : f_coeffs) any = any || c != 0;
    if (!any) throw std::invalid_argument("limit_coeffs: zero polynomial");

    const size_t K = f_coeffs.size() - 1;
    std::vector<Rat> h(K + 3, Rat(0)); // h[1..K+2]
    h[1] = f_coeffs[0];
    for (size_t j = 2; j <= K + 2; ++j) {
        Rat acc(0);
        for (size_t i = j - 1; i <= K; ++i) {
            Rat inner(0);
            for (size_t k = i; k <= K; ++k)
                inner += f_coeffs[k] * Rat(stirling_second((unsigned)k, (unsigned)i));
            if (inner == 0) continue;
            Rat term = Rat(binom_int((long)i - 1, (long)j - 2)) *
                       Rat(factorial((unsigned)i)) * inner;
            if ((i - j + 1) % 2) acc -= term;
            else acc += term;
        }
        h[j] = acc;
    }
    return std::vector<Rat>(h.begin() + 1, h.end()); // h_1..h_{K+2}
}

std::vector<Rat> limit_dm(const std::vector<Rat>& f_coeffs) {
    const size_t K = f_coeffs.empty() ? 0 : f_coeffs.size() - 1;
    std::vector<Rat> d(K + 1, Rat(0));
    d[0] = f_coeffs.empty() ? Rat(0) : f_coeffs[0];
    for (size_t m = 1; m <= K; ++m) {
        Rat acc(0);
        for (size_t k = m; k <= K; ++k)
            acc += f_coeffs[k] * Rat(stirling_second((unsigned)k, (unsigned)m));
        d[m] = acc * Rat(factorial((unsigned)m));
    }
    return d;
}

Rat limit_emj(unsigned m, unsigned j) {
    Rat e(binom_int((long)m - 1, (long)j));
    return j % 2 ? Rat(-e) : e;
}

} // namespace qseries
