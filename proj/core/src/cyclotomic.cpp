#include "qseries/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace qseries {

namespace {

using Poly = std::vector<Rat>; // dense, low to high, no trailing zeros

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/* Remainder of a by monic b. */
Poly poly_rem(Poly a, const Poly& b) {
    poly_trim(a);
    const size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        Rat lead = a.back();
        size_t shift = a.size() - 1 - db;
        for (size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
        poly_trim(a);
    }
    return a;
}

/* Quotient of a by monic b, assuming exact division. */
Poly poly_div_exact(Poly a, const Poly& b) {
    poly_trim(a);
    const size_t db = b.size() - 1;
    if (a.size() < b.size()) return {};
    Poly quot(a.size() - db, Rat(0));
    while (a.size() >= b.size()) {
        Rat lead = a.back();
        size_t shift = a.size() - 1 - db;
        quot[shift] = lead;
        for (size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
        poly_trim(a);
    }
    return quot;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly p(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
    }
    return p;
}

std::map<int, Poly> g_phi_cache;
std::mutex g_phi_mutex;

/* Fills the cache up to n; call with g_phi_mutex held. Works bottom-up so
 * that Phi_d is present before Phi_m needs it. */
const Poly& cached_cyclotomic(int n) {
    auto hit = g_phi_cache.find(n);
    if (hit != g_phi_cache.end()) return hit->second;
    for (int m = 1; m <= n; ++m) {
        if (n % m || g_phi_cache.count(m)) continue;
        // x^m - 1 divided by Phi_d for every proper divisor d
        Poly num(m + 1, Rat(0));
        num[0] = -1;
        num[m] = 1;
        for (int d = 1; d < m; ++d) {
            if (m % d) continue;
            num = poly_div_exact(std::move(num), g_phi_cache.at(d));
        }
        g_phi_cache.emplace(m, std::move(num));
    }
    return g_phi_cache.at(n);
}

} // namespace

unsigned long euler_phi(int n) {
    unsigned long result = (unsigned long)n;
    int m = n;
    for (int p = 2; (long)p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / (unsigned long)p;
    }
    if (m > 1) result -= result / (unsigned long)m;
    return result;
}

const std::vector<Rat>& cyclotomic_polynomial(int n) {
    if (n < 1) throw std::domain_error("cyclotomic order must be >= 1");
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    return cached_cyclotomic(n);
}

Cyclotomic cyclo_from_rat(int order, const Rat& r) {
    Cyclotomic c;
    c.order = order;
    c.coef.assign(euler_phi(order), Rat(0));
    c.coef[0] = r;
    return c;
}

Cyclotomic cyclo_zeta(int order, long power) {
    long p = power % order;
    if (p < 0) p += order;
    Poly raw((size_t)p + 1, Rat(0));
    raw[(size_t)p] = 1;
    Poly reduced = poly_rem(std::move(raw), cyclotomic_polynomial(order));
    Cyclotomic c;
    c.order = order;
    c.coef.assign(euler_phi(order), Rat(0));
    for (size_t i = 0; i < reduced.size(); ++i) c.coef[i] = reduced[i];
    return c;
}

static void require_same_order(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order != b.order)
        throw std::domain_error("cyclotomic orders differ: " +
                                std::to_string(a.order) + " vs " +
                                std::to_string(b.order));
}

Cyclotomic cyclo_add(const Cyclotomic& a, const Cyclotomic& b) {
    require_same_order(a, b);
    Cyclotomic c = a;
    for (size_t i = 0; i < c.coef.size(); ++i) c.coef[i] += b.coef[i];
    return c;
}

Cyclotomic cyclo_sub(const Cyclotomic& a, const Cyclotomic& b) {
    require_same_order(a, b);
    Cyclotomic c = a;
    for (size_t i = 0; i < c.coef.size(); ++i) c.coef[i] -= b.coef[i];
    return c;
}

Cyclotomic cyclo_neg(const Cyclotomic& a) {
    Cyclotomic c = a;
    for (auto& x : c.coef) x = -x;
    return c;
}

Cyclotomic cyclo_mul(const Cyclotomic& a, const Cyclotomic& b) {
    require_same_order(a, b);
    Poly p = poly_mul(Poly(a.coef.begin(), a.coef.end()),
                      Poly(b.coef.begin(), b.coef.end()));
    Poly r = poly_rem(std::move(p), cyclotomic_polynomial(a.order));
    Cyclotomic c;
    c.order = a.order;
    c.coef.assign(euler_phi(a.order), Rat(0));
    for (size_t i = 0; i < r.size(); ++i) c.coef[i] = r[i];
    return c;
}

/* Extended Euclid over Q[x]: find u with u*a == 1 (mod Phi_N). Phi_N is
 * irreducible over Q, so every nonzero residue is invertible. */
Cyclotomic cyclo_inv(const Cyclotomic& a) {
    if (cyclo_is_zero(a)) throw std::domain_error("division by zero");
    Poly r0 = cyclotomic_polynomial(a.order);
    Poly r1(a.coef.begin(), a.coef.end());
    poly_trim(r1);
    Poly s0{}, s1{Rat(1)}; // coefficients of `a` in r0, r1
    while (true) {
        // r0 = q*r1 + r2 with deg r2 < deg r1
        Poly q(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, Rat(0));
        Poly rem = r0;
        Rat inv_lead = 1 / r1.back();
        while (rem.size() >= r1.size()) {
            Rat f = rem.back() * inv_lead;
            size_t shift = rem.size() - r1.size();
            q[shift] += f;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= f * r1[i];
            poly_trim(rem);
        }
        Poly s2 = s0;
        {
            Poly qs1 = poly_mul(q, s1);
            if (s2.size() < qs1.size()) s2.resize(qs1.size(), Rat(0));
            for (size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
            poly_trim(s2);
        }
        if (rem.empty()) {
            // r1 is the gcd, a nonzero constant since Phi_N is irreducible
            Rat scale = 1 / r1[0];
            Cyclotomic c;
            c.order = a.order;
            c.coef.assign(euler_phi(a.order), Rat(0));
            for (size_t i = 0; i < s1.size(); ++i) c.coef[i] = s1[i] * scale;
            return c;
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
}

bool cyclo_is_zero(const Cyclotomic& a) {
    for (const auto& x : a.coef)
        if (x != 0) return false;
    return true;
}

bool cyclo_eq(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order != b.order) return false;
    return a.coef == b.coef;
}

bool cyclo_is_rational(const Cyclotomic& a) {
    for (size_t i = 1; i < a.coef.size(); ++i)
        if (a.coef[i] != 0) return false;
    return true;
}

} // namespace qseries
