#include "qseries/scalar.hpp"

namespace qseries {

void Scalar::assign_cyclo(const Cyclotomic& c) {
    if (cyclo_is_rational(c))
        v_ = c.coef.empty() ? Rat(0) : c.coef[0];
    else
        v_ = c;
}

bool Scalar::is_zero() const {
    return is_rational() && std::get<Rat>(v_) == 0;
}

bool Scalar::is_one() const {
    return is_rational() && std::get<Rat>(v_) == 1;
}

int Scalar::sign() const { return sgn(as_rat()); }

const Rat& Scalar::as_rat() const {
    if (!is_rational())
        throw std::domain_error("scalar is not rational-valued");
    return std::get<Rat>(v_);
}

namespace {

/* Applies f either in Q or, after embedding, in a common Q(zeta_N). */
template <class RatOp, class CycOp>
auto lift(const Scalar& a, const Scalar& b, RatOp fr, CycOp fc) {
    if (a.is_rational() && b.is_rational()) return Scalar(fr(a.as_rat(), b.as_rat()));
    if (a.is_rational())
        return Scalar(fc(cyclo_from_rat(b.as_cyclo().order, a.as_rat()), b.as_cyclo()));
    if (b.is_rational())
        return Scalar(fc(a.as_cyclo(), cyclo_from_rat(a.as_cyclo().order, b.as_rat())));
    return Scalar(fc(a.as_cyclo(), b.as_cyclo()));
}

} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    return lift(a, b, [](const Rat& x, const Rat& y) { return Rat(x + y); }, cyclo_add);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return lift(a, b, [](const Rat& x, const Rat& y) { return Rat(x - y); }, cyclo_sub);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    return lift(a, b, [](const Rat& x, const Rat& y) { return Rat(x * y); }, cyclo_mul);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

Scalar Scalar::operator-() const {
    if (is_rational()) return Scalar(Rat(-std::get<Rat>(v_)));
    return Scalar(cyclo_neg(std::get<Cyclotomic>(v_)));
}

Scalar Scalar::inv() const {
    if (is_rational()) {
        const Rat& r = std::get<Rat>(v_);
        if (r == 0) throw std::domain_error("division by zero");
        Rat f(r.get_den(), r.get_num());
        f.canonicalize();
        return Scalar(f);
    }
    return Scalar(cyclo_inv(std::get<Cyclotomic>(v_)));
}

Scalar Scalar::pow(long e) const {
    if (is_rational()) return Scalar(rat_pow(std::get<Rat>(v_), e));
    Scalar base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    Scalar out(1);
    while (k) {
        if (k & 1) out = out * base;
        base = base * base;
        k >>= 1;
    }
    return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_rational() != b.is_rational()) return false; // demotion keeps this exact
    if (a.is_rational()) return a.as_rat() == b.as_rat();
    return cyclo_eq(a.as_cyclo(), b.as_cyclo());
}

std::string Scalar::str() const {
    if (is_rational()) return rat_str(as_rat());
    const Cyclotomic& c = as_cyclo();
    std::string out = "(";
    bool first = true;
    for (size_t i = 0; i < c.coef.size(); ++i) {
        if (c.coef[i] == 0) continue;
        if (!first) out += " + ";
        out += rat_str(c.coef[i]);
        if (i > 0) out += "*z" + std::to_string(c.order) + "^" + std::to_string(i);
        first = false;
    }
    out += ")";
    return out;
}

} // namespace qseries
