#ifndef QSERIES_SCALAR_HPP
#define QSERIES_SCALAR_HPP

#include <string>
#include <variant>

#include "qseries/cyclotomic.hpp"
#include "qseries/rational.hpp"

namespace qseries {

/* Exact field scalar: either a rational or an element of Q(zeta_N).
 *
 * A cyclotomic value whose only nonzero coordinate is the constant one is
 * demoted to the rational variant on construction, so values equal to a
 * rational always compare equal to it regardless of how they were made.
 * Arithmetic between cyclotomic values of different orders throws. */
class Scalar {
public:
    Scalar() : v_(Rat(0)) {}
    Scalar(long n) : v_(Rat(n)) {}
    Scalar(const Rat& r) : v_(r) {}
    Scalar(const Cyclotomic& c) { assign_cyclo(c); }

    static Scalar zeta(int order, long power = 1) {
        return Scalar(cyclo_zeta(order, power));
    }

    bool is_rational() const { return std::holds_alternative<Rat>(v_); }
    bool is_zero() const;
    bool is_one() const;
    int sign() const; // rational only

    /* Throws for a genuinely irrational cyclotomic value. */
    const Rat& as_rat() const;
    const Cyclotomic& as_cyclo() const { return std::get<Cyclotomic>(v_); }
    double to_double() const { return as_rat().get_d(); }

    Scalar operator-() const;
    Scalar inv() const;
    Scalar pow(long e) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar& operator+=(const Scalar& b) { *this = *this + b; return *this; }
    Scalar& operator-=(const Scalar& b) { *this = *this - b; return *this; }
    Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }

    std::string str() const;

private:
    void assign_cyclo(const Cyclotomic& c);
    std::variant<Rat, Cyclotomic> v_;
};

} // namespace qseries

#endif
