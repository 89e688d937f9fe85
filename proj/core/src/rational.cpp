#include "qseries/rational.hpp"

namespace qseries {

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(text);
            return Rat(n);
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        return rat(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_pow(const Rat& r, long e) {
    if (e == 0) return Rat(1);
    bool invert = e < 0;
    unsigned long k = invert ? -(unsigned long)e : (unsigned long)e;
    if (invert && r == 0) throw std::domain_error("0 to a negative power");
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), r.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), r.get_den_mpz_t(), k);
    // num/den stay coprime under powering, but the sign may sit in the
    // denominator after an inversion
    if (invert) {
        Rat flipped(out.get_den(), out.get_num());
        flipped.canonicalize();
        return flipped;
    }
    return out;
}

Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Int binom_int(long n, long k) {
    if (k < 0 || k > n || n < 0) return Int(0);
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return b;
}

} // namespace qseries
