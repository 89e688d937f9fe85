#ifndef QSERIES_RATIONAL_HPP
#define QSERIES_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace qseries {

using Int = mpz_class;
using Rat = mpq_class;

/* Canonicalized rational n/d. mpq_class does not reduce on construction
 * from a pair, so every entry point goes through here. */
inline Rat rat(long n, long d = 1) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& n, const Int& d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/* Parses "p", "-p", "p/q". No floating point; exact paths only. */
Rat parse_rat(const std::string& text);

std::string rat_str(const Rat& r);

/* r^e for integer e; e < 0 requires r != 0. */
Rat rat_pow(const Rat& r, long e);

Int factorial(unsigned long n);

/* Ordinary integer binomial, zero outside 0 <= k <= n. */
Int binom_int(long n, long k);

} // namespace qseries

#endif
