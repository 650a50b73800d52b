#pragma once

#include <gmpxx.h>

#include "pinv/errors.hpp"

namespace pinv {

// All coefficients are exact.  Int is an arbitrary-precision integer,
// Rat an exact rational kept in lowest terms by construction.
using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// Exact quotient a/b; refuses to round.  Divisibility failures signal a
// broken invariant upstream (e.g. a wedge power not divisible by n!).
inline Int div_exact(const Int& a, const Int& b, const char* what) {
    if (b == 0) throw engine_error(std::string(what) + ": division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0)
        throw engine_error(std::string(what) + ": " + a.get_str() +
                           " not divisible by " + b.get_str());
    return q;
}

// Descending-factorial binomial n(n-1)...(n-d+1)/d!, valid for any
// integer n (negative included) and d >= 0.  Always an integer.
inline Int binomial(const Int& n, unsigned long d) {
    Int num = 1;
    for (unsigned long i = 0; i < d; ++i) num *= n - static_cast<long>(i);
    return div_exact(num, factorial(d), "binomial");
}

// base^e with the convention 0^0 = 1.
inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

} // namespace pinv
