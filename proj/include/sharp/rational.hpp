// Exact arbitrary-precision rational and integer arithmetic.
// All coefficient arithmetic in this project is exact; nothing is ever
// rounded, so GMP's canonical mpq (lowest terms, positive denominator)
// is exactly the invariant we need.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sharp {

using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize on construction; this does.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer pow2(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Nonnegative residue of a (possibly negative) integer mod m.
inline std::uint64_t mod_u64(const Integer& z, std::uint64_t m) {
    return mpz_fdiv_ui(z.get_mpz_t(), m);
}

}  // namespace sharp
