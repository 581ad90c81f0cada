#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>

namespace palindist {

// g^e as an arbitrary-precision integer.
inline mpz_class pow_mpz(unsigned long base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

// Natural log of a nonnegative big integer; -inf for zero.
inline double log_mpz(const mpz_class& n) {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

// n mod q as a machine word; result in [0, q) even for negative n.
inline std::uint64_t mod_u64(const mpz_class& n, std::uint64_t q) {
    return mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(q));
}

} // namespace palindist
