#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "palindist/report.hpp"

namespace palindist {

// Complex value in log-polar form: value = exp(log_mag) * exp(i*arg).
// Multiplication adds log magnitudes, so products of a few hundred factors
// whose true magnitude reaches g^(L/2) never overflow.  Exact zero is
// log_mag = -inf.
struct LogComplex {
    double log_mag;
    double arg; // in (-pi, pi]

    static LogComplex zero();
    static LogComplex from(std::complex<double> z);
    std::complex<double> to_complex() const;
    LogComplex& operator*=(const LogComplex& rhs);
    friend LogComplex operator*(LogComplex lhs, const LogComplex& rhs) {
        lhs *= rhs;
        return lhs;
    }
};

// exp(2*pi*i*x/q).
std::complex<double> unit_root(std::int64_t q, std::int64_t x);
std::complex<double> unit_root(std::int64_t q, const mpz_class& x);

// sum_{k=1..ord_q(g)} e_q(a*g^k + b*gbar^k), gbar the inverse of g mod q.
// Requires gcd(g, q) = 1.
std::complex<double> power_pair_sum(std::uint64_t q, std::uint64_t g,
                                    std::int64_t a, std::int64_t b);

// |power_pair_sum| <= d(q) * sqrt(q) * sqrt(gcd(a, b, q)).
BoundReport check_lemma21(std::uint64_t q, std::uint64_t g, std::int64_t a,
                          std::int64_t b);

// s(q, k, h) = |sum_{a<k} e_q(h*a)|, evaluated in closed form.
double geometric_digit_sum(std::int64_t q, std::int64_t k, std::int64_t h);

// s(q, k, h) <= k * exp(-4*gcd(h,q)^2/q^2), for q not dividing h, k >= 2.
BoundReport check_lemma22(std::uint64_t q, std::int64_t k, std::int64_t h);

// S_L(c) = sum over L-digit palindromes n of e_q(c*n), by direct summation.
// Enumeration is capped at 10^7 palindromes.
std::complex<double> palindrome_exp_sum_brute(int base, int length,
                                              std::uint64_t q, std::int64_t c);

// The same sum as an exact product of at most ceil(L/2) per-digit factors
//
//   S_L(c) = [sum_{a=1..g-1} e_q(c*a*w_0)] * prod_k [sum_{a=0..g-1} e_q(c*a*w_k)]
//
// with symmetric-pair weights w_k = g^k + g^(L-1-k) (middle digit weight
// g^((L-1)/2) when L is odd), evaluated in log-polar form.
LogComplex palindrome_exp_sum_product(int base, int length, std::uint64_t q,
                                      std::int64_t c);

// Per-digit contraction factor
//   1/g + (g-1) d(q) sqrt(q) sqrt(gcd(c,q)) / (g ord_q(g));
// below 1 exactly when ord_q(g) > d(q) sqrt(q) sqrt(gcd(c,q)).
double contraction_factor(int base, std::uint64_t q, std::int64_t c);

// |S_L(c)| <= |P_L| * theta^((L - 2*ord_q(g) - 1)/4), for q with every prime
// divisor > g and ord_q(g) > d(q) sqrt(q) sqrt(gcd(c,q)).
BoundReport check_lemma31(int base, std::uint64_t q, std::int64_t c, int length);

// |S_L(c)| <= |P_L| * exp(-(L-5)*gcd(c,q)^2/q^2), for gcd(q, g(g^2-1)) = 1
// and q not dividing c.
BoundReport check_lemma32(int base, std::uint64_t q, std::int64_t c, int length);

// Sweep drivers used by the CLI and the acceptance suite.  Rows are ordered
// by primary parameter and are identical for any thread count.
struct SweepResult {
    std::vector<BoundReport> rows;
    std::uint64_t cases_checked = 0;
    std::uint64_t violations = 0;
};

// One row per q <= q_max with gcd(q, g) = 1, reporting the worst (a, b) pair
// over [0, q)^2.
SweepResult sweep_lemma21(int base, std::uint64_t q_max, int threads = 1);

// One row per q <= q_max, worst case over 2 <= k <= 3q, 1 <= h <= 3q, q not
// dividing h.
SweepResult sweep_lemma22(std::uint64_t q_max, int threads = 1);

// One row per (c, L), c in [1, q) admissible, L in [l_min, l_max].
SweepResult sweep_lemma31(int base, std::uint64_t q, int l_min, int l_max);
SweepResult sweep_lemma32(int base, std::uint64_t q, int l_min, int l_max);

} // namespace palindist
