#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "palindist/modular.hpp"

namespace palindist {

// Deterministic below 2^64 (fixed-witness Miller-Rabin); probabilistic
// above (GMP's BPSW-based test).  Callers can tell the cases apart with
// primality_is_deterministic.
bool is_prime(const mpz_class& n);
bool primality_is_deterministic(const mpz_class& n);

struct LengthCensus {
    int length;
    mpz_class palindromes;
    mpz_class primes;
};

struct CensusReport {
    int base = 10;
    mpz_class x;
    mpz_class palindrome_count;
    mpz_class prime_palindrome_count;
    std::vector<LengthCensus> per_length;
    double density = 0.0;        // prime_count / palindrome_count
    double envelope = 0.0; // logloglog(x) / loglog(x); NaN when undefined
    bool probabilistic = false;  // some tested value exceeded 2^64
};

// Exact prime-palindrome census over P(x), enumerated palindrome by
// palindrome; capped at 10^8 palindromes.
CensusReport census(int base, const mpz_class& x);

struct SieveParams {
    double y;
    int h;
};

// h = floor(e * logloglog x), y = e^-1 * (log x)^(1/4h); requires x large
// enough that h >= 1 (x >= 70).
SieveParams default_sieve_params(const mpz_class& x);

struct SieveTerm {
    mpz_class q; // squarefree divisor of Q
    int mu;      // (-1)^omega
    int omega;
    mpz_class a_q; // #{n in P(x) : n = 0 mod q}
};

struct SieveEvaluation {
    int base = 2;
    mpz_class x;
    double y = 0.0;
    int h = 1;
    Modulus Q;
    std::vector<SieveTerm> terms; // ordered by q
    mpz_class truncated_sum;      // sum of mu(q) * A_q over omega(q) <= 2h
    double upper_bound = 0.0;     // y + truncated_sum
};

// Truncated inclusion-exclusion over the squarefree divisors of Q(y) with at
// most 2h prime factors; each A_q comes from the exact counting DP.  At even
// truncation depth the result upper-bounds the prime-palindrome count.
// An explicit prime set (each prime, <= y) may replace the default
// g^3 < p <= y set for small test instances.
SieveEvaluation brun_truncated_bound(int base, const mpz_class& x, double y, int h,
                                     const std::vector<std::uint64_t>* prime_override = nullptr);

// prime_count <= y + truncated_sum, compared exactly.
bool sieve_bounds_count(const SieveEvaluation& ev, const mpz_class& prime_count);

struct DensityRow {
    mpz_class x;
    mpz_class palindromes;
    mpz_class primes;
    double density;
    double envelope;         // logloglog x / loglog x
    double density_envelope_ratio;
    double density_log_x;    // exploratory: density * log x
};

struct DensityTable {
    std::vector<DensityRow> rows;
    bool nonincreasing = false;
    bool strictly_decreasing = false;
};

DensityTable density_series(int base, const std::vector<mpz_class>& xs);

} // namespace palindist
