#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace palindist {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin over the fixed witness set {2,3,...,37}.
bool is_prime_u64(std::uint64_t n);

// Primes <= limit by a segmented sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Prime factorization, (prime, exponent) with primes increasing.  Trial
// division over a small prime table, Pollard rho (Brent) for the rest.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// A modulus together with its factorization; value kept arbitrary precision
// so squarefree prime products (see sieve_modulus_product) fit.
struct Modulus {
    mpz_class value;
    std::vector<std::pair<std::uint64_t, int>> factors;

    static Modulus of(std::uint64_t q);
    static Modulus of_primes(const std::vector<std::uint64_t>& primes);
};

struct ArithmeticFunctions {
    std::uint64_t d;   // divisor count
    std::uint64_t phi; // Euler totient
    int mu;            // Moebius, in {-1, 0, 1}
    int omega;         // distinct prime divisors
};

ArithmeticFunctions arithmetic_functions(std::uint64_t q);
std::uint64_t divisor_count(std::uint64_t q);
std::uint64_t euler_phi(std::uint64_t q);

// Least t >= 1 with g^t = 1 (mod q); requires gcd(g, q) = 1.  Computed by
// descending from phi(q) through its prime factors.
std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t q);

// c^(-1) mod q in [1, q); requires gcd(c, q) = 1.
std::uint64_t mod_inverse(std::uint64_t c, std::uint64_t q);

// Squarefree product Q(y) of the primes g^3 < p <= y (empty product = 1).
Modulus sieve_modulus_product(int base, double y);

// prod_{g^3 < p <= y} (1 - 1/p) in double precision.
double mertens_product(int base, double y);

} // namespace palindist
