#include "palindist/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "palindist/errors.hpp"

namespace palindist {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;

    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    std::vector<char> small(root + 1, 1);
    for (std::uint64_t i = 2; i * i <= root; ++i)
        if (small[i])
            for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
    std::vector<std::uint64_t> base_primes;
    for (std::uint64_t i = 2; i <= root; ++i)
        if (small[i]) base_primes.push_back(i);

    const std::uint64_t segment = 1 << 18;
    std::vector<char> sieve(segment);
    for (std::uint64_t low = 2; low <= limit; low += segment) {
        const std::uint64_t high = std::min(low + segment - 1, limit);
        std::fill(sieve.begin(), sieve.end(), 1);
        for (std::uint64_t p : base_primes) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
            for (std::uint64_t j = start; j <= high; j += p) sieve[j - low] = 0;
        }
        for (std::uint64_t n = low; n <= high; ++n)
            if (sieve[n - low]) primes.push_back(n);
    }
    return primes;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
    // Brent's cycle variant; n must be odd composite, not a prime power of 2.
    if (n % 2 == 0) return 2;
    std::uint64_t x0 = 2, c = 1;
    while (true) {
        std::uint64_t x = x0, y = x0, d = 1;
        std::uint64_t power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = (mulmod_u64(y, y, n) + c) % n;
            ++lam;
            std::uint64_t diff = y > x ? y - x : x - y;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
        if (c == 0) ++x0; // exceedingly unlikely; reseed
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize requires n >= 1");
    std::vector<std::pair<std::uint64_t, int>> factors;
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) factors.emplace_back(p, e);
    }
    // Wheel over 6k +- 1 up to the trial-division bound.
    for (std::uint64_t p = 7; p <= 1000000 && p * p <= n; p += (p % 6 == 1) ? 4 : 2) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            factors.emplace_back(rest[i], static_cast<int>(j - i));
            i = j;
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

Modulus Modulus::of(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    Modulus m;
    m.value = mpz_class(static_cast<unsigned long>(q));
    m.factors = factorize(q);
    return m;
}

Modulus Modulus::of_primes(const std::vector<std::uint64_t>& primes) {
    Modulus m;
    m.value = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime_u64(primes[i]))
            throw std::invalid_argument("not a prime: " + std::to_string(primes[i]));
        if (i > 0 && primes[i] <= primes[i - 1])
            throw std::invalid_argument("primes must be strictly increasing");
        m.value *= static_cast<unsigned long>(primes[i]);
        m.factors.emplace_back(primes[i], 1);
    }
    return m;
}

ArithmeticFunctions arithmetic_functions(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("q must be >= 1");
    ArithmeticFunctions f{1, 1, 1, 0};
    if (q == 1) return f;
    for (const auto& [p, e] : factorize(q)) {
        f.d *= static_cast<std::uint64_t>(e + 1);
        std::uint64_t pe = 1;
        for (int i = 0; i < e - 1; ++i) pe *= p;
        f.phi *= pe * (p - 1);
        f.mu = (e > 1) ? 0 : -f.mu;
        f.omega += 1;
    }
    return f;
}

std::uint64_t divisor_count(std::uint64_t q) { return arithmetic_functions(q).d; }

std::uint64_t euler_phi(std::uint64_t q) { return arithmetic_functions(q).phi; }

std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (std::gcd(g % q, q) != 1)
        throw undefined_order_error("ord_q(g) undefined: gcd(" + std::to_string(g) +
                                    ", " + std::to_string(q) + ") > 1");
    std::uint64_t t = euler_phi(q);
    for (const auto& [p, e] : factorize(t)) {
        for (int i = 0; i < e; ++i) {
            if (powmod_u64(g, t / p, q) == 1)
                t /= p;
            else
                break;
        }
    }
    return t;
}

std::uint64_t mod_inverse(std::uint64_t c, std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    // Extended gcd on (c mod q, q).
    std::int64_t r0 = static_cast<std::int64_t>(c % q), r1 = static_cast<std::int64_t>(q);
    std::int64_t s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        std::int64_t s2 = s0 - k * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1)
        throw no_inverse_error("no inverse: gcd(" + std::to_string(c) + ", " +
                               std::to_string(q) + ") > 1");
    std::int64_t inv = s0 % static_cast<std::int64_t>(q);
    if (inv < 0) inv += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(inv);
}

namespace {

std::vector<std::uint64_t> sieve_primes(int base, double y) {
    std::vector<std::uint64_t> out;
    if (y < 2) return out;
    const double cube = static_cast<double>(base) * base * base;
    for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(y)))
        if (static_cast<double>(p) > cube) out.push_back(p);
    return out;
}

} // namespace

Modulus sieve_modulus_product(int base, double y) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (y < 0) throw std::invalid_argument("y must be >= 0");
    return Modulus::of_primes(sieve_primes(base, y));
}

double mertens_product(int base, double y) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (y < 0) throw std::invalid_argument("y must be >= 0");
    double product = 1.0;
    for (std::uint64_t p : sieve_primes(base, y))
        product *= 1.0 - 1.0 / static_cast<double>(p);
    return product;
}

} // namespace palindist
