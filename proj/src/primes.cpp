#include "palindist/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "palindist/bignum.hpp"
#include "palindist/counting.hpp"
#include "palindist/digits.hpp"
#include "palindist/errors.hpp"

namespace palindist {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool fits_u64(const mpz_class& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 && mpz_sgn(n.get_mpz_t()) >= 0;
}

std::uint64_t to_u64(const mpz_class& n) {
    return static_cast<std::uint64_t>(mpz_get_ui(n.get_mpz_t()));
}

// logloglog x / loglog x; NaN when the iterated logs are undefined.
double envelope_of(const mpz_class& x) {
    const double lx = log_mpz(x);
    if (lx <= 1.0) return kNan;
    const double llx = std::log(lx);
    if (llx <= 0.0) return kNan;
    return std::log(llx) / llx;
}

} // namespace

bool primality_is_deterministic(const mpz_class& n) { return fits_u64(n); }

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

CensusReport census(int base, const mpz_class& x) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    CensusReport rep;
    rep.base = base;
    rep.x = x;
    rep.palindrome_count = count_up_to(base, x);
    if (rep.palindrome_count > 100000000)
        throw resource_error("census cap (10^8 palindromes) exceeded at x = " + x.get_str() +
                             "; choose a smaller x");
    rep.prime_palindrome_count = 0;
    PalindromeStream stream(base, 1, x);
    int current_length = 0;
    while (auto n = stream.next()) {
        const int len = digit_length(*n, base);
        if (len != current_length) {
            rep.per_length.push_back({len, 0, 0});
            current_length = len;
        }
        rep.per_length.back().palindromes += 1;
        if (!primality_is_deterministic(*n)) rep.probabilistic = true;
        if (is_prime(*n)) {
            rep.per_length.back().primes += 1;
            rep.prime_palindrome_count += 1;
        }
    }
    rep.density = rep.palindrome_count == 0
                      ? 0.0
                      : mpz_get_d(rep.prime_palindrome_count.get_mpz_t()) /
                            mpz_get_d(rep.palindrome_count.get_mpz_t());
    rep.envelope = envelope_of(x);
    return rep;
}

SieveParams default_sieve_params(const mpz_class& x) {
    const double lx = log_mpz(x);
    const double llx = lx > 0 ? std::log(lx) : -1.0;
    const double lllx = llx > 0 ? std::log(llx) : -1.0;
    if (llx <= 1.0 || lllx <= 0.0)
        throw precondition_error("logloglog x > 0 fails; need x >= 70");
    const int h = static_cast<int>(std::floor(std::exp(1.0) * lllx));
    if (h < 1)
        throw precondition_error("h = floor(e*logloglog x) < 1; need x >= 70");
    SieveParams p;
    p.h = h;
    p.y = std::exp(-1.0) * std::pow(lx, 1.0 / (4.0 * h));
    return p;
}

SieveEvaluation brun_truncated_bound(int base, const mpz_class& x, double y, int h,
                                     const std::vector<std::uint64_t>* prime_override) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (y < 0) throw std::invalid_argument("y must be >= 0");
    if (h < 1) throw std::invalid_argument("h must be >= 1");

    SieveEvaluation ev;
    ev.base = base;
    ev.x = x;
    ev.y = y;
    ev.h = h;
    if (prime_override) {
        for (std::uint64_t p : *prime_override)
            if (static_cast<double>(p) > y)
                throw std::invalid_argument("override prime " + std::to_string(p) +
                                            " exceeds y; the +y term must cover it");
        ev.Q = Modulus::of_primes(*prime_override);
    } else {
        ev.Q = sieve_modulus_product(base, y);
    }

    const auto& primes = ev.Q.factors;
    const int m = static_cast<int>(primes.size());
    const int max_omega = 2 * h;

    // Count the qualifying divisors before materializing them.
    double qualifying = 0.0, level = 1.0;
    for (int i = 0; i <= std::min(m, max_omega); ++i) {
        qualifying += level;
        level = level * (m - i) / (i + 1);
    }
    if (qualifying > 1e6)
        throw resource_error("more than 10^6 qualifying divisors of Q; lower y or h");

    // Depth-first over subsets of the prime set, at most max_omega elements,
    // extending each subset only with primes of larger index.
    std::vector<SieveTerm> terms;
    struct Item {
        mpz_class q;
        int omega;
        int next_index;
    };
    std::vector<Item> work;
    work.push_back({1, 0, 0});
    while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        terms.push_back({it.q, it.omega % 2 == 0 ? 1 : -1, it.omega, 0});
        if (it.omega == max_omega) continue;
        for (int i = it.next_index; i < m; ++i)
            work.push_back({it.q * static_cast<unsigned long>(primes[i].first),
                            it.omega + 1, i + 1});
    }
    std::sort(terms.begin(), terms.end(),
              [](const SieveTerm& a, const SieveTerm& b) { return a.q < b.q; });

    ev.truncated_sum = 0;
    for (auto& term : terms) {
        if (term.q == 1) {
            term.a_q = count_up_to(base, x);
        } else if (term.q > x) {
            term.a_q = 0; // no positive multiple of q is <= x
        } else {
            if (!term.q.fits_slong_p() || term.q > 50000000)
                throw resource_error("divisor " + term.q.get_str() +
                                     " too large for the counting DP; lower y or h");
            const ResidueCountTable t =
                class_counts_up_to(base, x, term.q.get_si());
            term.a_q = t.counts[0];
        }
        ev.truncated_sum += term.mu * term.a_q;
    }
    ev.terms = std::move(terms);
    ev.upper_bound = y + mpz_get_d(ev.truncated_sum.get_mpz_t());
    return ev;
}

bool sieve_bounds_count(const SieveEvaluation& ev, const mpz_class& prime_count) {
    // prime_count - truncated_sum <= y, exactly.
    mpz_class lhs = prime_count - ev.truncated_sum;
    return mpz_cmp_d(lhs.get_mpz_t(), ev.y) <= 0;
}

DensityTable density_series(int base, const std::vector<mpz_class>& xs) {
    DensityTable table;
    table.nonincreasing = true;
    table.strictly_decreasing = true;
    for (const mpz_class& x : xs) {
        const CensusReport rep = census(base, x);
        DensityRow row;
        row.x = x;
        row.palindromes = rep.palindrome_count;
        row.primes = rep.prime_palindrome_count;
        row.density = rep.density;
        row.envelope = rep.envelope;
        row.density_envelope_ratio =
            std::isnan(rep.envelope) ? kNan : rep.density / rep.envelope;
        row.density_log_x = rep.density * log_mpz(x);
        if (!table.rows.empty()) {
            if (row.density > table.rows.back().density) table.nonincreasing = false;
            if (row.density >= table.rows.back().density) table.strictly_decreasing = false;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace palindist
