#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "palindist/report.hpp"

namespace palindist {

// Exact per-residue-class palindrome counts, either over P_L (exact length)
// or over P(x) (cumulative).
struct ResidueCountTable {
    int base = 10;
    bool cumulative = false;
    int length = 0; // when !cumulative
    mpz_class x;    // when cumulative
    std::int64_t q = 2;
    std::vector<mpz_class> counts; // indexed by residue
    mpz_class total;
    // max_a |counts[a] - total/q| as a rational with denominator q.
    mpz_class max_discrepancy_num;

    double max_discrepancy() const;
    // log(max_a |counts[a] - total/q|); -inf when exactly uniform.
    double discrepancy_log() const;
};

// Digit DP over half-prefix positions with symmetric-pair weights
// w_k = (g^k + g^(L-1-k)) mod q; O(ceil(L/2) * g * q) additions.
ResidueCountTable class_counts_exact_length(int base, int length, std::int64_t q);

// Sum of full-length tables below the top length, plus a tight-prefix DP at
// the top length with an explicit boundary comparison against x.
ResidueCountTable class_counts_up_to(int base, const mpz_class& x, std::int64_t q);

// max_a |N_a - |P_L|/p| < (|P_L|/p) * 0.99^L for prime p > g with
// ord_p(g) >= 3*sqrt(p) and L >= 10p - 5.
BoundReport check_prop41(int base, std::uint64_t p, int length);

// max_a |N_a - |P_L|/q| < (|P_L|/q) * exp(-L/(2q^2)) for gcd(q, g(g^2-1)) = 1
// and L >= 10 + 2q^2 ln q.
BoundReport check_prop42(int base, std::uint64_t q, int length);

// Per-length normalized discrepancy series together with the smallest A >= 1
// that makes  disc_L <= |P_L| * A * xi^L  hold on every measured length,
// using the branch's theoretical xi (0.99 for the prime branch, exp(-1/(2q^2))
// for the coprime branch).
struct DecayFit {
    int base = 2;
    std::int64_t q = 2;
    BoundId branch = BoundId::prop41; // hypothesis shape used for xi
    double xi = 0.0;
    double A = 1.0;
    std::vector<std::pair<int, double>> series; // (L, disc_L / |P_L|)
    // max over measured L of D(g^L-1) / (|P(g^L-1)| * A * xi^(log x/(2 log g)))
    double cumulative_constant = 0.0;
    double xi_measured = 0.0; // exp(slope) of the log-ratio regression
    bool xi_measured_below_floor = false; // measured xi < sqrt(2/3)
};

DecayFit fit_decay(int base, std::int64_t q, int l_min, int l_max);

// Cumulative max-discrepancy D(x) at each x, with the empirical constant
// D(x) / (|P(x)| * xi^(log x/(2 log g))).  The constants in the cumulative
// bounds are existential, so the check only asserts the sequence does not
// grow by more than bound_factor over the list.
struct CumulativeDecayRow {
    mpz_class x;
    mpz_class total;
    mpz_class disc_num; // discrepancy numerator, denominator q
    double empirical_constant;
};

struct CumulativeDecayReport {
    int base = 2;
    std::int64_t q = 2;
    BoundId branch = BoundId::cor46;
    double xi = 0.0;
    double bound_factor = 10.0;
    std::vector<CumulativeDecayRow> rows;
    bool bounded = false;
    BoundReport summary;
};

CumulativeDecayReport check_cumulative_decay(int base, std::int64_t q,
                                             const std::vector<mpz_class>& xs,
                                             double bound_factor = 10.0);

} // namespace palindist
