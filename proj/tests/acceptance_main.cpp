// Acceptance suite: runs every stated criterion at its stated tolerance and
// prints one pass/fail line per criterion.  Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "palindist/bignum.hpp"
#include "palindist/counting.hpp"
#include "palindist/digits.hpp"
#include "palindist/expsums.hpp"
#include "palindist/modular.hpp"
#include "palindist/primes.hpp"
#include "oracles.hpp"

using namespace palindist;

namespace {

// Shared enumeration cache: palindrome values per (base, length).
std::map<std::pair<int, int>, std::vector<mpz_class>> g_values;

const std::vector<mpz_class>& enumerated(int base, int length) {
    const auto key = std::make_pair(base, length);
    auto it = g_values.find(key);
    if (it == g_values.end()) {
        it = g_values
                 .emplace(key, palindromes_in_range(base, pow_mpz(base, length - 1),
                                                    pow_mpz(base, length) - 1))
                 .first;
    }
    return it->second;
}

bool criterion1_counting_oracle(std::string& detail) {
    long mismatches = 0;
    for (int g : {2, 3, 10}) {
        for (int length = 1; length <= 12; ++length) {
            const auto& values = enumerated(g, length);
            for (std::int64_t q = 2; q <= 30; ++q) {
                const auto expected = oracle::residue_histogram(values, q);
                const ResidueCountTable table = class_counts_exact_length(g, length, q);
                if (table.counts != expected) ++mismatches;
            }
        }
    }
    detail = "grids g in {2,3,10}, L in [1,12], q in [2,30]; mismatches = " +
             std::to_string(mismatches);
    return mismatches == 0;
}

bool criterion2_expsum_oracle(std::string& detail) {
    double worst = 0.0;
    for (int g : {2, 3, 10}) {
        for (int length = 1; length <= 12; ++length) {
            const auto& values = enumerated(g, length);
            for (std::int64_t q = 2; q <= 30; ++q) {
                const auto hist = oracle::residue_histogram(values, q);
                for (std::int64_t c = 0; c < q; ++c) {
                    const auto brute = oracle::exp_sum_from_histogram(hist, q, c);
                    const auto prod =
                        palindrome_exp_sum_product(g, length, q, c).to_complex();
                    const double rel = std::abs(brute - prod) /
                                       std::max({std::abs(brute), std::abs(prod), 1.0});
                    worst = std::max(worst, rel);
                }
            }
        }
    }
    std::ostringstream os;
    os << "worst relative difference " << std::scientific << std::setprecision(2)
       << worst << " (tolerance 1e-9)";
    detail = os.str();
    return worst <= 1e-9;
}

bool criterion3_lemma21_sweep(std::string& detail) {
    std::uint64_t violations = 0, cases = 0;
    for (int g : {2, 10}) {
        const SweepResult sweep = sweep_lemma21(g, 300, 4);
        violations += sweep.violations;
        cases += sweep.cases_checked;
    }
    detail = std::to_string(cases) + " (q,a,b) cases, violations = " +
             std::to_string(violations);
    return violations == 0;
}

bool criterion4_lemma22_sweep(std::string& detail) {
    const SweepResult sweep = sweep_lemma22(100, 4);
    detail = std::to_string(sweep.cases_checked) +
             " (q,k,h) cases, violations = " + std::to_string(sweep.violations);
    return sweep.violations == 0;
}

bool criterion5_lemma31_instance(std::string& detail) {
    const double theta_expected = 0.5 + std::sqrt(11.0) / 10.0;
    std::uint64_t violations = 0, cases = 0;
    double worst_theta_err = 0.0;
    for (std::int64_t c = 1; c <= 10; ++c) {
        worst_theta_err = std::max(
            worst_theta_err, std::abs(contraction_factor(2, 11, c) - theta_expected));
        for (int length = 1; length <= 400; ++length) {
            const BoundReport r = check_lemma31(2, 11, c, length);
            ++cases;
            if (!r.satisfied) ++violations;
        }
    }
    std::ostringstream os;
    os << cases << " (c,L) cases, violations = " << violations << ", theta = "
       << std::fixed << std::setprecision(4) << theta_expected;
    detail = os.str();
    return violations == 0 && worst_theta_err < 1e-12 &&
           std::abs(theta_expected - 0.8317) < 1e-4;
}

bool criterion6_lemma32_instance(std::string& detail) {
    std::uint64_t violations = 0, cases = 0;
    for (std::int64_t c = 1; c <= 4; ++c) {
        for (int length = 6; length <= 400; ++length) {
            const BoundReport r = check_lemma32(2, 5, c, length);
            ++cases;
            if (!r.satisfied) ++violations;
        }
    }
    detail = std::to_string(cases) + " (c,L) cases, violations = " +
             std::to_string(violations);
    return violations == 0;
}

bool criterion7_prop41(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const BoundReport first = check_prop41(2, 11, 105);
    const double first_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::uint64_t violations = first.satisfied ? 0 : 1;
    for (int length = 106; length <= 160; ++length)
        if (!check_prop41(2, 11, length).satisfied) ++violations;
    std::ostringstream os;
    os << "L = 105..160, violations = " << violations << "; threshold case took "
       << std::fixed << std::setprecision(3) << first_seconds << "s (limit 5s)";
    detail = os.str();
    return violations == 0 && first_seconds < 5.0;
}

bool criterion8_prop42(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool a = check_prop42(2, 5, 91).satisfied;
    const auto t1 = std::chrono::steady_clock::now();
    const bool b = check_prop42(10, 7, 201).satisfied;
    const auto t2 = std::chrono::steady_clock::now();
    const double sa = std::chrono::duration<double>(t1 - t0).count();
    const double sb = std::chrono::duration<double>(t2 - t1).count();
    std::ostringstream os;
    os << "(2,5,91) " << (a ? "ok" : "VIOLATED") << " in " << std::fixed
       << std::setprecision(3) << sa << "s; (10,7,201) " << (b ? "ok" : "VIOLATED")
       << " in " << sb << "s (limit 10s each)";
    detail = os.str();
    return a && b && sa < 10.0 && sb < 10.0;
}

bool criterion9_parseval(std::string& detail) {
    double worst = 0.0;
    for (int g : {2, 10}) {
        for (int length = 1; length <= 10; ++length) {
            for (std::int64_t q = 2; q <= 30; ++q) {
                double lhs = 0.0;
                for (std::int64_t c = 0; c < q; ++c)
                    lhs += std::exp(2.0 * palindrome_exp_sum_product(g, length, q, c).log_mag);
                const ResidueCountTable table = class_counts_exact_length(g, length, q);
                double rhs = 0.0;
                for (const auto& n : table.counts) {
                    const double v = mpz_get_d(n.get_mpz_t());
                    rhs += v * v;
                }
                rhs *= static_cast<double>(q);
                worst = std::max(worst, std::abs(lhs - rhs) / rhs);
            }
        }
    }
    std::ostringstream os;
    os << "worst relative error " << std::scientific << std::setprecision(2) << worst
       << " (tolerance 1e-6)";
    detail = os.str();
    return worst <= 1e-6;
}

bool criterion10_brun(std::string& detail) {
    const mpz_class x = pow_mpz(2, 30);
    const CensusReport rep = census(2, x);
    bool ok = true;
    std::ostringstream os;
    os << "census " << rep.prime_palindrome_count.get_str() << " of "
       << rep.palindrome_count.get_str() << " palindromes";
    for (int h : {1, 2}) {
        const SieveEvaluation ev = brun_truncated_bound(2, x, 29.0, h);
        const bool holds = sieve_bounds_count(ev, rep.prime_palindrome_count);
        os << "; h=" << h << " bound " << ev.truncated_sum.get_str() << "+29 "
           << (holds ? "holds" : "VIOLATED");
        ok = ok && holds;
    }
    detail = os.str();
    return ok;
}

bool criterion11_density_decay(std::string& detail) {
    std::vector<mpz_class> xs = {pow_mpz(10, 4), pow_mpz(10, 6), pow_mpz(10, 8),
                                 pow_mpz(10, 10)};
    const DensityTable table = density_series(10, xs);
    bool ratios_bounded = true;
    const double reference = table.rows.front().density_envelope_ratio;
    for (const auto& row : table.rows)
        if (!(row.density_envelope_ratio <= 10.0 * reference)) ratios_bounded = false;
    std::ostringstream os;
    os << "densities";
    for (const auto& row : table.rows)
        os << " " << std::scientific << std::setprecision(3) << row.density;
    os << (table.strictly_decreasing ? "; strictly decreasing" : "; NOT decreasing");
    os << (ratios_bounded ? "; ratios bounded (10x)" : "; ratios UNBOUNDED");
    detail = os.str();
    return table.strictly_decreasing && ratios_bounded;
}

bool criterion12_counting_identities(std::string& detail) {
    long mismatches = 0;
    for (int g : {2, 3, 10}) {
        for (int length = 1; length <= 60; ++length) {
            const mpz_class formula =
                mpz_class(g - 1) * pow_mpz(g, (length + 1) / 2 - 1);
            if (count_exact_length(g, length) != formula) ++mismatches;
        }
        for (int m = 1; m <= 20; ++m) {
            for (int delta : {0, 1}) {
                const mpz_class x = pow_mpz(g, 2 * m + delta - 1);
                const mpz_class expected =
                    pow_mpz(g, m) + pow_mpz(g, m + delta - 1) - 2;
                if (count_up_to(g, x) != expected) ++mismatches;
            }
        }
    }
    detail = "exact-length formula (L <= 60) and power-of-g cumulative counts "
             "(M <= 20, both parities); mismatches = " +
             std::to_string(mismatches);
    return mismatches == 0;
}

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> fn;
    double limit_seconds; // 0 = no stated limit
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "counting oracle equivalence", criterion1_counting_oracle, 60.0},
        {2, "exponential-sum oracle equivalence", criterion2_expsum_oracle, 60.0},
        {3, "power-pair sum sweep (lemma21)", criterion3_lemma21_sweep, 0.0},
        {4, "geometric digit-sum sweep (lemma22)", criterion4_lemma22_sweep, 0.0},
        {5, "palindrome sum contraction (lemma31)", criterion5_lemma31_instance, 0.0},
        {6, "palindrome sum exp decay (lemma32)", criterion6_lemma32_instance, 0.0},
        {7, "prime-class equidistribution (prop41)", criterion7_prop41, 0.0},
        {8, "coprime-class equidistribution (prop42)", criterion8_prop42, 0.0},
        {9, "parseval link between sums and counts", criterion9_parseval, 0.0},
        {10, "brun truncated bound vs census", criterion10_brun, 30.0},
        {11, "prime-palindrome density decay", criterion11_density_decay, 60.0},
        {12, "counting identities", criterion12_counting_identities, 0.0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (criterion.limit_seconds > 0 && seconds >= criterion.limit_seconds) {
            ok = false;
            detail += " [exceeded " + std::to_string(criterion.limit_seconds) + "s limit]";
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << std::setw(2)
                  << criterion.id << " (" << criterion.name << "): " << detail << " ["
                  << std::fixed << std::setprecision(2) << seconds << "s]\n";
        if (!ok) ++failures;
    }
    if (failures > 0)
        std::cout << failures << " criterion(s) failed\n";
    else
        std::cout << "all 12 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
