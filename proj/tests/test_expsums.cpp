#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "palindist/bignum.hpp"
#include "palindist/counting.hpp"
#include "palindist/digits.hpp"
#include "palindist/errors.hpp"
#include "palindist/expsums.hpp"
#include "palindist/modular.hpp"
#include "oracles.hpp"

using namespace palindist;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_diff(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}
} // namespace

TEST_CASE("unit_root") {
    CHECK(rel_diff(unit_root(4, 1), {0.0, 1.0}) < 1e-15);
    CHECK(rel_diff(unit_root(2, 1), {-1.0, 0.0}) < 1e-15);
    CHECK(rel_diff(unit_root(17, 0), {1.0, 0.0}) < 1e-15);
    CHECK(rel_diff(unit_root(7, 3), unit_root(7, 3 + 7 * 12)) < 1e-15);
    CHECK(rel_diff(unit_root(7, -4), unit_root(7, 3)) < 1e-15);
    CHECK(rel_diff(unit_root(7, mpz_class("100000000000000000003")),
                   unit_root(7, mpz_class("100000000000000000003") % 7)) < 1e-15);
}

TEST_CASE("LogComplex round-trip and multiplication") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> mag(1e-6, 1e6), angle(-3.1, 3.1);
    for (int i = 0; i < 1000; ++i) {
        const std::complex<double> z = std::polar(mag(rng), angle(rng));
        const std::complex<double> back = LogComplex::from(z).to_complex();
        CHECK(std::abs(z - back) <= 1e-12 * std::abs(z));
    }
    for (int i = 0; i < 1000; ++i) {
        const std::complex<double> a = std::polar(mag(rng), angle(rng));
        const std::complex<double> b = std::polar(mag(rng), angle(rng));
        const LogComplex p = LogComplex::from(a) * LogComplex::from(b);
        CHECK(std::abs(p.to_complex() - a * b) <= 1e-10 * std::abs(a * b));
        CHECK(p.arg <= std::numbers::pi);
        CHECK(p.arg > -std::numbers::pi);
    }
    const LogComplex z = LogComplex::zero();
    CHECK(z.log_mag == -kInf);
    CHECK((z * LogComplex::from({3.0, 4.0})).log_mag == -kInf);
    CHECK(LogComplex::from({0.0, 0.0}).log_mag == -kInf);
}

TEST_CASE("power_pair_sum") {
    // a = b = 0: every term is 1.
    CHECK(rel_diff(power_pair_sum(9, 2, 0, 0),
                   {static_cast<double>(multiplicative_order(2, 9)), 0.0}) < 1e-12);
    // 10 is a primitive root mod 7, so the sum over one period of e_7(10^k)
    // hits every nonzero residue once: total -1.
    CHECK(rel_diff(power_pair_sum(7, 10, 1, 0), {-1.0, 0.0}) < 1e-12);
    // Four-term direct check for q=5, g=2: 2^k cycles 2,4,3,1 and the
    // inverse cycles 3,4,2,1, so the arguments are 2+3, 4+4, 3+2, 1+1.
    std::complex<double> expected = unit_root(5, 0) + unit_root(5, 3) +
                                    unit_root(5, 0) + unit_root(5, 2);
    CHECK(rel_diff(power_pair_sum(5, 2, 1, 1), expected) < 1e-12);
    CHECK(std::abs(power_pair_sum(5, 2, 1, 1)) <= 2.0 * std::sqrt(5.0));
    CHECK_THROWS_AS(power_pair_sum(10, 2, 1, 1), undefined_order_error);
}

TEST_CASE("check_lemma21 examples") {
    const BoundReport a = check_lemma21(5, 2, 0, 0);
    CHECK(std::exp(a.lhs_log) == doctest::Approx(4.0));
    CHECK(std::exp(a.rhs_log) == doctest::Approx(10.0));
    CHECK(a.satisfied);

    const BoundReport b = check_lemma21(7, 10, 1, 0);
    CHECK(std::exp(b.lhs_log) == doctest::Approx(1.0));
    CHECK(std::exp(b.rhs_log) == doctest::Approx(2.0 * std::sqrt(7.0)));
    CHECK(b.satisfied);

    CHECK(check_lemma21(11, 2, 3, 5).satisfied);
    CHECK(check_lemma21(11, 2, -3, 16).satisfied); // arbitrary integers reduce mod q
}

TEST_CASE("small lemma21 sweep has no violations") {
    for (int g : {2, 10}) {
        const SweepResult sweep = sweep_lemma21(g, 60, 1);
        CHECK(sweep.violations == 0);
        std::uint64_t expected_cases = 0;
        for (std::uint64_t q = 2; q <= 60; ++q)
            if (std::gcd(q, static_cast<std::uint64_t>(g)) == 1) expected_cases += q * q;
        CHECK(sweep.cases_checked == expected_cases);
        for (const auto& row : sweep.rows) CHECK(row.satisfied);
    }
    // Thread count must not change the result.
    const SweepResult s1 = sweep_lemma21(2, 40, 1);
    const SweepResult s4 = sweep_lemma21(2, 40, 4);
    REQUIRE(s1.rows.size() == s4.rows.size());
    for (std::size_t i = 0; i < s1.rows.size(); ++i) {
        CHECK(s1.rows[i].lhs_log == s4.rows[i].lhs_log);
        CHECK(s1.rows[i].params.at("worst_a") == s4.rows[i].params.at("worst_a"));
    }
}

TEST_CASE("geometric_digit_sum") {
    CHECK(geometric_digit_sum(2, 2, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(geometric_digit_sum(9, 5, 0) == 5.0);
    CHECK(geometric_digit_sum(9, 5, 18) == 5.0); // h = 0 mod q
    CHECK(geometric_digit_sum(4, 2, 2) == doctest::Approx(0.0).epsilon(1e-12));

    // Closed form against direct summation.
    for (std::int64_t q = 2; q <= 30; ++q)
        for (std::int64_t k = 0; k <= 3 * q; ++k)
            for (std::int64_t h = 0; h <= 3 * q; ++h)
                CHECK(geometric_digit_sum(q, k, h) ==
                      doctest::Approx(oracle::geometric_sum_direct(q, k, h)).epsilon(1e-9));

    // Reduction property s(q,k,h) = s(q/d,k,h/d), d = gcd(h,q).
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 200);
        const std::int64_t k = static_cast<std::int64_t>(rng() % 400);
        const std::int64_t h = 1 + static_cast<std::int64_t>(rng() % 500);
        const std::int64_t d = std::gcd(h, q);
        if (q / d < 2) continue;
        CHECK(geometric_digit_sum(q, k, h) ==
              doctest::Approx(geometric_digit_sum(q / d, k, h / d)).epsilon(1e-9));
    }
}

TEST_CASE("check_lemma22") {
    const BoundReport a = check_lemma22(2, 2, 1);
    CHECK(a.lhs_log == -kInf);
    CHECK(a.satisfied);

    const BoundReport b = check_lemma22(3, 5, 1);
    CHECK(std::exp(b.lhs_log) == doctest::Approx(1.0));
    CHECK(std::exp(b.rhs_log) == doctest::Approx(5.0 * std::exp(-4.0 / 9.0)));
    CHECK(b.satisfied);

    CHECK(check_lemma22(10, 10, 5).satisfied);
    CHECK_THROWS_AS(check_lemma22(10, 10, 20), precondition_error);
    CHECK_THROWS_AS(check_lemma22(10, 1, 3), std::invalid_argument);
}

TEST_CASE("small lemma22 sweep has no violations") {
    const SweepResult sweep = sweep_lemma22(40, 1);
    CHECK(sweep.violations == 0);
    for (const auto& row : sweep.rows) CHECK(row.satisfied);
}

TEST_CASE("palindrome_exp_sum_brute") {
    CHECK(rel_diff(palindrome_exp_sum_brute(10, 3, 9, 0), {90.0, 0.0}) < 1e-12);
    // Every 2-digit decimal palindrome is a multiple of 11.
    CHECK(rel_diff(palindrome_exp_sum_brute(10, 2, 11, 1), {9.0, 0.0}) < 1e-12);
    // P_3 in base 2 is {5, 7}; e_3(2) + e_3(1) = -1.
    CHECK(rel_diff(palindrome_exp_sum_brute(2, 3, 3, 1), {-1.0, 0.0}) < 1e-12);
    CHECK_THROWS_AS(palindrome_exp_sum_brute(10, 16, 7, 1), resource_error);
}

TEST_CASE("product form matches brute force") {
    for (int g : {2, 3, 10}) {
        for (int length = 1; length <= 8; ++length) {
            for (std::uint64_t q : {2, 3, 7, 12, 25, 49}) {
                for (std::int64_t c = 0; c < static_cast<std::int64_t>(q); ++c) {
                    const auto brute = palindrome_exp_sum_brute(g, length, q, c);
                    const auto prod = palindrome_exp_sum_product(g, length, q, c);
                    CHECK(rel_diff(brute, prod.to_complex()) < 1e-9);
                }
            }
        }
    }
    // c = 0 gives |P_L| exactly.
    const LogComplex full = palindrome_exp_sum_product(10, 9, 7, 0);
    CHECK(full.log_mag == doctest::Approx(log_mpz(count_exact_length(10, 9))));
    CHECK(full.arg == doctest::Approx(0.0));
}

TEST_CASE("zero factor collapses the product exactly") {
    // Base 2, length 4, q = 4: the pair weight g^1 + g^2 = 6 = 2 mod 4 gives
    // the factor 1 + e_4(2) = 0, so S_4(1) = 0 exactly.
    const LogComplex prod = palindrome_exp_sum_product(2, 4, 4, 1);
    CHECK(prod.log_mag == -kInf);
    CHECK(std::abs(palindrome_exp_sum_brute(2, 4, 4, 1)) < 1e-12);
}

TEST_CASE("log-polar form stays finite far beyond double range") {
    // |P_2401| in base 2 is 2^1200, whose log is about 832.
    const LogComplex s = palindrome_exp_sum_product(2, 2401, 11, 0);
    CHECK(s.log_mag == doctest::Approx(log_mpz(count_exact_length(2, 2401))));
    CHECK(std::isfinite(s.log_mag));
    CHECK(s.log_mag > 709.8); // exp() would overflow an ordinary double
}

TEST_CASE("contraction factor") {
    CHECK(contraction_factor(2, 11, 1) ==
          doctest::Approx(0.5 + std::sqrt(11.0) / 10.0).epsilon(1e-12));
    // Admissible instances sit below 1, and for a prime with
    // ord >= 3 sqrt(p) the factor is at most (2g+1)/(3g) <= 5/6.
    CHECK(contraction_factor(2, 11, 1) < 5.0 / 6.0 + 1e-12);
    CHECK(contraction_factor(10, 7, 1) < 1.0);
    CHECK_THROWS_AS(contraction_factor(2, 12, 1), undefined_order_error);
}

TEST_CASE("check_lemma31") {
    CHECK(check_lemma31(2, 11, 1, 200).satisfied);
    // ord_17(10) = 16 > d(17) sqrt(17) ~ 8.25.
    CHECK(check_lemma31(10, 17, 1, 100).satisfied);
    CHECK_THROWS_AS(check_lemma31(2, 11, 11, 50), precondition_error); // gcd(c,q) too big
    CHECK_THROWS_AS(check_lemma31(10, 7, 1, 100), precondition_error);  // divisor 7 <= g
    CHECK_THROWS_AS(check_lemma31(10, 7 * 3, 1, 50), precondition_error); // divisor 3 <= g
    // Bound holds for every length, including the short ones where it is
    // weaker than trivial.
    const SweepResult sweep = sweep_lemma31(2, 11, 1, 60);
    CHECK(sweep.violations == 0);
    CHECK(sweep.cases_checked == 10 * 60);
}

TEST_CASE("check_lemma32") {
    CHECK(check_lemma32(2, 5, 1, 100).satisfied);
    CHECK(check_lemma32(10, 7, 3, 50).satisfied);
    CHECK_THROWS_AS(check_lemma32(10, 11, 1, 50), precondition_error); // 11 | g+1
    CHECK_THROWS_AS(check_lemma32(2, 5, 10, 50), precondition_error);  // q | c
    const SweepResult sweep = sweep_lemma32(2, 5, 6, 80);
    CHECK(sweep.violations == 0);
}

TEST_CASE("Parseval identity links sums to class counts") {
    for (int g : {2, 10}) {
        for (int length = 1; length <= 6; ++length) {
            for (std::int64_t q : {2, 3, 11, 19}) {
                double lhs = 0.0;
                for (std::int64_t c = 0; c < q; ++c) {
                    const LogComplex s = palindrome_exp_sum_product(g, length, q, c);
                    lhs += std::exp(2.0 * s.log_mag);
                }
                const ResidueCountTable table = class_counts_exact_length(g, length, q);
                double rhs = 0.0;
                for (const auto& n : table.counts) {
                    const double v = mpz_get_d(n.get_mpz_t());
                    rhs += v * v;
                }
                rhs *= static_cast<double>(q);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
            }
        }
    }
}
