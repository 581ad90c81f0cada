#include "palindist/expsums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "palindist/bignum.hpp"
#include "palindist/digits.hpp"
#include "palindist/errors.hpp"
#include "palindist/modular.hpp"
#include "palindist/parallel.hpp"

namespace palindist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r = kPi;
    return r;
}

std::uint64_t reduce_mod(std::int64_t x, std::uint64_t q) {
    std::int64_t r = x % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(r);
}

// gcd(a, b, q) reduced through q; gcd(0, 0, q) = q.
std::uint64_t gcd3(std::int64_t a, std::int64_t b, std::uint64_t q) {
    return std::gcd(std::gcd(reduce_mod(a, q), q), std::gcd(reduce_mod(b, q), q));
}

// e^(2 pi i t/q) for t in [0, q), exact at quarter turns so that sums which
// cancel there cancel to exactly zero.
std::complex<double> root_of_unity(std::uint64_t q, std::uint64_t t) {
    if ((4 * t) % q == 0) {
        switch ((4 * t / q) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(t) / static_cast<double>(q));
}

std::vector<std::complex<double>> root_table(std::uint64_t q) {
    std::vector<std::complex<double>> roots(q);
    for (std::uint64_t t = 0; t < q; ++t) roots[t] = root_of_unity(q, t);
    return roots;
}

void require_base(int base) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
}

mpz_class base_square_free_part(int base) {
    // g*(g^2 - 1), the quantity that must be coprime to q in the
    // exponential-decay bound.
    mpz_class g(base);
    return g * (g * g - 1);
}

} // namespace

LogComplex LogComplex::zero() { return LogComplex{-kInf, 0.0}; }

LogComplex LogComplex::from(std::complex<double> z) {
    const double mag = std::abs(z);
    if (mag == 0.0) return zero();
    return LogComplex{std::log(mag), std::atan2(z.imag(), z.real())};
}

std::complex<double> LogComplex::to_complex() const {
    if (log_mag == -kInf) return {0.0, 0.0};
    return std::polar(std::exp(log_mag), arg);
}

LogComplex& LogComplex::operator*=(const LogComplex& rhs) {
    if (log_mag == -kInf || rhs.log_mag == -kInf) {
        *this = zero();
        return *this;
    }
    log_mag += rhs.log_mag;
    arg = wrap_angle(arg + rhs.arg);
    return *this;
}

std::complex<double> unit_root(std::int64_t q, std::int64_t x) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    const std::uint64_t uq = static_cast<std::uint64_t>(q);
    return root_of_unity(uq, reduce_mod(x, uq));
}

std::complex<double> unit_root(std::int64_t q, const mpz_class& x) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    const std::uint64_t uq = static_cast<std::uint64_t>(q);
    return root_of_unity(uq, mod_u64(x, uq));
}

std::complex<double> power_pair_sum(std::uint64_t q, std::uint64_t g,
                                    std::int64_t a, std::int64_t b) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    const std::uint64_t n = multiplicative_order(g, q); // throws if gcd > 1
    const std::uint64_t gi = mod_inverse(g % q, q);
    const std::uint64_t ar = reduce_mod(a, q), br = reduce_mod(b, q);
    std::complex<double> sum = 0.0;
    std::uint64_t gk = 1, gik = 1;
    for (std::uint64_t k = 1; k <= n; ++k) {
        gk = mulmod_u64(gk, g % q, q);
        gik = mulmod_u64(gik, gi, q);
        const std::uint64_t t =
            (mulmod_u64(ar, gk, q) + mulmod_u64(br, gik, q)) % q;
        sum += root_of_unity(q, t);
    }
    return sum;
}

BoundReport check_lemma21(std::uint64_t q, std::uint64_t g, std::int64_t a,
                          std::int64_t b) {
    const std::uint64_t n = multiplicative_order(g, q);
    const double lhs = std::abs(power_pair_sum(q, g, a, b));
    const std::uint64_t d = divisor_count(q);
    const std::uint64_t gcd = gcd3(a, b, q);
    const double rhs = static_cast<double>(d) *
                       std::sqrt(static_cast<double>(q)) *
                       std::sqrt(static_cast<double>(gcd));
    return make_bound_report(BoundId::lemma21,
                             {{"q", static_cast<double>(q)},
                              {"g", static_cast<double>(g)},
                              {"a", static_cast<double>(a)},
                              {"b", static_cast<double>(b)},
                              {"ord", static_cast<double>(n)},
                              {"gcd", static_cast<double>(gcd)}},
                             std::log(lhs), std::log(rhs));
}

double geometric_digit_sum(std::int64_t q, std::int64_t k, std::int64_t h) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    const std::uint64_t uq = static_cast<std::uint64_t>(q);
    const std::uint64_t hr = reduce_mod(h, uq);
    if (hr == 0) return static_cast<double>(k);
    if (k == 0) return 0.0;
    // |sum_{a<k} e^(2 pi i h a / q)| = |sin(pi h k / q)| / |sin(pi h / q)|,
    // with the numerator argument reduced exactly mod 2q.  The sum vanishes
    // exactly when q | h*k.
    const std::uint64_t hk = mulmod_u64(hr, static_cast<std::uint64_t>(k) % (2 * uq), 2 * uq);
    if (hk % uq == 0) return 0.0;
    const double num = std::sin(kPi * static_cast<double>(hk) / static_cast<double>(q));
    const double den = std::sin(kPi * static_cast<double>(hr) / static_cast<double>(q));
    return std::abs(num / den);
}

BoundReport check_lemma22(std::uint64_t q, std::int64_t k, std::int64_t h) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    const std::uint64_t hr = reduce_mod(h, q);
    if (hr == 0)
        throw precondition_error("q not dividing h fails: h = 0 mod " + std::to_string(q));
    const double s = geometric_digit_sum(static_cast<std::int64_t>(q), k, h);
    const double gcd = static_cast<double>(std::gcd(hr, q));
    const double dq = static_cast<double>(q);
    const double rhs_log =
        std::log(static_cast<double>(k)) - 4.0 * gcd * gcd / (dq * dq);
    return make_bound_report(BoundId::lemma22,
                             {{"q", dq},
                              {"k", static_cast<double>(k)},
                              {"h", static_cast<double>(h)},
                              {"gcd", gcd}},
                             std::log(s), rhs_log);
}

std::complex<double> palindrome_exp_sum_brute(int base, int length,
                                              std::uint64_t q, std::int64_t c) {
    require_base(base);
    if (length < 1) throw std::invalid_argument("length must be >= 1");
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (count_exact_length(base, length) > 10000000)
        throw resource_error("palindrome enumeration cap (10^7) exceeded; use the product form");
    const std::uint64_t cr = reduce_mod(c, q);
    std::complex<double> sum = 0.0;
    PalindromeStream stream(base, pow_mpz(base, length - 1), pow_mpz(base, length) - 1);
    while (auto n = stream.next())
        sum += root_of_unity(q, mulmod_u64(cr, mod_u64(*n, q), q));
    return sum;
}

LogComplex palindrome_exp_sum_product(int base, int length, std::uint64_t q,
                                      std::int64_t c) {
    require_base(base);
    if (length < 1) throw std::invalid_argument("length must be >= 1");
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    const std::uint64_t cr = reduce_mod(c, q);

    std::vector<std::uint64_t> gpow(length);
    gpow[0] = 1 % q;
    for (int i = 1; i < length; ++i)
        gpow[i] = mulmod_u64(gpow[i - 1], static_cast<std::uint64_t>(base) % q, q);

    LogComplex product{0.0, 0.0};
    const int half = (length + 1) / 2;
    for (int k = 0; k < half; ++k) {
        const int mirror = length - 1 - k;
        const std::uint64_t w =
            k < mirror ? (gpow[k] + gpow[mirror]) % q : gpow[k];
        const std::uint64_t step = mulmod_u64(cr, w, q);
        // Geometric sums of roots of unity vanish exactly when the full turn
        // count is integral: sum_{a=0..g-1} at q | step*g, and the leading
        // sum_{a=1..g-1} at q | step*(g-1) (step nonzero mod q in each case).
        const std::uint64_t span = k == 0 ? static_cast<std::uint64_t>(base) - 1
                                          : static_cast<std::uint64_t>(base);
        if (step != 0 && mulmod_u64(step, span % q, q) == 0) return LogComplex::zero();
        std::complex<double> factor = 0.0;
        std::uint64_t t = k == 0 ? step : 0; // leading digit starts at 1
        for (int a = (k == 0 ? 1 : 0); a < base; ++a) {
            factor += root_of_unity(q, t);
            t += step;
            if (t >= q) t -= q;
        }
        product *= LogComplex::from(factor);
    }
    return product;
}

double contraction_factor(int base, std::uint64_t q, std::int64_t c) {
    require_base(base);
    const std::uint64_t n = multiplicative_order(static_cast<std::uint64_t>(base), q);
    const std::uint64_t d = divisor_count(q);
    const std::uint64_t gcd = std::gcd(reduce_mod(c, q), q);
    const double g = static_cast<double>(base);
    return 1.0 / g + (g - 1.0) * static_cast<double>(d) *
                         std::sqrt(static_cast<double>(q)) *
                         std::sqrt(static_cast<double>(gcd)) /
                         (g * static_cast<double>(n));
}

BoundReport check_lemma31(int base, std::uint64_t q, std::int64_t c, int length) {
    require_base(base);
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    for (const auto& [p, e] : factorize(q)) {
        (void)e;
        if (p <= static_cast<std::uint64_t>(base))
            throw precondition_error("p > g fails for prime divisor p = " + std::to_string(p));
    }
    const std::uint64_t n = multiplicative_order(static_cast<std::uint64_t>(base), q);
    const double theta = contraction_factor(base, q, c);
    if (theta >= 1.0)
        throw precondition_error("ord_q(g) > d(q)*sqrt(q)*sqrt(gcd(c,q)) fails (theta >= 1)");

    const double lhs_log = palindrome_exp_sum_product(base, length, q, c).log_mag;
    const double exponent = (static_cast<double>(length) - 2.0 * static_cast<double>(n) - 1.0) / 4.0;
    const double count_log = log_mpz(count_exact_length(base, length));
    const double rhs_log = count_log + exponent * std::log(theta);
    return make_bound_report(BoundId::lemma31,
                             {{"q", static_cast<double>(q)},
                              {"c", static_cast<double>(c)},
                              {"L", static_cast<double>(length)},
                              {"ord", static_cast<double>(n)},
                              {"theta", theta},
                              {"informative", rhs_log < count_log ? 1.0 : 0.0}},
                             lhs_log, rhs_log);
}

BoundReport check_lemma32(int base, std::uint64_t q, std::int64_t c, int length) {
    require_base(base);
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    mpz_class qz(static_cast<unsigned long>(q));
    mpz_class shared = gcd(qz, base_square_free_part(base));
    if (shared != 1)
        throw precondition_error("gcd(q, g(g^2-1)) = 1 fails: gcd = " + shared.get_str());
    const std::uint64_t cr = reduce_mod(c, q);
    if (cr == 0) throw precondition_error("q | c fails: bound requires q not dividing c");

    const double lhs_log = palindrome_exp_sum_product(base, length, q, c).log_mag;
    const double gcd_cq = static_cast<double>(std::gcd(cr, q));
    const double dq = static_cast<double>(q);
    const double rhs_log = log_mpz(count_exact_length(base, length)) -
                           (static_cast<double>(length) - 5.0) * gcd_cq * gcd_cq / (dq * dq);
    return make_bound_report(BoundId::lemma32,
                             {{"q", dq},
                              {"c", static_cast<double>(c)},
                              {"L", static_cast<double>(length)},
                              {"gcd", gcd_cq}},
                             lhs_log, rhs_log);
}

SweepResult sweep_lemma21(int base, std::uint64_t q_max, int threads) {
    require_base(base);
    std::vector<std::vector<BoundReport>> per_q(q_max + 1);
    std::vector<std::uint64_t> checked(q_max + 1, 0);
    std::vector<std::uint64_t> bad(q_max + 1, 0);

    parallel_for(q_max + 1, threads, [&](std::size_t qi) {
        const std::uint64_t q = static_cast<std::uint64_t>(qi);
        if (q < 2 || std::gcd(q, static_cast<std::uint64_t>(base)) != 1) return;
        const std::uint64_t n = multiplicative_order(static_cast<std::uint64_t>(base), q);
        const std::uint64_t gi = mod_inverse(static_cast<std::uint64_t>(base) % q, q);
        const auto roots = root_table(q);

        // Power tables for g^k and gbar^k, k = 1..n.
        std::vector<std::uint64_t> gk(n), gik(n);
        std::uint64_t pg = 1, pgi = 1;
        for (std::uint64_t k = 0; k < n; ++k) {
            pg = mulmod_u64(pg, static_cast<std::uint64_t>(base) % q, q);
            pgi = mulmod_u64(pgi, gi, q);
            gk[k] = pg;
            gik[k] = pgi;
        }
        // Per-residue rows a*g^k and b*gbar^k, reused across the (a, b) grid.
        std::vector<std::uint64_t> arow(q * n), brow(q * n);
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t k = 0; k < n; ++k) {
                arow[a * n + k] = mulmod_u64(a, gk[k], q);
                brow[a * n + k] = mulmod_u64(a, gik[k], q);
            }

        const std::uint64_t d = divisor_count(q);
        const double dq_sqrt = static_cast<double>(d) * std::sqrt(static_cast<double>(q));
        double worst_gap = -kInf; // lhs_log - rhs_log
        std::uint64_t worst_a = 0, worst_b = 0;
        double worst_lhs = 0, worst_rhs = 0;
        for (std::uint64_t a = 0; a < q; ++a) {
            const std::uint64_t* ak = &arow[a * n];
            for (std::uint64_t b = 0; b < q; ++b) {
                const std::uint64_t* bk = &brow[b * n];
                double re = 0.0, im = 0.0;
                for (std::uint64_t k = 0; k < n; ++k) {
                    std::uint64_t t = ak[k] + bk[k];
                    if (t >= q) t -= q;
                    re += roots[t].real();
                    im += roots[t].imag();
                }
                const double lhs = std::sqrt(re * re + im * im);
                const std::uint64_t gcd = std::gcd(std::gcd(a, q), std::gcd(b, q));
                const double rhs = dq_sqrt * std::sqrt(static_cast<double>(gcd));
                ++checked[qi];
                if (lhs > rhs + 1e-6) ++bad[qi];
                const double gap = std::log(lhs) - std::log(rhs);
                if (gap > worst_gap) {
                    worst_gap = gap;
                    worst_a = a;
                    worst_b = b;
                    worst_lhs = lhs;
                    worst_rhs = rhs;
                }
            }
        }
        BoundReport r = make_bound_report(
            BoundId::lemma21,
            {{"q", static_cast<double>(q)},
             {"g", static_cast<double>(base)},
             {"ord", static_cast<double>(n)},
             {"worst_a", static_cast<double>(worst_a)},
             {"worst_b", static_cast<double>(worst_b)},
             {"cases", static_cast<double>(checked[qi])}},
            std::log(worst_lhs), std::log(worst_rhs));
        per_q[qi].push_back(std::move(r));
    });

    SweepResult result;
    for (std::size_t qi = 0; qi <= q_max; ++qi) {
        result.cases_checked += checked[qi];
        result.violations += bad[qi];
        for (auto& r : per_q[qi]) result.rows.push_back(std::move(r));
    }
    return result;
}

SweepResult sweep_lemma22(std::uint64_t q_max, int threads) {
    std::vector<std::vector<BoundReport>> per_q(q_max + 1);
    std::vector<std::uint64_t> checked(q_max + 1, 0);
    std::vector<std::uint64_t> bad(q_max + 1, 0);

    parallel_for(q_max + 1, threads, [&](std::size_t qi) {
        const std::int64_t q = static_cast<std::int64_t>(qi);
        if (q < 2) return;
        double worst_gap = -kInf;
        std::int64_t worst_k = 0, worst_h = 0;
        double worst_lhs = 0, worst_rhs_log = 0;
        for (std::int64_t k = 2; k <= 3 * q; ++k) {
            for (std::int64_t h = 1; h <= 3 * q; ++h) {
                if (h % q == 0) continue;
                const double s = geometric_digit_sum(q, k, h);
                const double gcd = static_cast<double>(std::gcd(h, q));
                const double rhs_log = std::log(static_cast<double>(k)) -
                                       4.0 * gcd * gcd / static_cast<double>(q * q);
                ++checked[qi];
                if (s > std::exp(rhs_log) + 1e-6) ++bad[qi];
                const double gap = std::log(s) - rhs_log;
                if (gap > worst_gap) {
                    worst_gap = gap;
                    worst_k = k;
                    worst_h = h;
                    worst_lhs = s;
                    worst_rhs_log = rhs_log;
                }
            }
        }
        BoundReport r = make_bound_report(BoundId::lemma22,
                                          {{"q", static_cast<double>(q)},
                                           {"worst_k", static_cast<double>(worst_k)},
                                           {"worst_h", static_cast<double>(worst_h)},
                                           {"cases", static_cast<double>(checked[qi])}},
                                          std::log(worst_lhs), worst_rhs_log);
        per_q[qi].push_back(std::move(r));
    });

    SweepResult result;
    for (std::size_t qi = 0; qi <= q_max; ++qi) {
        result.cases_checked += checked[qi];
        result.violations += bad[qi];
        for (auto& r : per_q[qi]) result.rows.push_back(std::move(r));
    }
    return result;
}

SweepResult sweep_lemma31(int base, std::uint64_t q, int l_min, int l_max) {
    SweepResult result;
    for (std::int64_t c = 1; c < static_cast<std::int64_t>(q); ++c) {
        if (contraction_factor(base, q, c) >= 1.0) continue; // inadmissible c
        for (int l = l_min; l <= l_max; ++l) {
            BoundReport r = check_lemma31(base, q, c, l);
            ++result.cases_checked;
            if (!r.satisfied) ++result.violations;
            result.rows.push_back(std::move(r));
        }
    }
    if (result.cases_checked == 0)
        throw precondition_error("no admissible c in [1, q) for this modulus");
    return result;
}

SweepResult sweep_lemma32(int base, std::uint64_t q, int l_min, int l_max) {
    SweepResult result;
    for (std::int64_t c = 1; c < static_cast<std::int64_t>(q); ++c) {
        for (int l = l_min; l <= l_max; ++l) {
            BoundReport r = check_lemma32(base, q, c, l);
            ++result.cases_checked;
            if (!r.satisfied) ++result.violations;
            result.rows.push_back(std::move(r));
        }
    }
    return result;
}

} // namespace palindist
