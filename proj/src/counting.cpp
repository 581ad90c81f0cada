#include "palindist/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "palindist/bignum.hpp"
#include "palindist/digits.hpp"
#include "palindist/errors.hpp"
#include "palindist/modular.hpp"

namespace palindist {

namespace {

void require_args(int base, std::int64_t q) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
}

// w_k = (g^k + g^(L-1-k)) mod q for the symmetric pair at half-position k,
// g^k for the odd middle position.
std::vector<std::uint64_t> position_weights(int base, int length, std::uint64_t q) {
    std::vector<std::uint64_t> gpow(length);
    gpow[0] = 1 % q;
    for (int i = 1; i < length; ++i)
        gpow[i] = mulmod_u64(gpow[i - 1], static_cast<std::uint64_t>(base) % q, q);
    const int half = (length + 1) / 2;
    std::vector<std::uint64_t> w(half);
    for (int k = 0; k < half; ++k) {
        const int mirror = length - 1 - k;
        w[k] = k < mirror ? (gpow[k] + gpow[mirror]) % q : gpow[k];
    }
    return w;
}

// Adds the exact-length distribution for `length` into acc.
template <typename Cnt>
void dp_exact_length(int base, int length, std::uint64_t q, std::vector<Cnt>& acc) {
    const auto weights = position_weights(base, length, q);
    std::vector<Cnt> cur(q), next(q);
    cur[0] = 1;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const std::uint64_t w = weights[k];
        const int lo = k == 0 ? 1 : 0; // leading pair digit is nonzero
        std::fill(next.begin(), next.end(), Cnt(0));
        for (std::uint64_t r = 0; r < q; ++r) {
            if (cur[r] == 0) continue;
            std::uint64_t t = (r + static_cast<std::uint64_t>(lo) * w % q) % q;
            for (int a = lo; a < base; ++a) {
                next[t] += cur[r];
                t += w;
                if (t >= q) t -= q;
            }
        }
        cur.swap(next);
    }
    for (std::uint64_t r = 0; r < q; ++r) acc[r] += cur[r];
}

// Adds the distribution of the palindromes of exactly x's digit length that
// are <= x.  Tight-prefix DP over the top half digits of x, then a final
// boundary comparison of the half-prefix palindrome against x.
template <typename Cnt>
void dp_bounded_top_length(int base, const mpz_class& x, std::uint64_t q,
                           std::vector<Cnt>& acc) {
    const int length = digit_length(x, base);
    const auto weights = position_weights(base, length, q);
    const auto xd = to_digits(x, base).digits; // most significant first
    const int half = static_cast<int>(weights.size());

    std::vector<Cnt> untight(q), next(q);
    std::uint64_t tight_residue = 0;
    for (int j = 0; j < half; ++j) {
        // Top digit j sets palindrome positions length-1-j and j, so its
        // weight is the same symmetric-pair weight indexed from the bottom.
        const std::uint64_t w = weights[j];
        const int lo = j == 0 ? 1 : 0;
        std::fill(next.begin(), next.end(), Cnt(0));
        for (std::uint64_t r = 0; r < q; ++r) {
            if (untight[r] == 0) continue;
            std::uint64_t t = (r + static_cast<std::uint64_t>(lo) * w % q) % q;
            for (int a = lo; a < base; ++a) {
                next[t] += untight[r];
                t += w;
                if (t >= q) t -= q;
            }
        }
        // Digits below x's digit leave the tight path.
        std::uint64_t t = (tight_residue + static_cast<std::uint64_t>(lo) * w % q) % q;
        for (int a = lo; a < xd[j]; ++a) {
            next[t] += 1;
            t += w;
            if (t >= q) t -= q;
        }
        tight_residue = (tight_residue + mulmod_u64(static_cast<std::uint64_t>(xd[j]), w, q)) % q;
        untight.swap(next);
    }
    for (std::uint64_t r = 0; r < q; ++r) acc[r] += untight[r];

    // The one palindrome sharing x's half-prefix.
    const int h = (length + 1) / 2;
    mpz_class star = x / pow_mpz(base, length - h);
    if (palindrome_from_prefix(base, length, star) <= x) acc[tight_residue] += 1;
}

template <typename Cnt>
std::vector<Cnt> cumulative_counts(int base, const mpz_class& x, std::uint64_t q) {
    std::vector<Cnt> acc(q);
    if (x < 1) return acc;
    const int length = digit_length(x, base);
    for (int l = 1; l < length; ++l) dp_exact_length(base, l, q, acc);
    dp_bounded_top_length(base, x, q, acc);
    return acc;
}

ResidueCountTable finalize_table(int base, std::int64_t q, std::vector<mpz_class> counts) {
    ResidueCountTable t;
    t.base = base;
    t.q = q;
    t.counts = std::move(counts);
    t.total = 0;
    for (const auto& c : t.counts) t.total += c;
    t.max_discrepancy_num = 0;
    for (const auto& c : t.counts) {
        mpz_class dev = abs(q * c - t.total);
        if (dev > t.max_discrepancy_num) t.max_discrepancy_num = dev;
    }
    return t;
}

std::vector<mpz_class> to_mpz_counts(const std::vector<std::uint64_t>& v) {
    std::vector<mpz_class> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = mpz_class(static_cast<unsigned long>(v[i]));
    return out;
}

// The machine-word DP path is exact whenever the final total fits; every
// intermediate count is bounded by it.
bool fits_u64(const mpz_class& total) { return total.fits_ulong_p(); }

} // namespace

double ResidueCountTable::max_discrepancy() const {
    return mpz_get_d(max_discrepancy_num.get_mpz_t()) / static_cast<double>(q);
}

double ResidueCountTable::discrepancy_log() const {
    return log_mpz(max_discrepancy_num) - std::log(static_cast<double>(q));
}

ResidueCountTable class_counts_exact_length(int base, int length, std::int64_t q) {
    require_args(base, q);
    if (length < 1) throw std::invalid_argument("length must be >= 1");
    const std::uint64_t uq = static_cast<std::uint64_t>(q);
    std::vector<mpz_class> counts;
    if (fits_u64(count_exact_length(base, length))) {
        std::vector<std::uint64_t> acc(uq);
        dp_exact_length(base, length, uq, acc);
        counts = to_mpz_counts(acc);
    } else {
        std::vector<mpz_class> acc(uq);
        dp_exact_length(base, length, uq, acc);
        counts = std::move(acc);
    }
    ResidueCountTable t = finalize_table(base, q, std::move(counts));
    t.cumulative = false;
    t.length = length;
    return t;
}

ResidueCountTable class_counts_up_to(int base, const mpz_class& x, std::int64_t q) {
    require_args(base, q);
    const std::uint64_t uq = static_cast<std::uint64_t>(q);
    std::vector<mpz_class> counts;
    if (x >= 1 && fits_u64(count_up_to(base, x)))
        counts = to_mpz_counts(cumulative_counts<std::uint64_t>(base, x, uq));
    else
        counts = cumulative_counts<mpz_class>(base, x, uq);
    ResidueCountTable t = finalize_table(base, q, std::move(counts));
    t.cumulative = true;
    t.x = x;
    return t;
}

BoundReport check_prop41(int base, std::uint64_t p, int length) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (!is_prime_u64(p))
        throw precondition_error("p prime fails: " + std::to_string(p) + " is not prime");
    if (p <= static_cast<std::uint64_t>(base))
        throw precondition_error("p > g fails: p = " + std::to_string(p));
    const std::uint64_t ord = multiplicative_order(static_cast<std::uint64_t>(base), p);
    if (ord * ord < 9 * p)
        throw precondition_error("ord_p(g) >= 3*sqrt(p) fails: ord_" + std::to_string(p) +
                                 "(" + std::to_string(base) + ") = " + std::to_string(ord));
    if (length < 10 * static_cast<std::int64_t>(p) - 5)
        throw precondition_error("L >= 10p - 5 fails: L = " + std::to_string(length) +
                                 " < " + std::to_string(10 * p - 5));
    // ord <= p - 1, so ord^2 >= 9p forces p >= 11.
    const ResidueCountTable table =
        class_counts_exact_length(base, length, static_cast<std::int64_t>(p));
    const double lhs_log = table.discrepancy_log();
    const double rhs_log = log_mpz(table.total) - std::log(static_cast<double>(p)) +
                           static_cast<double>(length) * std::log(0.99);
    return make_bound_report(BoundId::prop41,
                             {{"p", static_cast<double>(p)},
                              {"L", static_cast<double>(length)},
                              {"ord", static_cast<double>(ord)}},
                             lhs_log, rhs_log);
}

BoundReport check_prop42(int base, std::uint64_t q, int length) {
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    mpz_class g(base);
    mpz_class shared = gcd(mpz_class(static_cast<unsigned long>(q)), g * (g * g - 1));
    if (shared != 1)
        throw precondition_error("gcd(q, g(g^2-1)) = 1 fails: gcd = " + shared.get_str());
    const double dq = static_cast<double>(q);
    const double threshold = 10.0 + 2.0 * dq * dq * std::log(dq);
    if (static_cast<double>(length) < threshold)
        throw precondition_error("L >= 10 + 2q^2 ln q fails: need L >= " +
                                 std::to_string(threshold));
    const ResidueCountTable table =
        class_counts_exact_length(base, length, static_cast<std::int64_t>(q));
    const double lhs_log = table.discrepancy_log();
    const double rhs_log = log_mpz(table.total) - std::log(dq) -
                           static_cast<double>(length) / (2.0 * dq * dq);
    return make_bound_report(BoundId::prop42,
                             {{"q", dq}, {"L", static_cast<double>(length)}},
                             lhs_log, rhs_log);
}

namespace {

// Theoretical contraction per digit for the branch q qualifies for; throws
// when q qualifies for neither.
std::pair<BoundId, double> decay_branch(int base, std::int64_t q) {
    const std::uint64_t uq = static_cast<std::uint64_t>(q);
    if (is_prime_u64(uq) && uq > static_cast<std::uint64_t>(base)) {
        const std::uint64_t ord = multiplicative_order(static_cast<std::uint64_t>(base), uq);
        if (ord * ord >= 9 * uq) return {BoundId::prop41, 0.99};
    }
    mpz_class g(base);
    if (gcd(mpz_class(static_cast<unsigned long>(uq)), g * (g * g - 1)) == 1) {
        const double dq = static_cast<double>(q);
        return {BoundId::prop42, std::exp(-1.0 / (2.0 * dq * dq))};
    }
    throw precondition_error(
        "q admits neither bound: not a prime with ord_q(g) >= 3*sqrt(q), and "
        "gcd(q, g(g^2-1)) > 1");
}

} // namespace

DecayFit fit_decay(int base, std::int64_t q, int l_min, int l_max) {
    require_args(base, q);
    if (l_min < 1 || l_max < l_min) throw std::invalid_argument("bad length range");

    DecayFit fit;
    fit.base = base;
    fit.q = q;
    const auto [branch, xi] = decay_branch(base, q);
    fit.branch = branch;
    fit.xi = xi;

    const double log_xi = std::log(xi);
    const double log_q = std::log(static_cast<double>(q));
    const double two_log_g = 2.0 * std::log(static_cast<double>(base));

    std::vector<mpz_class> cum(q);
    mpz_class cum_total = 0;
    double log_a = 0.0; // A >= 1
    double best_cum_log = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> reg; // (L, log ratio)

    for (int l = 1; l <= l_max; ++l) {
        const ResidueCountTable table = class_counts_exact_length(base, l, q);
        for (std::int64_t r = 0; r < q; ++r) cum[r] += table.counts[r];
        cum_total += table.total;
        if (l < l_min) continue;

        const double ratio_log = table.discrepancy_log() - log_mpz(table.total);
        fit.series.emplace_back(l, std::exp(ratio_log));
        log_a = std::max(log_a, ratio_log - l * log_xi);
        if (ratio_log > -std::numeric_limits<double>::infinity())
            reg.emplace_back(static_cast<double>(l), ratio_log);

        // Cumulative constant at x = g^l - 1.
        mpz_class disc_num = 0;
        for (std::int64_t r = 0; r < q; ++r) {
            mpz_class dev = abs(q * cum[r] - cum_total);
            if (dev > disc_num) disc_num = dev;
        }
        const mpz_class x = pow_mpz(base, l) - 1;
        const double cum_log = log_mpz(disc_num) - log_q - log_mpz(cum_total) -
                               (log_mpz(x) / two_log_g) * log_xi;
        best_cum_log = std::max(best_cum_log, cum_log);
    }
    fit.A = std::exp(log_a);
    fit.cumulative_constant = std::exp(best_cum_log - log_a);

    if (reg.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [lx, ly] : reg) {
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double n = static_cast<double>(reg.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        fit.xi_measured = std::exp(slope);
        fit.xi_measured_below_floor = fit.xi_measured < std::sqrt(2.0 / 3.0);
    }
    return fit;
}

CumulativeDecayReport check_cumulative_decay(int base, std::int64_t q,
                                             const std::vector<mpz_class>& xs,
                                             double bound_factor) {
    require_args(base, q);
    if (xs.empty()) throw std::invalid_argument("x list must be nonempty");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) throw std::invalid_argument("x list must be increasing");

    CumulativeDecayReport rep;
    rep.base = base;
    rep.q = q;
    rep.bound_factor = bound_factor;
    const auto [branch, xi] = decay_branch(base, q);
    rep.branch = branch == BoundId::prop41 ? BoundId::cor45 : BoundId::cor46;
    rep.xi = xi;

    const double log_xi = std::log(xi);
    const double log_q = std::log(static_cast<double>(q));
    const double two_log_g = 2.0 * std::log(static_cast<double>(base));

    for (const mpz_class& x : xs) {
        const ResidueCountTable table = class_counts_up_to(base, x, q);
        CumulativeDecayRow row;
        row.x = x;
        row.total = table.total;
        row.disc_num = table.max_discrepancy_num;
        row.empirical_constant =
            std::exp(log_mpz(table.max_discrepancy_num) - log_q - log_mpz(table.total) -
                     (log_mpz(x) / two_log_g) * log_xi);
        rep.rows.push_back(std::move(row));
    }

    double reference = 0.0;
    for (const auto& row : rep.rows)
        if (row.empirical_constant > 0.0) {
            reference = row.empirical_constant;
            break;
        }
    double worst = 0.0;
    for (const auto& row : rep.rows) worst = std::max(worst, row.empirical_constant);
    rep.bounded = reference == 0.0 ? true : worst <= bound_factor * reference;
    rep.summary = make_bound_report(
        rep.branch,
        {{"q", static_cast<double>(q)},
         {"xi", xi},
         {"factor", bound_factor},
         {"points", static_cast<double>(rep.rows.size())}},
        worst > 0 ? std::log(worst) : -std::numeric_limits<double>::infinity(),
        reference > 0 ? std::log(bound_factor * reference)
                      : std::numeric_limits<double>::infinity());
    return rep;
}

} // namespace palindist
