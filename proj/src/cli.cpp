#include "palindist/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <variant>

#include "palindist/bignum.hpp"
#include "palindist/counting.hpp"
#include "palindist/digits.hpp"
#include "palindist/errors.hpp"
#include "palindist/expsums.hpp"
#include "palindist/modular.hpp"
#include "palindist/primes.hpp"
#include "palindist/report.hpp"

namespace palindist::cli {

namespace {

using Cell = std::variant<bool, std::int64_t, double, std::string>;
using Row = std::vector<std::pair<std::string, Cell>>;

struct ReportEnvelope {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Row> rows;
    int schema_version = 1;
};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& cell) {
    if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

void emit_json(const ReportEnvelope& env, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["command"] = env.command;
    doc["schema_version"] = env.schema_version;
    auto& params = doc["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : env.params) params[k] = v;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const Row& row : env.rows) {
        nlohmann::ordered_json jrow;
        for (const auto& [k, cell] : row) {
            std::visit([&, &key = k](const auto& v) { jrow[key] = v; }, cell);
        }
        rows.push_back(std::move(jrow));
    }
    out << doc.dump(2) << "\n";
}

void emit_csv(const ReportEnvelope& env, std::ostream& out) {
    out << "# command=" << env.command << "\n";
    out << "# schema_version=" << env.schema_version << "\n";
    for (const auto& [k, v] : env.params) out << "# " << k << "=" << v << "\n";
    if (env.rows.empty()) return;
    for (std::size_t i = 0; i < env.rows.front().size(); ++i)
        out << (i ? "," : "") << csv_escape(env.rows.front()[i].first);
    out << "\n";
    for (const Row& row : env.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_escape(cell_text(row[i].second));
        out << "\n";
    }
}

void emit(const ReportEnvelope& env, const std::string& format, std::ostream& out) {
    if (format == "csv")
        emit_csv(env, out);
    else
        emit_json(env, out);
}

// Decimal string, or power syntax A^B (e.g. 2^40).
mpz_class parse_bigint(const std::string& text) {
    const auto caret = text.find('^');
    if (caret != std::string::npos) {
        const std::string base = text.substr(0, caret);
        const std::string exp = text.substr(caret + 1);
        mpz_class b;
        if (b.set_str(base, 10) != 0 || b < 0)
            throw std::invalid_argument("bad integer: " + text);
        unsigned long e = 0;
        auto [p, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), e);
        if (ec != std::errc() || p != exp.data() + exp.size())
            throw std::invalid_argument("bad exponent: " + text);
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
        return r;
    }
    mpz_class v;
    if (v.set_str(text, 10) != 0) throw std::invalid_argument("bad integer: " + text);
    return v;
}

std::vector<mpz_class> parse_bigint_list(const std::vector<std::string>& items) {
    std::vector<mpz_class> out;
    for (const auto& s : items) out.push_back(parse_bigint(s));
    return out;
}

std::string str(const mpz_class& v) { return v.get_str(); }

void append_bound_cells(Row& row, const BoundReport& r) {
    row.emplace_back("lhs_log", r.lhs_log);
    row.emplace_back("rhs_log", r.rhs_log);
    row.emplace_back("slack_log", r.slack_log);
    row.emplace_back("satisfied", r.satisfied);
}

struct GlobalOpts {
    std::string format = "json";
    int threads = 1;
    std::uint64_t seed = 0; // reserved; everything is deterministic
};

// --- subcommand handlers -------------------------------------------------

struct EnumerateOpts {
    int base = 10;
    std::string lo = "1";
    std::string hi;
    std::uint64_t limit = 0;
};

ReportEnvelope run_enumerate(const EnumerateOpts& o) {
    const mpz_class lo = parse_bigint(o.lo), hi = parse_bigint(o.hi);
    mpz_class expected = count_up_to(o.base, hi);
    if (lo > 1) expected -= count_up_to(o.base, lo - 1);
    if (o.limit == 0 && expected > 10000000)
        throw resource_error("range holds " + str(expected) +
                             " palindromes; pass --limit to truncate");
    ReportEnvelope env;
    env.command = "enumerate";
    env.params = {{"base", std::to_string(o.base)},
                  {"lo", str(lo)},
                  {"hi", str(hi)},
                  {"count", str(expected)}};
    PalindromeStream stream(o.base, lo, hi);
    std::uint64_t emitted = 0;
    while (auto v = stream.next()) {
        if (o.limit != 0 && emitted == o.limit) break;
        env.rows.push_back({{"value", str(*v)}});
        ++emitted;
    }
    env.params.emplace_back("emitted", std::to_string(emitted));
    return env;
}

struct CountOpts {
    int base = 10;
    int length = 0;
    std::string upto;
    std::int64_t mod = 0;
};

ReportEnvelope run_count(const CountOpts& o) {
    if ((o.length > 0) == !o.upto.empty())
        throw std::invalid_argument("pass exactly one of --length or --upto");
    ReportEnvelope env;
    env.command = "count";
    env.params.emplace_back("base", std::to_string(o.base));
    if (o.mod == 0) {
        if (o.length > 0) {
            env.params.emplace_back("length", std::to_string(o.length));
            env.rows.push_back({{"count", str(count_exact_length(o.base, o.length))}});
        } else {
            const mpz_class x = parse_bigint(o.upto);
            env.params.emplace_back("x", str(x));
            env.rows.push_back({{"count", str(count_up_to(o.base, x))}});
        }
        return env;
    }
    ResidueCountTable table;
    if (o.length > 0) {
        env.params.emplace_back("length", std::to_string(o.length));
        table = class_counts_exact_length(o.base, o.length, o.mod);
    } else {
        const mpz_class x = parse_bigint(o.upto);
        env.params.emplace_back("x", str(x));
        table = class_counts_up_to(o.base, x, o.mod);
    }
    env.params.emplace_back("mod", std::to_string(o.mod));
    env.params.emplace_back("total", str(table.total));
    env.params.emplace_back("max_discrepancy_num", str(table.max_discrepancy_num));
    env.params.emplace_back("max_discrepancy", format_double(table.max_discrepancy()));
    for (std::int64_t r = 0; r < table.q; ++r)
        env.rows.push_back({{"residue", r}, {"count", str(table.counts[r])}});
    return env;
}

struct ExpsumOpts {
    int base = 10;
    int length = 1;
    std::int64_t mod = 2;
    std::int64_t c = 1;
    std::string method = "both";
};

ReportEnvelope run_expsum(const ExpsumOpts& o) {
    ReportEnvelope env;
    env.command = "expsum";
    env.params = {{"base", std::to_string(o.base)},
                  {"length", std::to_string(o.length)},
                  {"mod", std::to_string(o.mod)},
                  {"c", std::to_string(o.c)},
                  {"method", o.method}};
    const std::uint64_t q = static_cast<std::uint64_t>(o.mod);
    Row row;
    std::complex<double> brute;
    LogComplex product{};
    if (o.method == "brute" || o.method == "both") {
        brute = palindrome_exp_sum_brute(o.base, o.length, q, o.c);
        row.emplace_back("brute_re", brute.real());
        row.emplace_back("brute_im", brute.imag());
        row.emplace_back("brute_abs", std::abs(brute));
    }
    if (o.method == "product" || o.method == "both") {
        product = palindrome_exp_sum_product(o.base, o.length, q, o.c);
        row.emplace_back("product_mag_log", product.log_mag);
        row.emplace_back("product_arg", product.arg);
    }
    if (o.method == "both") {
        const double scale = std::max(std::abs(brute), 1.0);
        row.emplace_back("rel_diff", std::abs(brute - product.to_complex()) / scale);
    }
    env.rows.push_back(std::move(row));
    return env;
}

struct VerifyOpts {
    std::string bound;
    int base = 2;
    std::uint64_t qmax = 100;
    std::int64_t mod = 0;
    std::int64_t c = -1; // -1: sweep all admissible c
    int l_min = 0;
    int l_max = 0;
    int length = 0;
    std::vector<std::string> xs;
    double factor = 10.0;
};

void summarize_sweep(ReportEnvelope& env, const SweepResult& sweep) {
    env.params.emplace_back("cases_checked", std::to_string(sweep.cases_checked));
    env.params.emplace_back("violations", std::to_string(sweep.violations));
    env.params.emplace_back("all_satisfied", sweep.violations == 0 ? "true" : "false");
}

ReportEnvelope run_verify(const VerifyOpts& o, const GlobalOpts& g) {
    ReportEnvelope env;
    env.command = "verify " + o.bound;
    env.params.emplace_back("base", std::to_string(o.base));

    if (o.bound == "lemma21") {
        env.params.emplace_back("qmax", std::to_string(o.qmax));
        const SweepResult sweep = sweep_lemma21(o.base, o.qmax, g.threads);
        for (const BoundReport& r : sweep.rows) {
            Row row;
            row.emplace_back("q", static_cast<std::int64_t>(r.params.at("q")));
            row.emplace_back("ord", static_cast<std::int64_t>(r.params.at("ord")));
            row.emplace_back("worst_a", static_cast<std::int64_t>(r.params.at("worst_a")));
            row.emplace_back("worst_b", static_cast<std::int64_t>(r.params.at("worst_b")));
            row.emplace_back("cases", static_cast<std::int64_t>(r.params.at("cases")));
            append_bound_cells(row, r);
            env.rows.push_back(std::move(row));
        }
        summarize_sweep(env, sweep);
        return env;
    }
    if (o.bound == "lemma22") {
        env.params.emplace_back("qmax", std::to_string(o.qmax));
        const SweepResult sweep = sweep_lemma22(o.qmax, g.threads);
        for (const BoundReport& r : sweep.rows) {
            Row row;
            row.emplace_back("q", static_cast<std::int64_t>(r.params.at("q")));
            row.emplace_back("worst_k", static_cast<std::int64_t>(r.params.at("worst_k")));
            row.emplace_back("worst_h", static_cast<std::int64_t>(r.params.at("worst_h")));
            row.emplace_back("cases", static_cast<std::int64_t>(r.params.at("cases")));
            append_bound_cells(row, r);
            env.rows.push_back(std::move(row));
        }
        summarize_sweep(env, sweep);
        return env;
    }
    if (o.bound == "lemma31" || o.bound == "lemma32") {
        if (o.mod < 2) throw std::invalid_argument("--mod is required");
        const int l_min = o.l_min > 0 ? o.l_min : 1;
        const int l_max = o.l_max > 0 ? o.l_max : 120;
        env.params.emplace_back("mod", std::to_string(o.mod));
        env.params.emplace_back("l_min", std::to_string(l_min));
        env.params.emplace_back("l_max", std::to_string(l_max));
        SweepResult sweep;
        const std::uint64_t q = static_cast<std::uint64_t>(o.mod);
        if (o.c >= 0) {
            for (int l = l_min; l <= l_max; ++l) {
                BoundReport r = o.bound == "lemma31" ? check_lemma31(o.base, q, o.c, l)
                                                     : check_lemma32(o.base, q, o.c, l);
                ++sweep.cases_checked;
                if (!r.satisfied) ++sweep.violations;
                sweep.rows.push_back(std::move(r));
            }
        } else {
            sweep = o.bound == "lemma31" ? sweep_lemma31(o.base, q, l_min, l_max)
                                         : sweep_lemma32(o.base, q, l_min, l_max);
        }
        for (const BoundReport& r : sweep.rows) {
            Row row;
            row.emplace_back("c", static_cast<std::int64_t>(r.params.at("c")));
            row.emplace_back("L", static_cast<std::int64_t>(r.params.at("L")));
            if (o.bound == "lemma31") {
                row.emplace_back("theta", r.params.at("theta"));
                row.emplace_back("informative", r.params.at("informative") != 0.0);
            }
            append_bound_cells(row, r);
            env.rows.push_back(std::move(row));
        }
        summarize_sweep(env, sweep);
        return env;
    }
    if (o.bound == "prop41" || o.bound == "prop42") {
        if (o.mod < 2) throw std::invalid_argument("--mod is required");
        env.params.emplace_back("mod", std::to_string(o.mod));
        const std::uint64_t q = static_cast<std::uint64_t>(o.mod);
        int l_min = o.l_min, l_max = o.l_max;
        if (o.length > 0) l_min = l_max = o.length;
        if (l_min <= 0 || l_max < l_min)
            throw std::invalid_argument("pass --length or --Lmin/--Lmax");
        std::uint64_t violations = 0;
        for (int l = l_min; l <= l_max; ++l) {
            const BoundReport r = o.bound == "prop41" ? check_prop41(o.base, q, l)
                                                      : check_prop42(o.base, q, l);
            if (!r.satisfied) ++violations;
            Row row;
            row.emplace_back("L", static_cast<std::int64_t>(l));
            if (o.bound == "prop41")
                row.emplace_back("ord", static_cast<std::int64_t>(r.params.at("ord")));
            append_bound_cells(row, r);
            env.rows.push_back(std::move(row));
        }
        env.params.emplace_back("violations", std::to_string(violations));
        env.params.emplace_back("all_satisfied", violations == 0 ? "true" : "false");
        return env;
    }
    if (o.bound == "decay") {
        if (o.mod < 2) throw std::invalid_argument("--mod is required");
        env.params.emplace_back("mod", std::to_string(o.mod));
        if (!o.xs.empty()) {
            const CumulativeDecayReport rep =
                check_cumulative_decay(o.base, o.mod, parse_bigint_list(o.xs), o.factor);
            env.params.emplace_back("branch", to_string(rep.branch));
            env.params.emplace_back("xi", format_double(rep.xi));
            env.params.emplace_back("factor", format_double(rep.bound_factor));
            env.params.emplace_back("bounded", rep.bounded ? "true" : "false");
            // Per-row bound: this x's empirical constant against the allowed
            // growth over the first nonzero constant.
            double reference = 0.0;
            for (const auto& row : rep.rows)
                if (row.empirical_constant > 0.0) {
                    reference = row.empirical_constant;
                    break;
                }
            for (const auto& row : rep.rows) {
                const double lhs_log = std::log(row.empirical_constant);
                const double rhs_log = std::log(rep.bound_factor * reference);
                env.rows.push_back({{"x", str(row.x)},
                                    {"total", str(row.total)},
                                    {"disc_num", str(row.disc_num)},
                                    {"empirical_constant", row.empirical_constant},
                                    {"lhs_log", lhs_log},
                                    {"rhs_log", rhs_log},
                                    {"satisfied", lhs_log <= rhs_log + kLogSlack}});
            }
            return env;
        }
        const int l_min = o.l_min > 0 ? o.l_min : 1;
        const int l_max = o.l_max > 0 ? o.l_max : 60;
        const DecayFit fit = fit_decay(o.base, o.mod, l_min, l_max);
        env.params.emplace_back("branch", to_string(fit.branch));
        env.params.emplace_back("xi", format_double(fit.xi));
        env.params.emplace_back("A", format_double(fit.A));
        env.params.emplace_back("xi_measured", format_double(fit.xi_measured));
        env.params.emplace_back("xi_measured_below_floor",
                                fit.xi_measured_below_floor ? "true" : "false");
        env.params.emplace_back("cumulative_constant", format_double(fit.cumulative_constant));
        for (const auto& [l, ratio] : fit.series) {
            const double lhs_log = std::log(ratio);
            const double rhs_log = std::log(fit.A) + l * std::log(fit.xi);
            env.rows.push_back({{"L", static_cast<std::int64_t>(l)},
                                {"normalized_discrepancy", ratio},
                                {"lhs_log", lhs_log},
                                {"rhs_log", rhs_log},
                                {"satisfied", lhs_log <= rhs_log + kLogSlack}});
        }
        return env;
    }
    throw std::invalid_argument("unknown bound: " + o.bound);
}

struct CensusOpts {
    int base = 10;
    std::string x;
};

ReportEnvelope run_census(const CensusOpts& o) {
    const CensusReport rep = census(o.base, parse_bigint(o.x));
    ReportEnvelope env;
    env.command = "census";
    env.params = {{"base", std::to_string(o.base)},
                  {"x", str(rep.x)},
                  {"palindromes", str(rep.palindrome_count)},
                  {"prime_palindromes", str(rep.prime_palindrome_count)},
                  {"density", format_double(rep.density)},
                  {"envelope", format_double(rep.envelope)},
                  {"probabilistic", rep.probabilistic ? "true" : "false"}};
    for (const auto& lc : rep.per_length)
        env.rows.push_back({{"length", static_cast<std::int64_t>(lc.length)},
                            {"palindromes", str(lc.palindromes)},
                            {"primes", str(lc.primes)}});
    return env;
}

struct SieveOpts {
    int base = 2;
    std::string x;
    double y = -1.0;
    int h = 0;
    std::vector<std::uint64_t> primes;
    bool compare_census = false;
};

ReportEnvelope run_sieve(const SieveOpts& o) {
    const mpz_class x = parse_bigint(o.x);
    double y = o.y;
    int h = o.h;
    if (y < 0 || h < 1) {
        const SieveParams defaults = default_sieve_params(x);
        if (y < 0) y = defaults.y;
        if (h < 1) h = defaults.h;
    }
    const SieveEvaluation ev = brun_truncated_bound(
        o.base, x, y, h, o.primes.empty() ? nullptr : &o.primes);
    ReportEnvelope env;
    env.command = "sieve";
    env.params = {{"base", std::to_string(o.base)},
                  {"x", str(x)},
                  {"y", format_double(y)},
                  {"h", std::to_string(h)},
                  {"Q", str(ev.Q.value)},
                  {"terms", std::to_string(ev.terms.size())},
                  {"truncated_sum", str(ev.truncated_sum)},
                  {"upper_bound", format_double(ev.upper_bound)}};
    if (o.compare_census) {
        const CensusReport rep = census(o.base, x);
        env.params.emplace_back("prime_palindromes", str(rep.prime_palindrome_count));
        env.params.emplace_back(
            "bound_holds", sieve_bounds_count(ev, rep.prime_palindrome_count) ? "true" : "false");
    }
    for (const auto& term : ev.terms)
        env.rows.push_back({{"q", str(term.q)},
                            {"mu", static_cast<std::int64_t>(term.mu)},
                            {"omega", static_cast<std::int64_t>(term.omega)},
                            {"a_q", str(term.a_q)}});
    return env;
}

struct DensityOpts {
    int base = 10;
    std::vector<std::string> xs;
};

ReportEnvelope run_density(const DensityOpts& o) {
    const DensityTable table = density_series(o.base, parse_bigint_list(o.xs));
    ReportEnvelope env;
    env.command = "density";
    env.params = {{"base", std::to_string(o.base)},
                  {"nonincreasing", table.nonincreasing ? "true" : "false"},
                  {"strictly_decreasing", table.strictly_decreasing ? "true" : "false"}};
    for (const auto& row : table.rows)
        env.rows.push_back({{"x", str(row.x)},
                            {"palindromes", str(row.palindromes)},
                            {"primes", str(row.primes)},
                            {"density", row.density},
                            {"envelope", row.envelope},
                            {"density_envelope_ratio", row.density_envelope_ratio},
                            {"density_log_x", row.density_log_x}});
    return env;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"palindist: palindrome enumeration, residue-class counting, "
                 "exponential sums, bound verification, and a prime census"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts global;
    app.add_option("--format", global.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--threads", global.threads, "Worker threads for sweeps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", global.seed, "Reserved; output is deterministic");

    EnumerateOpts enumerate_opts;
    auto* cmd_enumerate = app.add_subcommand("enumerate", "Palindromes in [lo, hi]");
    cmd_enumerate->add_option("--base", enumerate_opts.base)->check(CLI::Range(2, 1024));
    cmd_enumerate->add_option("--lo", enumerate_opts.lo);
    cmd_enumerate->add_option("--hi", enumerate_opts.hi)->required();
    cmd_enumerate->add_option("--limit", enumerate_opts.limit, "Emit at most this many rows");

    CountOpts count_opts;
    auto* cmd_count = app.add_subcommand("count", "Exact palindrome counts, optionally by residue class");
    cmd_count->add_option("--base", count_opts.base)->check(CLI::Range(2, 1024));
    cmd_count->add_option("--length", count_opts.length, "Count P_L");
    cmd_count->add_option("--upto", count_opts.upto, "Count P(x); accepts g^k syntax");
    cmd_count->add_option("--mod", count_opts.mod, "Split counts by residue mod q");

    ExpsumOpts expsum_opts;
    auto* cmd_expsum = app.add_subcommand("expsum", "S_L(c) = sum over P_L of e_q(c*n)");
    cmd_expsum->add_option("--base", expsum_opts.base)->check(CLI::Range(2, 1024));
    cmd_expsum->add_option("--length", expsum_opts.length)->required();
    cmd_expsum->add_option("--mod", expsum_opts.mod)->required();
    cmd_expsum->add_option("--c", expsum_opts.c)->required();
    cmd_expsum->add_option("--method", expsum_opts.method)
        ->check(CLI::IsMember({"brute", "product", "both"}));

    VerifyOpts verify_opts;
    auto* cmd_verify = app.add_subcommand("verify", "Check one family of bounds over a sweep");
    cmd_verify->add_option("bound", verify_opts.bound, "Which bound to verify")
        ->required()
        ->check(CLI::IsMember({"lemma21", "lemma22", "lemma31", "lemma32", "prop41",
                               "prop42", "decay"}));
    cmd_verify->add_option("--base", verify_opts.base)->check(CLI::Range(2, 1024));
    cmd_verify->add_option("--qmax", verify_opts.qmax, "Sweep moduli up to qmax (lemma21/lemma22)");
    cmd_verify->add_option("--mod", verify_opts.mod, "Modulus (lemma31/32, prop41/42, decay)");
    cmd_verify->add_option("--c", verify_opts.c, "Fix c instead of sweeping (lemma31/32)");
    cmd_verify->add_option("--Lmin", verify_opts.l_min);
    cmd_verify->add_option("--Lmax", verify_opts.l_max);
    cmd_verify->add_option("--length", verify_opts.length, "Single length (prop41/42)");
    cmd_verify->add_option("--xs", verify_opts.xs, "Cumulative mode x values (decay)")
        ->delimiter(',');
    cmd_verify->add_option("--factor", verify_opts.factor,
                           "Allowed growth of the empirical constant (decay)");

    CensusOpts census_opts;
    auto* cmd_census = app.add_subcommand("census", "Prime-palindrome census over P(x)");
    cmd_census->add_option("--base", census_opts.base)->check(CLI::Range(2, 1024));
    cmd_census->add_option("--x", census_opts.x)->required();

    SieveOpts sieve_opts;
    auto* cmd_sieve = app.add_subcommand("sieve", "Truncated inclusion-exclusion upper bound");
    cmd_sieve->set_help_flag("--help", "Print help"); // frees -h for the depth option below
    cmd_sieve->add_option("--base", sieve_opts.base)->check(CLI::Range(2, 1024));
    cmd_sieve->add_option("--x", sieve_opts.x)->required();
    cmd_sieve->add_option("--y", sieve_opts.y, "Sieve level (default from x)");
    cmd_sieve->add_option("--h", sieve_opts.h, "Truncation depth (default from x)");
    cmd_sieve->add_option("--primes", sieve_opts.primes, "Explicit sieve prime set")
        ->delimiter(',');
    cmd_sieve->add_flag("--census", sieve_opts.compare_census,
                        "Also run the census and check the bound");

    DensityOpts density_opts;
    auto* cmd_density = app.add_subcommand("density", "Prime-palindrome density series");
    cmd_density->add_option("--base", density_opts.base)->check(CLI::Range(2, 1024));
    cmd_density->add_option("--xs", density_opts.xs)->required()->delimiter(',');

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        ReportEnvelope env;
        if (cmd_enumerate->parsed())
            env = run_enumerate(enumerate_opts);
        else if (cmd_count->parsed())
            env = run_count(count_opts);
        else if (cmd_expsum->parsed())
            env = run_expsum(expsum_opts);
        else if (cmd_verify->parsed())
            env = run_verify(verify_opts, global);
        else if (cmd_census->parsed())
            env = run_census(census_opts);
        else if (cmd_sieve->parsed())
            env = run_sieve(sieve_opts);
        else
            env = run_density(density_opts);
        emit(env, global.format, out);
        return 0;
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        err << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "precondition error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace palindist::cli
