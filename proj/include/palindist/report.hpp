#pragma once

#include <limits>
#include <map>
#include <string>

namespace palindist {

enum class BoundId {
    lemma21,
    lemma22,
    lemma31,
    lemma32,
    prop41,
    prop42,
    cor45,
    cor46,
};

const char* to_string(BoundId id);

// Additive slack allowed in log scale when deciding `satisfied`; covers
// rounding accumulated over a few hundred factor multiplications.
inline constexpr double kLogSlack = 1e-6;

// One bound check.  lhs/rhs are natural logs of the two sides; an exact-zero
// left side is log -inf and satisfies any bound.
struct BoundReport {
    BoundId bound_id;
    std::map<std::string, double> params;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    bool satisfied = false;
    double slack_log = 0.0;
};

inline BoundReport make_bound_report(BoundId id, std::map<std::string, double> params,
                                     double lhs_log, double rhs_log) {
    BoundReport r;
    r.bound_id = id;
    r.params = std::move(params);
    r.lhs_log = lhs_log;
    r.rhs_log = rhs_log;
    r.satisfied = lhs_log <= rhs_log + kLogSlack;
    r.slack_log = lhs_log == -std::numeric_limits<double>::infinity()
                      ? std::numeric_limits<double>::infinity()
                      : rhs_log - lhs_log;
    return r;
}

} // namespace palindist
