// Acceptance run: one line per criterion with its worst measured value and wall time.
#include "rcu/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace {

struct Criterion {
    int id;
    const char* suite;
    const char* title;
    double limit_seconds;
};

const std::vector<Criterion> kCriteria{
    {1, "shift_register", "shift-register exactness", 10},
    {2, "nilpotent_sas", "nilpotent trig-SAS exactness", 5},
    {3, "block_esn", "block ESN equivalence", 10},
    {4, "lemma2", "index-sequence products, exhaustive", 5},
    {5, "lemma1", "truncated conditional error convergence", 30},
    {6, "esp", "ESP soundness", 10},
    {7, "universality", "ESN universality trend", 180},
    {8, "stationarity", "stationarity norm equality", 60},
    {9, "lognormal", "lognormal moment diagnostic", 30},
    {10, "direct_sum", "direct-sum linearity", 5},
};

// How close a result is to its threshold; larger is tighter. Rows checked against ">= 0" only
// record values and are skipped.
double tightness(const rcu::PropertyResult& r)
{
    if (!r.passed) return std::numeric_limits<double>::infinity();
    const double m = r.measured, t = r.threshold;
    if (r.relation == "<" || r.relation == "<=") return t > 0 ? m / t : 0.0;
    if (r.relation == ">" || r.relation == ">=") return (t > 0 && m > 0) ? t / m : -1.0;
    return 0.0;
}

}  // namespace

int main()
{
    int failures = 0;
    for (const auto& c : kCriteria) {
        const auto report = rcu::run_suite(c.suite);
        const rcu::PropertyResult* worst = nullptr;
        std::size_t passed = 0;
        for (const auto& r : report.results) {
            passed += r.passed;
            if (!worst || tightness(r) > tightness(*worst)) worst = &r;
        }
        const bool in_time = report.seconds < c.limit_seconds;
        const bool ok = report.passed() && in_time && !report.results.empty();
        failures += !ok;
        std::printf("%s [%2d] %-42s %zu/%zu checks", ok ? "PASS" : "FAIL", c.id, c.title, passed,
                    report.results.size());
        if (worst)
            std::printf("; tightest: %s = %.4g %s %.4g", worst->name.c_str(), worst->measured, worst->relation.c_str(),
                        worst->threshold);
        std::printf("; %.2f s (limit %.0f s)\n", report.seconds, c.limit_seconds);
        for (const auto& r : report.results)
            if (!r.passed)
                std::printf("       failed: %s = %.6g %s %.6g %s\n", r.name.c_str(), r.measured, r.relation.c_str(),
                            r.threshold, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(kCriteria.size()) - failures, kCriteria.size());
    return failures == 0 ? 0 : 1;
}
