#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace rcu {

/// Monte Carlo estimate of ||X||_p = E[|X|^p]^{1/p}.
struct LpEstimate {
    double p = 2.0;
    double value = 0.0;
    /// Delta-method standard error of `value`.
    double std_error = 0.0;
    std::size_t M = 0;
    std::uint64_t seed = 0;
    /// Sample kurtosis of |X|^p exceeded 100; the standard error is then unreliable.
    bool heavy_tail_warning = false;
};

inline constexpr double kHeavyTailKurtosis = 100.0;

/// Estimate from samples of X. Throws DomainError unless p >= 1 and at least 2 samples are given,
/// NumericOverflow if |X|^p overflows.
LpEstimate lp_from_samples(std::span<const double> samples, double p, std::uint64_t seed);

/// sqrt(a.std_error^2 + b.std_error^2).
double combined_stderr(const LpEstimate& a, const LpEstimate& b);

}  // namespace rcu
