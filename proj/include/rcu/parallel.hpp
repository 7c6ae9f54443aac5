#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace rcu {

/// Worker count: $RCU_WORKERS when set to a positive integer, otherwise the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Indices are split into contiguous chunks, one per worker.
/// The body must only write to storage owned by index i; results are then independent of the
/// worker count. The first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation; the result depends only on the order of the values.
double pairwise_sum(std::span<const double> values);

inline double pairwise_mean(std::span<const double> values)
{
    return values.empty() ? 0.0 : pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace rcu
