#pragma once

// Monte Carlo L^p criteria on fresh sample paths.

#include "rcu/functional.hpp"
#include "rcu/lp.hpp"
#include "rcu/processes.hpp"
#include "rcu/reservoirs.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace rcu {

/// ||H(Z)||_p from M windows of length T. Choose T so that truncation_bound(spec, T) is well below
/// the standard error. Throws DomainError when the sampler is outside the target's whitelist.
LpEstimate lp_norm(const FunctionalSpec& spec, const ProcessSampler& sampler, double p, std::size_t T,
                   std::size_t M, std::uint64_t seed);

/// ||H^RC(Z)||_p for a reservoir model run over windows of length T.
LpEstimate lp_norm(const ReservoirModel& model, const ProcessSampler& sampler, double p, std::size_t T,
                   std::size_t M, std::uint64_t seed);

/// ||H(Z) - H^RC(Z)||_p on fresh windows of length T; the reservoir starts from the zero state at
/// the oldest row, as in training.
///
/// Throws DomainError if `seed` equals the training seed, EspError if the system is not certified.
LpEstimate approx_error(const FunctionalSpec& target, const ReservoirModel& model, const ProcessSampler& sampler,
                        double p, std::size_t T, std::size_t M, std::uint64_t seed,
                        std::optional<std::uint64_t> train_seed = std::nullopt);

/// Estimates of ||H(T_{-t} Z)||_p for each shift t <= 0. Shift t generates paths T + |t| long and
/// evaluates H at time t, i.e. on lags |t| .. |t|+T-1. Shift k draws its own paths under
/// derive_seed(seed, k) so the estimates are independent.
///
/// Throws DomainError for positive shifts or a nonstationary sampler.
std::vector<LpEstimate> shift_invariance_probe(const ProcessSampler& sampler, const FunctionalSpec& spec, double p,
                                               const std::vector<long>& shifts, std::size_t T, std::size_t M,
                                               std::uint64_t seed);

/// sup over t of ||H(T_{-t} Z)||_p, realized as the largest per-shift estimate; its standard error
/// is that of the maximizing shift.
LpEstimate filter_norm(const FunctionalSpec& spec, const ProcessSampler& sampler, double p,
                       const std::vector<long>& shifts, std::size_t T, std::size_t M, std::uint64_t seed);

/// Readout outputs for a batch of windows (one value per window).
std::vector<double> reservoir_outputs(const ReservoirModel& model, const std::vector<Window>& windows);

}  // namespace rcu
