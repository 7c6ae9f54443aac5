#pragma once

#include "rcu/functional.hpp"
#include "rcu/lp.hpp"
#include "rcu/processes.hpp"

#include <cstddef>
#include <cstdint>

namespace rcu {

struct ConditionalErrorOptions {
    /// Window length used to evaluate H; must exceed K.
    std::size_t window_length = 64;
    /// Resampled pasts per outer path for E[H | F_{-K}].
    std::size_t inner_samples = 32;
};

/// Estimate of ||H(Z) - E[H(Z) | F_{-K}]||_p with F_{-K} = sigma(Z_0, ..., Z_{-K}).
///
/// For each outer path the K+1 most recent rows are kept and rows older than lag K are redrawn
/// `inner_samples` times; the conditional expectation is the mean of H over those redraws. This
/// needs the past to be independent of the recent values, so only i.i.d. samplers are accepted.
/// The difference H - mean is scaled by sqrt(L/(L+1)), L the inner sample count: the inner mean
/// is independent of H given F_{-K}, so E|H - mean|^2 = (1 + 1/L) E|H - E[H|F_{-K}]|^2 and the
/// scaling removes that inflation exactly for p = 2 (and for all p when H is conditionally Gaussian).
///
/// Throws DomainError for dependent samplers, M < 2, p < 1 or window_length <= K.
LpEstimate truncated_conditional_error(const FunctionalSpec& spec, std::size_t K, const ProcessSampler& sampler,
                                       double p, std::size_t M, std::uint64_t seed,
                                       const ConditionalErrorOptions& opts = {});

}  // namespace rcu
