#include "rcu/conditional.hpp"

#include "rcu/errors.hpp"
#include "rcu/parallel.hpp"
#include "rcu/rng.hpp"

#include <cmath>
#include <vector>

namespace rcu {

LpEstimate truncated_conditional_error(const FunctionalSpec& spec, std::size_t K, const ProcessSampler& sampler,
                                       double p, std::size_t M, std::uint64_t seed, const ConditionalErrorOptions& opts)
{
    if (!sampler.independent_values())
        throw DomainError("past resampling requires independent innovations; " + sampler.describe() +
                          " has dependent values");
    if (M < 2) throw DomainError("truncated_conditional_error needs M >= 2");
    if (!(p >= 1.0)) throw DomainError("L^p exponent must lie in [1, inf)");
    const std::size_t T = opts.window_length;
    if (T <= K) throw DomainError("window_length must exceed the cutoff K");
    if (opts.inner_samples < 1) throw DomainError("inner_samples must be positive");
    const std::size_t L = opts.inner_samples;
    const auto n = static_cast<Eigen::Index>(sampler.channels());
    const auto older = static_cast<Eigen::Index>(T - K - 1);
    const std::uint64_t inner_seed = derive_seed(seed, 0x70A57);
    const double scale = std::sqrt(static_cast<double>(L) / static_cast<double>(L + 1));

    std::vector<double> diffs(M);
    parallel_for(M, [&](std::size_t m) {
        Eigen::MatrixXd path(static_cast<Eigen::Index>(T), n);
        generate_path(sampler, seed, m, path);
        const double h = evaluate_functional(spec, Window(path));
        std::vector<double> inner(L);
        Eigen::MatrixXd past(older, n);
        for (std::size_t l = 0; l < L; ++l) {
            if (older > 0) {
                generate_path(sampler, inner_seed, m * L + l, past);
                path.bottomRows(older) = past;
            }
            inner[l] = evaluate_functional(spec, Window(path));
        }
        diffs[m] = scale * (h - pairwise_mean(inner));
    });
    return lp_from_samples(diffs, p, seed);
}

}  // namespace rcu
