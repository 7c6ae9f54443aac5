#include "rcu/lp.hpp"

#include "rcu/errors.hpp"
#include "rcu/parallel.hpp"

#include <cmath>
#include <vector>

namespace rcu {

LpEstimate lp_from_samples(std::span<const double> samples, double p, std::uint64_t seed)
{
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("L^p exponent must lie in [1, inf)");
    if (samples.size() < 2) throw DomainError("L^p estimate needs at least 2 samples");
    const std::size_t M = samples.size();
    std::vector<double> powers(M);
    for (std::size_t i = 0; i < M; ++i) {
        powers[i] = p == 2.0 ? samples[i] * samples[i] : std::pow(std::abs(samples[i]), p);
        if (!std::isfinite(powers[i])) throw NumericOverflow("|X|^p is not finite for sample " + std::to_string(i));
    }
    const double mean = pairwise_mean(powers);
    std::vector<double> c2(M), c4(M);
    for (std::size_t i = 0; i < M; ++i) {
        const double d = powers[i] - mean;
        c2[i] = d * d;
        c4[i] = c2[i] * c2[i];
    }
    const double m2 = pairwise_mean(c2);
    const double m4 = pairwise_mean(c4);
    const double var = m2 * static_cast<double>(M) / static_cast<double>(M - 1);

    LpEstimate e;
    e.p = p;
    e.M = M;
    e.seed = seed;
    e.value = std::pow(mean, 1.0 / p);
    if (mean > 0.0) {
        const double se_moment = std::sqrt(var / static_cast<double>(M));
        e.std_error = std::pow(mean, 1.0 / p - 1.0) * se_moment / p;
    }
    e.heavy_tail_warning = m2 > 0.0 && m4 / (m2 * m2) > kHeavyTailKurtosis;
    return e;
}

double combined_stderr(const LpEstimate& a, const LpEstimate& b) { return std::hypot(a.std_error, b.std_error); }

}  // namespace rcu
