#include "rcu/metrics.hpp"

#include "rcu/errors.hpp"
#include "rcu/parallel.hpp"
#include "rcu/rng.hpp"
#include "rcu/targets.hpp"

#include <cstdlib>

namespace rcu {

namespace {

std::vector<double> evaluate_all(const FunctionalSpec& spec, const std::vector<Window>& windows)
{
    std::vector<double> y(windows.size());
    parallel_for(windows.size(), [&](std::size_t m) { y[m] = evaluate_functional(spec, windows[m]); });
    return y;
}

}  // namespace

std::vector<double> reservoir_outputs(const ReservoirModel& model, const std::vector<Window>& windows)
{
    model.validate();
    const Eigen::MatrixXd X = final_states(model.system, windows);
    std::vector<double> y(windows.size());
    if (!model.readout) {
        const Eigen::VectorXd* W = nullptr;
        if (const auto* t = std::get_if<TrigSAS>(&model.system)) W = &t->W;
        if (const auto* e = std::get_if<EchoStateNetwork>(&model.system)) W = &e->W;
        const Eigen::VectorXd out = X.transpose() * *W;
        for (std::size_t m = 0; m < y.size(); ++m) y[m] = out(static_cast<Eigen::Index>(m));
        return y;
    }
    parallel_for(windows.size(), [&](std::size_t m) {
        y[m] = eval_readout(*model.readout, X.col(static_cast<Eigen::Index>(m)));
    });
    return y;
}

LpEstimate lp_norm(const FunctionalSpec& spec, const ProcessSampler& sampler, double p, std::size_t T, std::size_t M,
                   std::uint64_t seed)
{
    require_admissible(spec, sampler);
    const auto windows = sample_windows(sampler, T, M, seed);
    const auto y = evaluate_all(spec, windows);
    return lp_from_samples(y, p, seed);
}

LpEstimate lp_norm(const ReservoirModel& model, const ProcessSampler& sampler, double p, std::size_t T, std::size_t M,
                   std::uint64_t seed)
{
    const auto windows = sample_windows(sampler, T, M, seed);
    const auto y = reservoir_outputs(model, windows);
    return lp_from_samples(y, p, seed);
}

LpEstimate approx_error(const FunctionalSpec& target, const ReservoirModel& model, const ProcessSampler& sampler,
                        double p, std::size_t T, std::size_t M, std::uint64_t seed,
                        std::optional<std::uint64_t> train_seed)
{
    if (train_seed && *train_seed == seed)
        throw DomainError("evaluation seed " + std::to_string(seed) + " equals the training seed");
    const auto rep = certify_esp(model.system);
    if (!rep.certified)
        throw EspError(family_name(model.system) + " reservoir has no ESP certificate (" + to_string(rep.method) +
                       " bound " + std::to_string(rep.bound) + ")");
    require_admissible(target, sampler);
    const auto windows = sample_windows(sampler, T, M, seed);
    const auto h = evaluate_all(target, windows);
    auto diff = reservoir_outputs(model, windows);
    for (std::size_t m = 0; m < diff.size(); ++m) diff[m] = h[m] - diff[m];
    return lp_from_samples(diff, p, seed);
}

std::vector<LpEstimate> shift_invariance_probe(const ProcessSampler& sampler, const FunctionalSpec& spec, double p,
                                               const std::vector<long>& shifts, std::size_t T, std::size_t M,
                                               std::uint64_t seed)
{
    if (!sampler.stationary()) throw DomainError("shift probes need a stationary sampler");
    require_admissible(spec, sampler);
    std::vector<LpEstimate> out;
    out.reserve(shifts.size());
    for (std::size_t k = 0; k < shifts.size(); ++k) {
        if (shifts[k] > 0) throw DomainError("shifts must be <= 0, got " + std::to_string(shifts[k]));
        const auto extra = static_cast<std::size_t>(std::labs(shifts[k]));
        const std::uint64_t s = derive_seed(seed, k);
        const auto windows = sample_windows(sampler, T + extra, M, s);
        std::vector<double> y(M);
        parallel_for(M, [&](std::size_t m) { y[m] = evaluate_functional(spec, windows[m].shifted(extra, T)); });
        out.push_back(lp_from_samples(y, p, s));
    }
    return out;
}

LpEstimate filter_norm(const FunctionalSpec& spec, const ProcessSampler& sampler, double p,
                       const std::vector<long>& shifts, std::size_t T, std::size_t M, std::uint64_t seed)
{
    if (shifts.empty()) throw DomainError("filter_norm needs at least one shift");
    const auto est = shift_invariance_probe(sampler, spec, p, shifts, T, M, seed);
    std::size_t best = 0;
    for (std::size_t k = 1; k < est.size(); ++k)
        if (est[k].value > est[best].value) best = k;
    auto r = est[best];
    r.seed = seed;
    return r;
}

}  // namespace rcu
