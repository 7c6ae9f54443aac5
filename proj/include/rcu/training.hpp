#pragma once

// Readout fitting over sampled reservoir states.
//
// Each of the M paths is a fresh window of length T under cfg.seed. The reservoir runs from the
// zero state over the whole window; every state whose history covers at least `washout` older
// inputs becomes one regression row, paired with the target evaluated on the same history. Rows
// from paths with index % 5 == 4 form the holdout set (20%, split by path).

#include "rcu/functional.hpp"
#include "rcu/processes.hpp"
#include "rcu/readouts.hpp"
#include "rcu/reservoirs.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rcu {

struct TrainConfig {
    double ridge = 1e-8;
    std::size_t paths = 1000;
    std::size_t window_length = 50;
    std::size_t washout = 49;
    std::uint64_t seed = 1;
};

struct TrainDiagnostics {
    double lambda = 0.0;
    std::size_t paths = 0;
    std::size_t train_rows = 0;
    std::size_t holdout_rows = 0;
    double rmse_train = 0.0;
    /// NaN when no path falls in the holdout split.
    double rmse_holdout = 0.0;
    std::size_t coeff_count = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

/// Regression rows collected from sampled paths.
struct StateSamples {
    Eigen::MatrixXd states;  // rows = samples, cols = N
    Eigen::VectorXd target;
    std::vector<bool> holdout;
};

/// Throws DomainError if washout >= T, if the target's memory exceeds the washout, or if fewer than
/// 2 paths are requested; DimensionError on channel mismatch.
StateSamples collect_state_samples(const ReservoirSystem& system, const FunctionalSpec& target,
                                   const ProcessSampler& sampler, const TrainConfig& cfg);

/// Fits a ridge regression of the target on the given feature rows and fills the diagnostics.
struct FeatureFit {
    Eigen::VectorXd coefficients;
    TrainDiagnostics diagnostics;
};
FeatureFit fit_features(const Eigen::MatrixXd& features, const StateSamples& samples, const TrainConfig& cfg);

struct LinearFit {
    LinearReadout readout;
    TrainDiagnostics diagnostics;
};

struct PolynomialFit {
    PolynomialReadout readout;
    TrainDiagnostics diagnostics;
};

struct NetworkFit {
    NetworkReadout readout;
    TrainDiagnostics diagnostics;
};

/// W minimizing the ridge objective for y ~ W^T x. Throws EspError if the system is not certified,
/// SingularSystem for a singular design with ridge = 0.
LinearFit fit_linear_readout(const ReservoirSystem& system, const FunctionalSpec& target,
                             const ProcessSampler& sampler, const TrainConfig& cfg);

/// Polynomial of total degree d in the reservoir state. If a moment diagnostic is supplied and its
/// verdict is suspect_infinite a warning is recorded; the fit proceeds regardless.
PolynomialFit fit_polynomial_readout(const LinearReservoir& system, std::size_t degree, const FunctionalSpec& target,
                                     const ProcessSampler& sampler, const TrainConfig& cfg,
                                     const MomentDiagnostic* moment = nullptr);

struct NetworkFeatureOptions {
    /// alpha_j ~ N(0, scale^2 / N I).
    double weight_scale = 1.0;
    Activation activation = Activation::tanh;
};

/// Random hidden layer with output weights fitted by ridge regression.
///
/// Unit j draws alpha_j = scale g / sqrt(N), g ~ N(0, I_N), and then theta_j uniformly between the
/// smallest and largest value of alpha_j . x over the training states, all from a stream keyed by
/// (derive_seed(cfg.seed, features), j). The first k units of a k' > k network are therefore the
/// units of the k network.
NetworkFit fit_network_readout(const LinearReservoir& system, std::size_t hidden, const FunctionalSpec& target,
                               const ProcessSampler& sampler, const TrainConfig& cfg,
                               const NetworkFeatureOptions& opts = {});

/// Hidden layer (alpha, theta) for the given training states, following the rule above.
NetworkReadout draw_network_features(const Eigen::MatrixXd& train_states, std::size_t hidden,
                                     const NetworkFeatureOptions& opts, std::uint64_t seed);

}  // namespace rcu
