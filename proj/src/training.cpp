#include "rcu/training.hpp"

#include "rcu/errors.hpp"
#include "rcu/least_squares.hpp"
#include "rcu/parallel.hpp"
#include "rcu/rng.hpp"

#include <cmath>
#include <limits>

namespace rcu {

namespace {

constexpr std::uint64_t kFeatureTag = 0xFEA7;

bool is_holdout(std::size_t path) { return path % 5 == 4; }

void require_certified(const ReservoirSystem& s)
{
    const auto rep = certify_esp(s);
    if (!rep.certified)
        throw EspError(family_name(s) + " reservoir has no ESP certificate (" + to_string(rep.method) +
                       " bound " + std::to_string(rep.bound) + ")");
}

double rmse(const Eigen::VectorXd& r)
{
    return r.size() == 0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

}  // namespace

StateSamples collect_state_samples(const ReservoirSystem& system, const FunctionalSpec& target,
                                   const ProcessSampler& sampler, const TrainConfig& cfg)
{
    const std::size_t T = cfg.window_length;
    if (cfg.washout >= T) throw DomainError("washout must be smaller than the window length");
    if (cfg.paths < 2) throw DomainError("training needs at least 2 paths");
    if (const auto K = target.memory(); K && *K > cfg.washout)
        throw DomainError("target memory " + std::to_string(*K) + " exceeds the washout " + std::to_string(cfg.washout));
    if (sampler.channels() != input_dimension(system))
        throw DimensionError("sampler has " + std::to_string(sampler.channels()) + " channels, reservoir expects " +
                             std::to_string(input_dimension(system)));

    const std::size_t per_path = T - cfg.washout;
    const std::size_t M = cfg.paths;
    const auto N = static_cast<Eigen::Index>(state_dimension(system));
    StateSamples out;
    out.states.resize(static_cast<Eigen::Index>(M * per_path), N);
    out.target.resize(static_cast<Eigen::Index>(M * per_path));
    out.holdout.resize(M * per_path);

    if (per_path == 1 && !std::holds_alternative<TrigSAS>(system)) {
        const auto windows = sample_windows(sampler, T, M, cfg.seed);
        out.states = final_states(system, windows).transpose();
        std::vector<double> y(M);
        parallel_for(M, [&](std::size_t m) { y[m] = evaluate_functional(target, windows[m]); });
        for (std::size_t m = 0; m < M; ++m) {
            out.target(static_cast<Eigen::Index>(m)) = y[m];
            out.holdout[m] = is_holdout(m);
        }
        return out;
    }

    parallel_for(M, [&](std::size_t m) {
        const Window w = sample_window(sampler, T, cfg.seed, m);
        const Trajectory tr = run_reservoir(system, w);
        for (std::size_t k = 0; k < per_path; ++k) {
            const auto row = static_cast<Eigen::Index>(m * per_path + k);
            out.states.row(row) = tr.states.row(static_cast<Eigen::Index>(k));
            out.target(row) = evaluate_functional(target, w.shifted(k, T - k));
            out.holdout[static_cast<std::size_t>(row)] = is_holdout(m);
        }
    });
    return out;
}

FeatureFit fit_features(const Eigen::MatrixXd& features, const StateSamples& samples, const TrainConfig& cfg)
{
    const auto rows = features.rows();
    Eigen::Index n_train = 0;
    for (bool h : samples.holdout) n_train += h ? 0 : 1;
    const Eigen::Index n_hold = rows - n_train;
    Eigen::MatrixXd Xtr(n_train, features.cols()), Xho(n_hold, features.cols());
    Eigen::VectorXd ytr(n_train), yho(n_hold);
    for (Eigen::Index r = 0, a = 0, b = 0; r < rows; ++r) {
        if (samples.holdout[static_cast<std::size_t>(r)]) {
            Xho.row(b) = features.row(r);
            yho(b++) = samples.target(r);
        } else {
            Xtr.row(a) = features.row(r);
            ytr(a++) = samples.target(r);
        }
    }
    if (n_train == 0) throw DomainError("no training rows left after the holdout split");

    FeatureFit fit;
    fit.coefficients = ridge_solve(Xtr, ytr, cfg.ridge).coefficients;
    auto& d = fit.diagnostics;
    d.lambda = cfg.ridge;
    d.paths = cfg.paths;
    d.train_rows = static_cast<std::size_t>(n_train);
    d.holdout_rows = static_cast<std::size_t>(n_hold);
    d.coeff_count = static_cast<std::size_t>(features.cols());
    d.seed = cfg.seed;
    d.rmse_train = rmse(Xtr * fit.coefficients - ytr);
    d.rmse_holdout = rmse(Xho * fit.coefficients - yho);
    if (d.train_rows < d.coeff_count)
        d.warnings.push_back("fewer training rows (" + std::to_string(d.train_rows) + ") than coefficients (" +
                             std::to_string(d.coeff_count) + ")");
    if (n_hold == 0) d.warnings.push_back("no holdout paths; rmse_holdout is undefined");
    return fit;
}

LinearFit fit_linear_readout(const ReservoirSystem& system, const FunctionalSpec& target,
                             const ProcessSampler& sampler, const TrainConfig& cfg)
{
    require_certified(system);
    const auto samples = collect_state_samples(system, target, sampler, cfg);
    auto fit = fit_features(samples.states, samples, cfg);
    return {LinearReadout{std::move(fit.coefficients)}, std::move(fit.diagnostics)};
}

PolynomialFit fit_polynomial_readout(const LinearReservoir& system, std::size_t degree, const FunctionalSpec& target,
                                     const ProcessSampler& sampler, const TrainConfig& cfg, const MomentDiagnostic* moment)
{
    const ReservoirSystem sys{system};
    require_certified(sys);
    const auto N = static_cast<std::size_t>(system.A.rows());
    const auto indices = graded_lex_multi_indices(N, degree);  // applies the feature-count guard
    const auto samples = collect_state_samples(sys, target, sampler, cfg);
    Eigen::MatrixXd F(samples.states.rows(), static_cast<Eigen::Index>(indices.size()));
    parallel_for(static_cast<std::size_t>(F.rows()), [&](std::size_t r) {
        F.row(static_cast<Eigen::Index>(r)) = poly_features(samples.states.row(static_cast<Eigen::Index>(r)).transpose(), degree).transpose();
    });
    auto fit = fit_features(F, samples, cfg);
    if (moment && moment->verdict == MomentVerdict::suspect_infinite)
        fit.diagnostics.warnings.push_back(
            "exponential moment condition looks violated for this input process (tail growth " +
            std::to_string(moment->tail_growth) + "); polynomial readouts need not be dense in L^p");
    return {PolynomialReadout(N, degree, std::move(fit.coefficients)), std::move(fit.diagnostics)};
}

NetworkReadout draw_network_features(const Eigen::MatrixXd& train_states, std::size_t hidden,
                                     const NetworkFeatureOptions& opts, std::uint64_t seed)
{
    const auto N = train_states.cols();
    NetworkReadout r;
    r.activation = opts.activation;
    r.alpha.resize(static_cast<Eigen::Index>(hidden), N);
    r.theta.resize(static_cast<Eigen::Index>(hidden));
    r.beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hidden));
    const double scale = opts.weight_scale / std::sqrt(static_cast<double>(std::max<Eigen::Index>(N, 1)));
    for (std::size_t j = 0; j < hidden; ++j) {
        RandomStream rng(seed, j);
        const auto ji = static_cast<Eigen::Index>(j);
        for (Eigen::Index i = 0; i < N; ++i) r.alpha(ji, i) = scale * rng.normal();
        const Eigen::VectorXd proj = train_states * r.alpha.row(ji).transpose();
        const double lo = proj.size() ? proj.minCoeff() : 0.0;
        const double hi = proj.size() ? proj.maxCoeff() : 0.0;
        r.theta(ji) = rng.uniform(lo, hi);
    }
    return r;
}

NetworkFit fit_network_readout(const LinearReservoir& system, std::size_t hidden, const FunctionalSpec& target,
                               const ProcessSampler& sampler, const TrainConfig& cfg, const NetworkFeatureOptions& opts)
{
    if (hidden < 1) throw DomainError("network readout needs at least one hidden unit");
    const ReservoirSystem sys{system};
    require_certified(sys);
    const auto samples = collect_state_samples(sys, target, sampler, cfg);

    Eigen::Index n_train = 0;
    for (bool h : samples.holdout) n_train += h ? 0 : 1;
    Eigen::MatrixXd train_states(n_train, samples.states.cols());
    for (Eigen::Index r = 0, a = 0; r < samples.states.rows(); ++r)
        if (!samples.holdout[static_cast<std::size_t>(r)]) train_states.row(a++) = samples.states.row(r);

    NetworkReadout net = draw_network_features(train_states, hidden, opts, derive_seed(cfg.seed, kFeatureTag));
    Eigen::MatrixXd pre = samples.states * net.alpha.transpose();
    pre.rowwise() -= net.theta.transpose();
    const Eigen::MatrixXd H = pre.unaryExpr([a = net.activation](double v) { return activate(a, v); });
    auto fit = fit_features(H, samples, cfg);
    net.beta = std::move(fit.coefficients);
    return {std::move(net), std::move(fit.diagnostics)};
}

}  // namespace rcu
