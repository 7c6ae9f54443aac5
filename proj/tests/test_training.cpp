#include "rcu/constructions.hpp"
#include "rcu/errors.hpp"
#include "rcu/metrics.hpp"
#include "rcu/targets.hpp"
#include "rcu/training.hpp"

#include <doctest.h>

#include <cmath>

using namespace rcu;

namespace {

TrainConfig small_cfg(std::size_t paths, std::size_t T, std::size_t washout, double ridge, std::uint64_t seed = 1)
{
    TrainConfig c;
    c.paths = paths;
    c.window_length = T;
    c.washout = washout;
    c.ridge = ridge;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("state samples follow the window convention")
{
    const auto r = build_shift_register(1, 1);
    const auto target = FunctionalSpec::geometric_ma(0.5);
    const auto s = collect_state_samples(r, FunctionalSpec::constant(2.0), ProcessSampler::iid_gaussian(1),
                                         small_cfg(10, 6, 3, 0.0));
    CHECK(s.states.rows() == 30);
    CHECK(s.target.isConstant(2.0));
    std::size_t hold = 0;
    for (bool h : s.holdout) hold += h;
    CHECK(hold == 6);

    const auto one = collect_state_samples(r, FunctionalSpec::constant(1.0), ProcessSampler::iid_gaussian(1),
                                           small_cfg(7, 5, 4, 0.0, 9));
    const auto windows = sample_windows(ProcessSampler::iid_gaussian(1), 5, 7, 9);
    for (std::size_t m = 0; m < 7; ++m)
        CHECK(one.states.row(static_cast<Eigen::Index>(m)).transpose() == final_state(r, windows[m]));

    CHECK_THROWS_AS(collect_state_samples(r, target, ProcessSampler::iid_gaussian(1), small_cfg(10, 5, 5, 0)), DomainError);
    CHECK_THROWS_AS(collect_state_samples(r, target, ProcessSampler::iid_gaussian(1), small_cfg(1, 5, 2, 0)), DomainError);
    CHECK_THROWS_AS(collect_state_samples(r, random_finite_poly(1, 4, 2, 1), ProcessSampler::iid_gaussian(1),
                                          small_cfg(10, 5, 2, 0)),
                    DomainError);
    CHECK_THROWS_AS(collect_state_samples(r, target, ProcessSampler::iid_gaussian(2), small_cfg(10, 5, 2, 0)),
                    DimensionError);
}

TEST_CASE("polynomial readout recovers a polynomial target exactly")
{
    const std::size_t K = 2, d = 3;
    const auto target = random_finite_poly(1, K, d, 42);
    const auto r = build_shift_register(1, K);
    // C(3+3,3) = 20 coefficients, 400 paths.
    const auto fit = fit_polynomial_readout(r, d, target, ProcessSampler::iid_gaussian(1), small_cfg(400, 3, 2, 1e-10));
    CHECK(fit.diagnostics.coeff_count == 20);
    CHECK(fit.diagnostics.rmse_holdout < 1e-6);
    CHECK(fit.diagnostics.rmse_train < 1e-6);
    const auto err = approx_error(target, ReservoirModel{r, Readout{fit.readout}}, ProcessSampler::iid_gaussian(1), 2.0,
                                  3, 2000, 77, 1);
    CHECK(err.value < 1e-6);
}

TEST_CASE("linear readout on a zero target is zero")
{
    const auto r = random_linear_reservoir(6, 1, 0.8, 1.0, 2);
    const auto fit = fit_linear_readout(r, FunctionalSpec::constant(0.0), ProcessSampler::iid_gaussian(1),
                                        small_cfg(50, 30, 20, 1e-6));
    CHECK(fit.readout.W.isZero(0.0));
    CHECK(fit.diagnostics.rmse_train == 0.0);
}

TEST_CASE("fits are deterministic and ridge is monotone")
{
    const auto r = random_linear_reservoir(12, 1, 0.9, 1.0, 5);
    const auto target = FunctionalSpec::geometric_ma(0.7);
    const auto sampler = ProcessSampler::iid_gaussian(1);
    const auto a = fit_polynomial_readout(r, 2, target, sampler, small_cfg(200, 40, 30, 1e-6, 3));
    const auto b = fit_polynomial_readout(r, 2, target, sampler, small_cfg(200, 40, 30, 1e-6, 3));
    CHECK(a.readout.coefficients == b.readout.coefficients);

    double prev = 0.0;
    for (double lambda : {0.0, 1e-4, 1e-2, 1.0, 1e2, 1e4}) {
        const auto f = fit_linear_readout(r, target, sampler, small_cfg(200, 40, 30, lambda, 3));
        CHECK(f.diagnostics.rmse_train >= prev - 1e-12);
        prev = f.diagnostics.rmse_train;
    }
    // Huge ridge shrinks the readout to zero, so the RMSE approaches the target's RMS.
    const auto s = collect_state_samples(r, target, sampler, small_cfg(200, 40, 30, 0.0, 3));
    double rms = 0.0;
    std::size_t n = 0;
    for (Eigen::Index i = 0; i < s.target.size(); ++i)
        if (!s.holdout[static_cast<std::size_t>(i)]) rms += s.target(i) * s.target(i), ++n;
    rms = std::sqrt(rms / static_cast<double>(n));
    const auto huge = fit_linear_readout(r, target, sampler, small_cfg(200, 40, 30, 1e12, 3));
    CHECK(huge.diagnostics.rmse_train == doctest::Approx(rms).epsilon(1e-4));
}

TEST_CASE("random-feature network readout")
{
    // Smooth target of two lags of a bounded input, realized through a shift register.
    Eigen::MatrixXd f(2, 1);
    f << 1.2, -0.8;
    const auto target = FunctionalSpec::trig_product(f, {true, false});
    const auto sampler = ProcessSampler::iid_uniform_bounded(1, -1, 1);
    const auto r = build_shift_register(1, 1);
    const auto norm = lp_norm(target, sampler, 2.0, 2, 20000, 5).value;
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto cfg = small_cfg(4000, 2, 1, 1e-8, seed);
        const auto big = fit_network_readout(r, 512, target, sampler, cfg);
        CHECK(big.diagnostics.rmse_holdout < 0.05 * norm);
        const auto tiny = fit_network_readout(r, 1, target, sampler, cfg);
        CHECK(tiny.diagnostics.rmse_holdout >= big.diagnostics.rmse_holdout);
        // Nested features: the first unit of the large network is the small network's unit.
        CHECK(big.readout.alpha.row(0) == tiny.readout.alpha.row(0));
        CHECK(big.readout.theta(0) == tiny.readout.theta(0));
    }
}

TEST_CASE("training diagnostics and guards")
{
    const auto sampler = ProcessSampler::iid_lognormal(1);
    const auto r = build_shift_register(1, 1);
    const auto moment = exp_moment_check(sampler, 0.5, 2, default_moment_sizes(), 3);
    REQUIRE(moment.verdict == MomentVerdict::suspect_infinite);
    const auto fit = fit_polynomial_readout(r, 2, FunctionalSpec::geometric_ma(0.5), sampler, small_cfg(50, 10, 5, 1e-6),
                                            &moment);
    CHECK_FALSE(fit.diagnostics.warnings.empty());

    const auto few = fit_polynomial_readout(build_shift_register(1, 3), 4, FunctionalSpec::constant(1.0),
                                            ProcessSampler::iid_gaussian(1), small_cfg(10, 5, 4, 1e-6));
    CHECK_FALSE(few.diagnostics.warnings.empty());

    const auto expanding = random_linear_reservoir(4, 1, 1.5, 1.0, 1);
    CHECK_THROWS_AS(fit_linear_readout(expanding, FunctionalSpec::constant(1.0), ProcessSampler::iid_gaussian(1),
                                       small_cfg(10, 5, 4, 1e-6)),
                    EspError);
    CHECK_THROWS_AS(fit_polynomial_readout(r, 3, FunctionalSpec::constant(1.0), ProcessSampler::iid_gaussian(1),
                                           small_cfg(4, 2, 1, 0.0)),
                    SingularSystem);
}
