#include "rcu/constructions.hpp"
#include "rcu/errors.hpp"
#include "rcu/metrics.hpp"
#include "rcu/targets.hpp"

#include <doctest.h>

#include <cmath>

using namespace rcu;

TEST_CASE("L2 norm of a geometric moving average")
{
    const auto e = lp_norm(FunctionalSpec::geometric_ma(0.5), ProcessSampler::iid_gaussian(1), 2.0, 40, 20000, 3);
    CHECK(std::abs(e.value - std::sqrt(4.0 / 3.0)) < 3 * e.std_error);
    const auto c = lp_norm(FunctionalSpec::constant(-2.5), ProcessSampler::iid_gaussian(1), 3.0, 1, 10, 3);
    CHECK(c.value == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(c.std_error == doctest::Approx(0.0));
    CHECK_THROWS_AS(lp_norm(FunctionalSpec::peak_hold(), ProcessSampler::iid_gaussian(1), 2.0, 10, 10, 3), DomainError);
}

TEST_CASE("approximation error guards")
{
    const auto r = build_shift_register(1, 1);
    const ReservoirModel m{r, Readout{LinearReadout{Eigen::Vector2d(1.0, 0.5)}}};
    const auto target = FunctionalSpec::geometric_ma(0.5);
    const auto s = ProcessSampler::iid_gaussian(1);
    CHECK_THROWS_AS(approx_error(target, m, s, 2.0, 10, 100, 7, 7), DomainError);
    const ReservoirModel bad{random_linear_reservoir(2, 1, 1.3, 1.0, 1), Readout{LinearReadout{Eigen::Vector2d(1, 1)}}};
    CHECK_THROWS_AS(approx_error(target, bad, s, 2.0, 10, 100, 7), EspError);

    // The readout realizes z_0 + z_{-1}/2; the residual is sum_{k>=2} 0.5^k z_{-k}.
    const auto e = approx_error(target, m, s, 2.0, 40, 20000, 8, 1);
    const double exact = std::sqrt(std::pow(0.5, 4) / (1 - 0.25));
    CHECK(std::abs(e.value - exact) < 3 * e.std_error);

    const auto outs = reservoir_outputs(m, sample_windows(s, 5, 4, 2));
    CHECK(outs.size() == 4);
}

TEST_CASE("empirical L^p is a norm on a shared sample")
{
    const auto s = ProcessSampler::iid_gaussian(1);
    const auto f = FunctionalSpec::geometric_ma(0.6);
    const auto g = FunctionalSpec::custom("z0^2", 0, [](const Window& w) { return w.at(0, 0) * w.at(0, 0); });
    const auto fg = FunctionalSpec::custom("sum", std::nullopt, [&](const Window& w) {
        return evaluate_functional(f, w) + evaluate_functional(g, w);
    });
    for (double p : {1.0, 2.0, 3.5}) {
        const double a = lp_norm(f, s, p, 30, 3000, 4).value;
        const double b = lp_norm(g, s, p, 30, 3000, 4).value;
        const double c = lp_norm(fg, s, p, 30, 3000, 4).value;
        CHECK(c <= a + b + 1e-12);
    }
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 4.0, 8.0}) {
        const double v = lp_norm(f, s, p, 30, 3000, 4).value;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("independent evaluation seeds agree within their error")
{
    const auto s = ProcessSampler::arma(1, ArmaParams{{0.5}, {0.3}, 1.0});
    const auto f = FunctionalSpec::geometric_ma(0.5);
    const auto a = lp_norm(f, s, 2.0, 40, 10000, 1);
    const auto b = lp_norm(f, s, 2.0, 40, 10000, 2);
    CHECK(a.value != b.value);
    CHECK(std::abs(a.value - b.value) < 4 * combined_stderr(a, b));
}

TEST_CASE("shift probes on a stationary process")
{
    const auto s = ProcessSampler::garch11(1, 0.1, 0.1, 0.8);
    const auto f = FunctionalSpec::garch_vol(0.1, 0.1, 0.8);
    const std::vector<long> shifts{0, -1, -5, -20};
    const auto probe = shift_invariance_probe(s, f, 2.0, shifts, 80, 5000, 3);
    REQUIRE(probe.size() == 4);
    for (std::size_t i = 1; i < probe.size(); ++i)
        CHECK(std::abs(probe[i].value - probe[0].value) < 4 * combined_stderr(probe[i], probe[0]));
    const auto fn = filter_norm(f, s, 2.0, shifts, 80, 5000, 3);
    double best = 0.0;
    for (const auto& e : probe) best = std::max(best, e.value);
    CHECK(fn.value == best);
    CHECK_THROWS_AS(shift_invariance_probe(s, f, 2.0, {1}, 80, 100, 3), DomainError);
}
