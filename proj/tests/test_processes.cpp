#include "rcu/errors.hpp"
#include "rcu/metrics.hpp"
#include "rcu/processes.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace rcu;

TEST_CASE("uniform sampler stays inside its support")
{
    const auto s = ProcessSampler::iid_uniform_bounded(2, 0.0, 1.0);
    for (const auto& w : sample_windows(s, 50, 20, 3)) {
        CHECK(w.data().minCoeff() >= 0.0);
        CHECK(w.data().maxCoeff() <= 1.0);
    }
    CHECK(s.bounded_support() == std::make_pair(0.0, 1.0));
    CHECK_THROWS_AS(ProcessSampler::iid_uniform_bounded(1, 1.0, 1.0), DomainError);
}

TEST_CASE("sampling is seed deterministic and path independent")
{
    for (const auto& s : {ProcessSampler::iid_gaussian(2), ProcessSampler::garch11(1, 0.1, 0.1, 0.8),
                          ProcessSampler::arma(1, ArmaParams{{0.5}, {0.3}, 1.0, 0.0})}) {
        const auto a = sample_windows(s, 20, 5, 11);
        const auto b = sample_windows(s, 20, 5, 11);
        const auto c = sample_windows(s, 20, 5, 12);
        for (std::size_t m = 0; m < a.size(); ++m) {
            CHECK(a[m].data() == b[m].data());
            CHECK(a[m].data() != c[m].data());
            CHECK(sample_window(s, 20, 11, m).data() == a[m].data());
        }
        CHECK(a[0].data() != a[1].data());
    }
}

TEST_CASE("garch11 stationary variance is omega / (1 - alpha - beta)")
{
    const auto s = ProcessSampler::garch11(1, 0.1, 0.1, 0.8);
    CHECK(s.stationary_variance() == doctest::Approx(1.0));
    CHECK(s.burn_in() == 1000);
    // 100 independent paths of 1000 draws; the standard error comes from the spread of path means.
    const auto w = sample_windows(s, 1000, 100, 8);
    double mean = 0.0, sq = 0.0;
    for (const auto& x : w) {
        const double pm = x.data().array().square().mean();
        mean += pm;
        sq += pm * pm;
    }
    mean /= 100.0;
    const double se = std::sqrt((sq / 100.0 - mean * mean) / 99.0);
    CHECK(std::abs(mean - 1.0) < 3 * se);

    const auto v = garch_variance_path(s, 50, 8, 0);
    CHECK(v.minCoeff() > 0.0);
    CHECK_THROWS_AS(garch_variance_path(ProcessSampler::iid_gaussian(1), 10, 1, 0), DomainError);
}

TEST_CASE("arma stationary variance matches the sample variance")
{
    const auto s = ProcessSampler::arma(1, ArmaParams{{0.5}, {}, 1.0, 2.0});
    CHECK(s.stationary_variance() == doctest::Approx(1.0 / 0.75));
    CHECK(s.stationary_mean() == 2.0);
    const auto w = sample_windows(s, 2000, 50, 4);
    double mean = 0.0, sq = 0.0;
    for (const auto& x : w) {
        const double pm = (x.data().array() - 2.0).square().mean();
        mean += pm;
        sq += pm * pm;
    }
    mean /= 50.0;
    const double se = std::sqrt((sq / 50.0 - mean * mean) / 49.0);
    CHECK(std::abs(mean - 1.0 / 0.75) < 3 * se);
}

TEST_CASE("invalid model parameters are rejected")
{
    try {
        ProcessSampler::garch11(1, 0.1, 0.5, 0.6);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("stationarity") != std::string::npos);
    }
    CHECK_THROWS_AS(ProcessSampler::garch11(1, 0.0, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(ProcessSampler::arma(1, ArmaParams{{1.2}, {}, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(ProcessSampler::arma(1, ArmaParams{{}, {2.0}, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(ProcessSampler::iid_gaussian(0), DomainError);
    CHECK_THROWS_AS(sample_windows(ProcessSampler::iid_gaussian(1), 0, 1, 1), DomainError);
}

TEST_CASE("exp_moment_check: bounded and Gaussian inputs look finite")
{
    const auto sizes = doubling_sizes(10, 18);
    const auto u = exp_moment_check(ProcessSampler::iid_uniform_bounded(1, -1.0, 1.0), 2.0, 2, sizes, 1);
    CHECK(u.verdict == MomentVerdict::plausible);
    CHECK(u.estimate <= std::exp(2.0 * 3.0));

    // E exp(alpha |Z|) = 2 e^{alpha^2/2} Phi(alpha) per lag, three independent lags.
    const double alpha = 0.5;
    const double per = 2.0 * std::exp(alpha * alpha / 2) * 0.5 * std::erfc(-alpha / std::sqrt(2.0));
    const auto g = exp_moment_check(ProcessSampler::iid_gaussian(1), alpha, 2, sizes, 2);
    CHECK(g.verdict == MomentVerdict::plausible);
    CHECK(g.estimate == doctest::Approx(std::pow(per, 3)).epsilon(0.01));
    CHECK(g.log_estimates.size() == sizes.size());
}

TEST_CASE("exp_moment_check flags the lognormal")
{
    const auto d = exp_moment_check(ProcessSampler::iid_lognormal(1), 1.0, 2, default_moment_sizes(), 3);
    CHECK(d.verdict == MomentVerdict::suspect_infinite);
    CHECK(d.tail_growth > d.threshold);
    CHECK_THROWS_AS(exp_moment_check(ProcessSampler::iid_gaussian(1), 0.0, 2, default_moment_sizes(), 1), DomainError);
    CHECK_THROWS_AS(exp_moment_check(ProcessSampler::iid_gaussian(1), 1.0, 2, {8, 16}, 1), DomainError);
    CHECK_THROWS_AS(exp_moment_check(ProcessSampler::iid_gaussian(1), 1.0, 2, {8, 8, 16}, 1), DomainError);
}

TEST_CASE("shift invariance probes")
{
    const auto c = shift_invariance_probe(ProcessSampler::iid_gaussian(1), FunctionalSpec::constant(-2.0), 2.0,
                                          {0, -3, -7}, 5, 100, 1);
    REQUIRE(c.size() == 3);
    for (const auto& e : c) {
        CHECK(e.value == 2.0);
        CHECK(e.std_error == 0.0);
    }

    const auto g = shift_invariance_probe(ProcessSampler::iid_gaussian(1), FunctionalSpec::geometric_ma(0.5), 2.0,
                                          {0, -5, -10}, 40, 5000, 2);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            CHECK(std::abs(g[i].value - g[j].value) < 3 * combined_stderr(g[i], g[j]));

    const auto h = shift_invariance_probe(ProcessSampler::garch11(1, 0.1, 0.1, 0.8),
                                          FunctionalSpec::garch_vol(0.1, 0.1, 0.8), 2.0, {0, -5, -10}, 100, 3000, 3);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
            CHECK(std::abs(h[i].value - h[j].value) < 3 * combined_stderr(h[i], h[j]));

    CHECK_THROWS_AS(shift_invariance_probe(ProcessSampler::iid_gaussian(1), FunctionalSpec::constant(1.0), 2.0, {1},
                                           5, 10, 1),
                    DomainError);
}
