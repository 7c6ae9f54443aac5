#include "rcu/errors.hpp"
#include "rcu/processes.hpp"
#include "rcu/targets.hpp"

#include <doctest.h>

#include <cmath>

using namespace rcu;

TEST_CASE("catalog entries evaluate on admissible samplers")
{
    const auto cat = catalog();
    CHECK(cat.size() == 7);
    const auto uniform = ProcessSampler::iid_uniform_bounded(1, -1, 1);
    const auto gauss = ProcessSampler::iid_gaussian(1);
    for (const auto& e : cat) {
        CHECK_FALSE(e.integrability_note.empty());
        const auto n = e.spec.channels().value_or(1);
        const auto s = ProcessSampler::iid_uniform_bounded(n, -1, 1);
        REQUIRE(sampler_admissible(e, s));
        const auto w = sample_window(s, 30, 1, 0);
        CHECK(std::isfinite(evaluate_functional(e.spec, w)));
        if (e.spec.kind() == FunctionalKind::peak_hold) {
            CHECK(e.requires_bounded_support);
            CHECK_FALSE(sampler_admissible(e, gauss));
            CHECK_THROWS_AS(require_admissible(e.spec, gauss), DomainError);
        }
    }
    CHECK_THROWS_AS(require_admissible(random_finite_poly(2, 1, 2, 1), uniform), DimensionError);
}

TEST_CASE("peak hold saturates at the upper support bound")
{
    const auto s = ProcessSampler::iid_uniform_bounded(1, -1, 1);
    const auto w = sample_window(s, 5000, 3, 0);
    CHECK(evaluate_functional(FunctionalSpec::peak_hold(), w) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("truncation bounds")
{
    CHECK(*truncation_bound(FunctionalSpec::geometric_ma(0.5), 20) == doctest::Approx(std::pow(0.5, 20) / 0.5));
    CHECK(*truncation_bound(FunctionalSpec::geometric_ma(-0.5), 20, nullptr) == doctest::Approx(1.9073e-6).epsilon(1e-4));
    const auto u = ProcessSampler::iid_uniform_bounded(1, -2, 1);
    CHECK(*truncation_bound(FunctionalSpec::geometric_ma(0.5), 10, &u) == doctest::Approx(std::pow(0.5, 10) / 0.5 * 2));
    CHECK(*truncation_bound(FunctionalSpec::constant(3), 1) == 0.0);
    CHECK(*truncation_bound(random_finite_poly(1, 3, 2, 1), 4) == 0.0);
    CHECK_FALSE(truncation_bound(random_finite_poly(1, 3, 2, 1), 3));
    CHECK_FALSE(truncation_bound(FunctionalSpec::peak_hold(), 100));
    const auto g = ProcessSampler::garch11(1, 0.1, 0.1, 0.8);
    CHECK(*truncation_bound(FunctionalSpec::garch_vol(0.1, 0.1, 0.8), 30, &g) ==
          doctest::Approx(0.1 * std::pow(0.8, 29) * 1.0 / 0.2));
}

TEST_CASE("truncation bounds cover the observed truncation error")
{
    const auto s = ProcessSampler::iid_uniform_bounded(1, -1, 1);
    const auto geo = FunctionalSpec::geometric_ma(0.8);
    const std::size_t T = 15;
    const double bound = *truncation_bound(geo, T, &s);
    for (const auto& w : sample_windows(s, 2 * T, 200, 4)) {
        const double full = evaluate_functional(geo, w);
        const double cut = evaluate_functional(geo, w.shifted(0, T));
        CHECK(std::abs(full - cut) <= bound);
    }
}

TEST_CASE("garch_vol reproduces the sampler's conditional variance")
{
    const auto s = ProcessSampler::garch11(1, 0.05, 0.1, 0.85);
    const auto target = FunctionalSpec::garch_vol(0.05, 0.1, 0.85);
    for (std::uint64_t path = 0; path < 20; ++path) {
        const auto w = sample_window(s, 200, 8, path);
        const auto var = garch_variance_path(s, 200, 8, path);
        CHECK(std::abs(evaluate_functional(target, w) - var(0)) < 1e-10);
    }
}

TEST_CASE("random target generators")
{
    const auto p = random_finite_poly(2, 1, 3, 5);
    CHECK(p.memory() == std::optional<std::size_t>(1));
    CHECK(p.channels() == std::optional<std::size_t>(2));
    const auto t = random_trig_product(3, 2, 0.5, 6);
    CHECK(t.memory() == std::optional<std::size_t>(2));
    CHECK(t.channels() == std::optional<std::size_t>(3));
    const auto w = sample_window(ProcessSampler::iid_gaussian(3), 3, 1, 0);
    CHECK(evaluate_functional(random_trig_product(3, 2, 0.5, 6), w) == evaluate_functional(t, w));
}
