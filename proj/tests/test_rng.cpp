#include "rcu/parallel.hpp"
#include "rcu/processes.hpp"
#include "rcu/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

using namespace rcu;

TEST_CASE("philox4x32-10 matches the Random123 known-answer vectors")
{
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct")
{
    RandomStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x != c.uniform());
        CHECK(x != d.uniform());
    }
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("uniform and normal draws have the right first two moments")
{
    RandomStream r(7, 0);
    const int n = 200000;
    double su = 0, su2 = 0, sn = 0, sn2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        su += u;
        su2 += u * u;
        const double z = r.normal();
        sn += z;
        sn2 += z * z;
    }
    // 5 standard errors.
    CHECK(std::abs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(su2 / n - 1.0 / 3) < 5 * std::sqrt(4.0 / 45 / n));
    CHECK(std::abs(sn / n) < 5 * std::sqrt(1.0 / n));
    CHECK(std::abs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("below stays in range and hits every value")
{
    RandomStream r(1, 1);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = r.below(7);
        REQUIRE(v < 7);
        ++hits[v];
    }
    for (int h : hits) CHECK(h > 800);
    CHECK(r.uniform_pos() > 0.0);
}

TEST_CASE("pairwise summation is exact on integers and order independent of worker count")
{
    std::vector<double> v(10001);
    std::iota(v.begin(), v.end(), 0.0);
    CHECK(pairwise_sum(v) == 10000.0 * 10001.0 / 2.0);
    CHECK(pairwise_mean(v) == 5000.0);

    const auto s = ProcessSampler::iid_gaussian(2);
    setenv("RCU_WORKERS", "1", 1);
    const auto one = sample_windows(s, 16, 64, 9);
    setenv("RCU_WORKERS", "4", 1);
    const auto four = sample_windows(s, 16, 64, 9);
    unsetenv("RCU_WORKERS");
    for (std::size_t m = 0; m < one.size(); ++m) CHECK(one[m].data() == four[m].data());
}

TEST_CASE("parallel_for visits each index once and rethrows")
{
    setenv("RCU_WORKERS", "3", 1);
    std::vector<int> seen(100, 0);
    parallel_for(100, [&](std::size_t i) { seen[i] += 1; });
    for (int s : seen) CHECK(s == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
    unsetenv("RCU_WORKERS");
}
