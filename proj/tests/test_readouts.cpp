#include "rcu/errors.hpp"
#include "rcu/readouts.hpp"

#include <doctest.h>

#include <cmath>

using namespace rcu;

TEST_CASE("polynomial features in graded lexicographic order")
{
    Eigen::VectorXd x(2);
    x << 2, 3;
    Eigen::VectorXd expect(6);
    expect << 1, 2, 3, 4, 6, 9;
    CHECK(poly_features(x, 2) == expect);
    CHECK(poly_feature_count(2, 2) == 6);
    CHECK(poly_feature_count(3, 3) == 20);
    CHECK(poly_feature_count(5, 0) == 1);

    const auto idx = graded_lex_multi_indices(2, 2);
    REQUIRE(idx.size() == 6);
    CHECK(idx[0] == std::vector<unsigned>{0, 0});
    CHECK(idx[1] == std::vector<unsigned>{1, 0});
    CHECK(idx[3] == std::vector<unsigned>{2, 0});
    CHECK(idx[5] == std::vector<unsigned>{0, 2});
}

TEST_CASE("polynomial feature count guard")
{
    CHECK(poly_feature_count(200, 4) > kMaxPolyFeatures);
    CHECK_THROWS_AS(graded_lex_multi_indices(200, 4), DomainError);
    CHECK_THROWS_AS(poly_features(Eigen::VectorXd::Zero(200), 4), DomainError);
}

TEST_CASE("polynomial readout evaluates the monomial expansion")
{
    PolynomialReadout p(3, 3, Eigen::VectorXd::Zero(20));
    p.set({0, 0, 0}, 0.5);
    p.set({1, 0, 2}, -2.0);
    p.set({0, 3, 0}, 1.5);
    Eigen::VectorXd x(3);
    x << 0.3, -1.2, 2.0;
    const double direct = 0.5 - 2.0 * 0.3 * 4.0 + 1.5 * std::pow(-1.2, 3);
    CHECK(eval_readout(p, x) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(readout_coefficients(Readout{p}) == 20);
    CHECK(readout_inputs(Readout{p}) == 3);
    CHECK_THROWS_AS(p.set({4, 0, 0}, 1.0), DomainError);
    CHECK_THROWS_AS(PolynomialReadout(2, 2, Eigen::VectorXd::Zero(5)), DimensionError);
    CHECK_THROWS_AS(eval_readout(p, Eigen::VectorXd::Zero(2)), DimensionError);
}

TEST_CASE("network readout matches the explicit sum")
{
    NetworkReadout r;
    r.activation = Activation::logistic;
    r.alpha.resize(2, 2);
    r.alpha << 1.0, -0.5, 0.25, 2.0;
    r.theta.resize(2);
    r.theta << 0.1, -0.3;
    r.beta.resize(2);
    r.beta << 2.0, -1.0;
    Eigen::VectorXd x(2);
    x << 0.4, 0.7;
    const auto s = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    const double direct = 2.0 * s(0.4 - 0.35 - 0.1) - 1.0 * s(0.1 + 1.4 + 0.3);
    CHECK(eval_readout(r, x) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(network_hidden(r, x).size() == 2);

    LinearReadout l{Eigen::Vector2d(1.0, -2.0)};
    CHECK(eval_readout(Readout{l}, x) == doctest::Approx(0.4 - 1.4));
}

TEST_CASE("activations are bounded with the stated Lipschitz constants")
{
    for (Activation a : {Activation::logistic, Activation::tanh, Activation::hard_sigmoid}) {
        double slope = 0.0;
        for (double x = -10.0; x <= 10.0; x += 1e-3) {
            CHECK(std::abs(activate(a, x)) <= sup_abs(a));
            slope = std::max(slope, std::abs(activate(a, x + 1e-6) - activate(a, x)) / 1e-6);
        }
        CHECK(slope <= lipschitz_constant(a) * (1 + 1e-4));
        CHECK(slope >= lipschitz_constant(a) * (1 - 1e-3));
        CHECK(activation_from_string(to_string(a)) == a);
    }
    CHECK_THROWS_AS(activation_from_string("relu"), DomainError);
}
