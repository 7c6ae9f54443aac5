#include "rcu/constructions.hpp"
#include "rcu/errors.hpp"
#include "rcu/processes.hpp"
#include "rcu/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace rcu;

namespace {

double trig_oracle(const Eigen::MatrixXd& f, const std::vector<bool>& sine, const Window& w)
{
    double p = 1.0;
    for (Eigen::Index k = 0; k < f.rows(); ++k) {
        const double a = f.row(k).dot(w.at(static_cast<std::size_t>(k)));
        p *= sine[static_cast<std::size_t>(k)] ? std::sin(a) : std::cos(a);
    }
    return p;
}

double out(const ReservoirSystem& s, const Window& w) { return reservoir_functional(ReservoirModel{s, {}}, w); }

}  // namespace

TEST_CASE("shift register state is the stacked recent history")
{
    const auto r = build_shift_register(1, 3);
    CHECK(r.A.rows() == 4);
    Eigen::MatrixXd m(4, 1);
    m << 1, 2, 3, 4;
    Eigen::VectorXd expect(4);
    expect << 1, 2, 3, 4;
    CHECK(final_state(r, Window(m)) == expect);

    const auto r2 = build_shift_register(2, 2);
    const auto w = sample_window(ProcessSampler::iid_gaussian(2), 9, 1, 0);
    CHECK(final_state(r2, w) == w.stacked(2));
    const auto cert = certify_esp(r2);
    CHECK(cert.method == EspMethod::nilpotent);
    CHECK(cert.nilpotency_depth == std::optional<std::size_t>(3));
}

TEST_CASE("nilpotent trig-SAS realizes the trig product")
{
    Eigen::MatrixXd f(3, 2);
    f << 0.5, -1.0, 2.0, 0.3, -0.7, 1.1;
    const std::vector<bool> sine{true, false, true};
    const auto sas = build_nilpotent_trig_sas(f, sine);
    CHECK(sas.W.size() == 3);
    const auto cert = certify_esp(sas);
    CHECK(cert.certified);
    CHECK(cert.nilpotency_depth == std::optional<std::size_t>(3));
    for (const auto& w : sample_windows(ProcessSampler::iid_gaussian(2), 6, 50, 3))
        CHECK(std::abs(out(sas, w) - trig_oracle(f, sine, w)) < 1e-12);

    Eigen::MatrixXd f0(1, 1);
    f0 << 0.9;
    const auto s0 = build_nilpotent_trig_sas(f0, {false});
    const auto w = sample_window(ProcessSampler::iid_gaussian(1), 3, 1, 0);
    CHECK(out(s0, w) == doctest::Approx(std::cos(0.9 * w.at(0, 0))));
    CHECK_THROWS_AS(build_nilpotent_trig_sas(f, {true}), DimensionError);
}

TEST_CASE("direct sum is linear in the functionals")
{
    Eigen::MatrixXd f1(2, 1), f2(4, 1);
    f1 << 0.4, 1.2;
    f2 << -0.3, 0.8, 1.5, 0.2;
    const auto s1 = build_nilpotent_trig_sas(f1, {false, true});
    const auto s2 = build_nilpotent_trig_sas(f2, {true, true, false, true});
    for (double lambda : {-1.0, 0.0, 2.5}) {
        const auto s = direct_sum_sas(s1, s2, lambda);
        CHECK(s.W.size() == 6);
        CHECK(certify_esp(s).certified);
        for (const auto& w : sample_windows(ProcessSampler::iid_gaussian(1), 7, 20, 5))
            CHECK(std::abs(out(s, w) - (out(s1, w) + lambda * out(s2, w))) < 1e-12);
    }
    auto expanding = random_trig_sas(3, 1, RandomTrigSasOptions{2, 1.5, 1.0}, 1);
    CHECK_THROWS_AS(direct_sum_sas(s1, expanding, 1.0), EspError);
    Eigen::MatrixXd f3(1, 2);
    f3 << 1, 1;
    CHECK_THROWS_AS(direct_sum_sas(s1, build_nilpotent_trig_sas(f3, {true}), 1.0), DimensionError);
}

TEST_CASE("identity network approximates the identity on the cube")
{
    for (Activation a : {Activation::tanh, Activation::logistic}) {
        IdentityFitOptions o;
        o.m = 2.0;
        const auto J = fit_identity_network(2, a, o, 7);
        CHECK(J.channels() == 2);
        CHECK(J.epsilon < 1e-3);
        RandomStream r(1, 0);
        for (int i = 0; i < 200; ++i) {
            Eigen::Vector2d x(r.uniform(-2, 2), r.uniform(-2, 2));
            CHECK((J(x) - x).cwiseAbs().maxCoeff() <= J.epsilon * (1 + 1e-9));
        }
        CHECK(J.power(Eigen::Vector2d(0.3, -0.1), 0) == Eigen::Vector2d(0.3, -0.1));
    }
}

TEST_CASE("block ESN matches its closed form")
{
    RandomStream r(11, 0);
    const std::size_t n = 2, K = 2, Nbar = 5;
    ShallowNetwork inner;
    inner.activation = Activation::tanh;
    inner.W = Eigen::VectorXd::NullaryExpr(Nbar, [&] { return r.normal(); });
    inner.zeta = Eigen::VectorXd::NullaryExpr(Nbar, [&] { return 0.3 * r.normal(); });
    for (std::size_t k = 0; k <= K; ++k)
        inner.blocks.push_back(Eigen::MatrixXd::NullaryExpr(Nbar, n, [&] { return 0.5 * r.normal(); }));
    IdentityFitOptions o;
    o.hidden_per_channel = 12;
    const auto J = fit_identity_network(n, Activation::tanh, o, 3);
    const auto esn = build_block_esn(inner, J);
    CHECK(esn.A.rows() == static_cast<Eigen::Index>(K * J.hidden() + Nbar));
    const auto cert = certify_esp(esn);
    CHECK(cert.method == EspMethod::nilpotent);
    CHECK(cert.nilpotency_depth == std::optional<std::size_t>(K + 1));

    for (const auto& w : sample_windows(ProcessSampler::iid_uniform_bounded(n, -1, 1), 6, 30, 2)) {
        const double closed = block_esn_closed_form(inner, J, w);
        CHECK(std::abs(out(esn, w) - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
        // Direct composition oracle.
        Eigen::VectorXd pre = inner.zeta + inner.blocks[0] * w.at(0).transpose();
        for (std::size_t j = 1; j <= K; ++j) pre += inner.blocks[j] * J.power(w.at(j).transpose(), j);
        CHECK(std::abs(closed - inner.W.dot(pre.array().tanh().matrix())) < 1e-12);
        // Sub-state j at lag 0 lives in block j of the state.
        const auto x = final_state(esn, w);
        const auto NJ = static_cast<Eigen::Index>(J.hidden());
        for (std::size_t j = 1; j <= K; ++j)
            CHECK((x.segment(static_cast<Eigen::Index>(j - 1) * NJ, NJ) - block_esn_substate(J, w, j)).norm() < 1e-12);
    }

    auto mismatched = J;
    mismatched.activation = Activation::logistic;
    CHECK_THROWS_AS(build_block_esn(inner, mismatched), DomainError);
}

TEST_CASE("shallow network from a readout over the shift register")
{
    NetworkReadout r;
    r.activation = Activation::tanh;
    r.alpha = Eigen::MatrixXd::Random(3, 4);
    r.theta = Eigen::VectorXd::Random(3);
    r.beta = Eigen::VectorXd::Random(3);
    const auto s = shallow_from_readout(r, 2, 1);
    CHECK(s.lags() == 1);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(4, -1, 1);
    CHECK(s(x) == doctest::Approx(eval_readout(r, x)).epsilon(1e-14));
    CHECK_THROWS_AS(shallow_from_readout(r, 3, 1), DimensionError);
}
