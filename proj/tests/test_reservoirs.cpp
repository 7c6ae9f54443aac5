#include "rcu/errors.hpp"
#include "rcu/processes.hpp"
#include "rcu/reservoirs.hpp"

#include <doctest.h>

#include <cmath>

using namespace rcu;

namespace {

Eigen::VectorXd manual_run(const LinearReservoir& r, const Window& w)
{
    Eigen::VectorXd x = Eigen::VectorXd::Zero(r.A.rows());
    for (std::size_t k = w.length(); k-- > 0;) x = r.A * x + r.c * w.at(k).transpose();
    return x;
}

double sigma_max(const Eigen::MatrixXd& A) { return Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0); }

}  // namespace

TEST_CASE("linear reservoir runs oldest row first from the zero state")
{
    const auto r = random_linear_reservoir(6, 2, 0.8, 1.0, 4);
    const auto w = sample_window(ProcessSampler::iid_gaussian(2), 12, 1, 0);
    const auto tr = run_reservoir(r, w);
    CHECK(tr.states.rows() == 12);
    CHECK((tr.states.row(0).transpose() - manual_run(r, w)).norm() < 1e-13);
    CHECK((tr.states.row(3).transpose() - manual_run(r, w.shifted(3, 9))).norm() < 1e-13);
    CHECK((final_state(r, w) - manual_run(r, w)).norm() < 1e-13);
    CHECK_FALSE(tr.output);
    CHECK(sigma_max(r.A) == doctest::Approx(0.8));
}

TEST_CASE("batched final states agree with single runs for every family")
{
    const auto windows = sample_windows(ProcessSampler::iid_gaussian(1), 15, 7, 2);
    const std::vector<ReservoirSystem> systems{random_linear_reservoir(5, 1, 0.9, 1.0, 1),
                                               random_esn(8, 1, RandomEsnOptions{}, 2),
                                               random_trig_sas(4, 1, RandomTrigSasOptions{}, 3)};
    for (const auto& s : systems) {
        const auto X = final_states(s, windows);
        for (std::size_t m = 0; m < windows.size(); ++m)
            CHECK((X.col(static_cast<Eigen::Index>(m)) - final_state(s, windows[m])).norm() < 1e-12);
    }
}

TEST_CASE("step implements each family's update")
{
    const auto e = random_esn(4, 2, RandomEsnOptions{}, 9);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(4, -0.5, 0.5), z(2);
    z << 0.3, -1.0;
    const Eigen::VectorXd expect = (e.A * x + e.C * z + e.zeta).array().tanh().matrix();
    CHECK((step(e, x, z) - expect).norm() < 1e-15);

    const auto t = random_trig_sas(3, 2, RandomTrigSasOptions{}, 10);
    const Eigen::VectorXd ts = t.P(z) * x.head(3) + t.Q(z);
    CHECK((step(t, x.head(3), z) - ts).norm() < 1e-15);

    CHECK_THROWS_AS(step(e, x, Eigen::VectorXd::Zero(3)), DimensionError);
    CHECK_THROWS_AS(run_reservoir(e, sample_window(ProcessSampler::iid_gaussian(1), 4, 1, 0)), DimensionError);
}

TEST_CASE("trig polynomial evaluation and norm bound")
{
    TrigPolynomial P(2, 2, 1);
    TrigTerm t;
    t.A = Eigen::Matrix2d{{0.5, 0.0}, {0.0, 0.1}};
    t.u = Eigen::VectorXd::Constant(1, 2.0);
    P.add_term(t);
    Eigen::VectorXd z = Eigen::VectorXd::Constant(1, 0.3);
    CHECK((P(z) - t.A * std::cos(0.6)).norm() < 1e-15);
    CHECK(P.operator_norm_bound() == doctest::Approx(0.5));
    TrigTerm bad;
    bad.A = Eigen::MatrixXd::Zero(3, 3);
    bad.u = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(P.add_term(bad), DimensionError);
}

TEST_CASE("ESP certificates")
{
    SUBCASE("spectral for contracting linear systems")
    {
        const auto r = certify_esp(random_linear_reservoir(10, 1, 0.95, 1.0, 3));
        CHECK(r.certified);
        CHECK(r.method == EspMethod::spectral);
        CHECK(r.bound == doctest::Approx(0.95));
    }
    SUBCASE("nilpotent for strictly lower triangular A with large norm")
    {
        LinearReservoir l{Eigen::MatrixXd::Zero(4, 4), Eigen::MatrixXd::Ones(4, 1)};
        l.A(1, 0) = 5.0;
        l.A(2, 1) = 5.0;
        l.A(3, 0) = 2.0;
        const auto r = certify_esp(l);
        CHECK(r.certified);
        CHECK(r.method == EspMethod::nilpotent);
        CHECK(r.nilpotency_depth == std::optional<std::size_t>(3));
    }
    SUBCASE("Lipschitz-spectral for ESNs")
    {
        RandomEsnOptions o;
        o.activation = Activation::logistic;
        o.sigma_max = 3.5;
        const auto r = certify_esp(random_esn(10, 1, o, 4));
        CHECK(r.certified);
        CHECK(r.method == EspMethod::lipschitz_spectral);
        CHECK(r.bound == doctest::Approx(0.875));
        o.activation = Activation::tanh;
        o.sigma_max = 1.5;
        CHECK_FALSE(certify_esp(random_esn(10, 1, o, 4)).certified);
    }
    SUBCASE("no certificate for an expanding linear system")
    {
        CHECK_FALSE(certify_esp(random_linear_reservoir(5, 1, 1.2, 1.0, 3)).certified);
    }
}

TEST_CASE("washout decay stays within the certificate")
{
    const std::vector<ReservoirSystem> systems{random_linear_reservoir(10, 1, 0.9, 1.0, 1),
                                               random_esn(10, 1, RandomEsnOptions{}, 2),
                                               random_trig_sas(6, 1, RandomTrigSasOptions{}, 3)};
    for (const auto& s : systems) {
        const auto cert = certify_esp(s);
        REQUIRE(cert.certified);
        for (std::size_t m = 0; m < 10; ++m) {
            const auto w = sample_window(ProcessSampler::iid_gaussian(1), 25, 6, m);
            const auto d = washout_decay(s, w, 100 + m);
            CHECK(d.size() == 26);
            CHECK(washout_within_certificate(cert, d));
            const auto rate = fit_decay_rate(d);
            REQUIRE(rate);
            CHECK(*rate <= cert.bound * (1 + 1e-9));
        }
    }
    // A violating sequence is detected.
    EspReport fake{true, EspMethod::spectral, 0.5, std::nullopt, std::nullopt};
    CHECK_FALSE(washout_within_certificate(fake, {1.0, 0.9}));
}

TEST_CASE("reservoir models")
{
    const auto l = random_linear_reservoir(3, 1, 0.5, 1.0, 1);
    CHECK_THROWS_AS((ReservoirModel{l, std::nullopt}.validate()), DimensionError);
    CHECK_THROWS_AS((ReservoirModel{l, Readout{LinearReadout{Eigen::VectorXd::Zero(4)}}}.validate()), DimensionError);
    const ReservoirModel m{l, Readout{LinearReadout{Eigen::Vector3d(1, 2, 3)}}};
    const auto w = sample_window(ProcessSampler::iid_gaussian(1), 10, 1, 0);
    CHECK(reservoir_functional(m, w) == doctest::Approx(Eigen::Vector3d(1, 2, 3).dot(final_state(l, w))));
    const auto f = as_functional(m, "lin");
    CHECK(evaluate_functional(f, w) == reservoir_functional(m, w));

    const auto e = with_readout(random_esn(4, 1, RandomEsnOptions{}, 1), Eigen::Vector4d(1, 0, 0, 0));
    CHECK((ReservoirModel{e, std::nullopt}.validate(), true));
    CHECK(reservoir_functional(ReservoirModel{e, std::nullopt}, w) == final_state(e, w)(0));
}
