#include "rcu/constructions.hpp"

#include "rcu/errors.hpp"
#include "rcu/least_squares.hpp"
#include "rcu/rng.hpp"

#include <cmath>
#include <string>

namespace rcu {

LinearReservoir build_shift_register(std::size_t n, std::size_t K)
{
    if (n < 1) throw DomainError("shift register needs n >= 1");
    const auto ni = static_cast<Eigen::Index>(n);
    const auto N = static_cast<Eigen::Index>(n * (K + 1));
    LinearReservoir r{Eigen::MatrixXd::Zero(N, N), Eigen::MatrixXd::Zero(N, ni)};
    for (Eigen::Index i = ni; i < N; ++i) r.A(i, i - ni) = 1.0;
    r.c.topRows(ni).setIdentity();
    return r;
}

TrigSAS build_nilpotent_trig_sas(const Eigen::MatrixXd& freqs, const std::vector<bool>& sine)
{
    if (freqs.rows() < 1 || freqs.cols() < 1) throw DomainError("need at least one lag and one channel");
    if (static_cast<Eigen::Index>(sine.size()) != freqs.rows())
        throw DimensionError("sine mask must have one entry per lag");
    if (!freqs.allFinite()) throw DomainError("frequencies must be finite");
    const std::size_t K = static_cast<std::size_t>(freqs.rows() - 1);
    const std::size_t N = K + 1, n = static_cast<std::size_t>(freqs.cols());
    const auto Ni = static_cast<Eigen::Index>(N);

    // g_k as a single trig term with coefficient matrix `coef`.
    const auto g_term = [&](std::size_t k, Eigen::MatrixXd coef) {
        TrigTerm t;
        const Eigen::VectorXd u = freqs.row(static_cast<Eigen::Index>(k)).transpose();
        if (sine[k]) {
            t.B = std::move(coef);
            t.v = u;
        } else {
            t.A = std::move(coef);
            t.u = u;
        }
        return t;
    };

    TrigPolynomial P(N, N, n), Q(N, 1, n);
    for (std::size_t j = 0; j + 1 <= K; ++j) {
        // A_{K-j}: the 1 sits at 1-based (K-j+1, K-j).
        Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(Ni, Ni);
        shift(static_cast<Eigen::Index>(K - j), static_cast<Eigen::Index>(K - j - 1)) = 1.0;
        P.add_term(g_term(j, std::move(shift)));
    }
    Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(Ni, 1);
    e1(0, 0) = 1.0;
    Q.add_term(g_term(K, std::move(e1)));
    Eigen::VectorXd W = Eigen::VectorXd::Zero(Ni);
    W(Ni - 1) = 1.0;
    return TrigSAS{std::move(P), std::move(Q), std::move(W)};
}

namespace {

Eigen::MatrixXd block_diag(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Eigen::MatrixXd vstack(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    Eigen::MatrixXd out(a.rows() + b.rows(), a.cols());
    out << a, b;
    return out;
}

}  // namespace

TrigSAS direct_sum_sas(const TrigSAS& s1, const TrigSAS& s2, double lambda)
{
    validate(ReservoirSystem{s1});
    validate(ReservoirSystem{s2});
    if (s1.P.inputs() != s2.P.inputs()) throw DimensionError("direct sum needs equal input dimensions");
    if (!certify_esp(s1).certified || !certify_esp(s2).certified)
        throw EspError("direct sum requires both trig-SAS to carry an ESP certificate");
    const std::size_t N1 = s1.P.rows(), N2 = s2.P.rows(), n = s1.P.inputs();
    const auto z1 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N1), static_cast<Eigen::Index>(N1));
    const auto z2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N2), static_cast<Eigen::Index>(N2));
    const auto q1 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N1), 1);
    const auto q2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N2), 1);

    TrigPolynomial P(N1 + N2, N1 + N2, n), Q(N1 + N2, 1, n);
    for (const auto& t : s1.P.terms()) P.add_term({block_diag(t.A, z2), block_diag(t.B, z2), t.u, t.v});
    for (const auto& t : s2.P.terms()) P.add_term({block_diag(z1, t.A), block_diag(z1, t.B), t.u, t.v});
    for (const auto& t : s1.Q.terms()) Q.add_term({vstack(t.A, q2), vstack(t.B, q2), t.u, t.v});
    for (const auto& t : s2.Q.terms()) Q.add_term({vstack(q1, t.A), vstack(q1, t.B), t.u, t.v});
    Eigen::VectorXd W(static_cast<Eigen::Index>(N1 + N2));
    W << s1.W, lambda * s2.W;
    return TrigSAS{std::move(P), std::move(Q), std::move(W)};
}

double ShallowNetwork::operator()(const Eigen::VectorXd& stacked) const
{
    const auto n = static_cast<Eigen::Index>(inputs());
    if (stacked.size() != n * static_cast<Eigen::Index>(blocks.size()))
        throw DimensionError("shallow network expects " + std::to_string(n * static_cast<Eigen::Index>(blocks.size())) +
                             " inputs");
    Eigen::VectorXd pre = zeta;
    for (std::size_t k = 0; k < blocks.size(); ++k) pre += blocks[k] * stacked.segment(static_cast<Eigen::Index>(k) * n, n);
    return W.dot(activate(activation, pre));
}

ShallowNetwork shallow_from_readout(const NetworkReadout& r, std::size_t n, std::size_t K)
{
    if (r.inputs() != n * (K + 1))
        throw DimensionError("network readout has " + std::to_string(r.inputs()) + " inputs, expected n(K+1) = " +
                             std::to_string(n * (K + 1)));
    ShallowNetwork s;
    s.W = r.beta;
    s.zeta = -r.theta;
    s.activation = r.activation;
    const auto ni = static_cast<Eigen::Index>(n);
    for (std::size_t k = 0; k <= K; ++k) s.blocks.push_back(r.alpha.middleCols(static_cast<Eigen::Index>(k) * ni, ni));
    return s;
}

Eigen::VectorXd IdentityNetwork::operator()(const Eigen::VectorXd& x) const
{
    if (x.size() != W.rows()) throw DimensionError("identity network expects " + std::to_string(W.rows()) + " inputs");
    return W * activate(activation, A * x + zeta);
}

Eigen::VectorXd IdentityNetwork::power(const Eigen::VectorXd& x, std::size_t times) const
{
    Eigen::VectorXd y = x;
    for (std::size_t i = 0; i < times; ++i) y = (*this)(y);
    return y;
}

IdentityNetwork fit_identity_network(std::size_t n, Activation act, const IdentityFitOptions& o, std::uint64_t seed)
{
    if (n < 1 || o.hidden_per_channel < 1) throw DomainError("identity network needs n >= 1 and hidden units");
    if (!(o.m > 0.0)) throw DomainError("hypercube half-width m must be positive");
    const auto ni = static_cast<Eigen::Index>(n);
    const auto H = static_cast<Eigen::Index>(o.hidden_per_channel);
    IdentityNetwork J;
    J.activation = act;
    J.m = o.m;
    J.W = Eigen::MatrixXd::Zero(ni, ni * H);
    J.A = Eigen::MatrixXd::Zero(ni * H, ni);
    J.zeta = Eigen::VectorXd::Zero(ni * H);

    // Training abscissae on [-m, m]; shared by all channels since each channel's block sees only x_i.
    RandomStream rng(seed, 0x1D);
    std::vector<double> xs;
    for (std::size_t g = 0; g < o.grid_points; ++g)
        xs.push_back(o.grid_points == 1 ? 0.0 : -o.m + 2.0 * o.m * static_cast<double>(g) / static_cast<double>(o.grid_points - 1));
    for (std::size_t r = 0; r < o.random_points; ++r) xs.push_back(rng.uniform(-o.m, o.m));
    const auto S = static_cast<Eigen::Index>(xs.size());

    double eps = 0.0;
    for (Eigen::Index i = 0; i < ni; ++i) {
        // Unit h: slope a_h, kink at c_h; zeta = -a_h c_h. Kinks spread slightly beyond the cube.
        Eigen::VectorXd a(H), b(H);
        for (Eigen::Index h = 0; h < H; ++h) {
            const double slope = rng.uniform(0.5, 4.0) / o.m;
            const double centre = rng.uniform(-1.2 * o.m, 1.2 * o.m);
            a(h) = slope;
            b(h) = -slope * centre;
        }
        Eigen::MatrixXd F(S, H);
        Eigen::VectorXd y(S);
        for (Eigen::Index s = 0; s < S; ++s) {
            const double x = xs[static_cast<std::size_t>(s)];
            for (Eigen::Index h = 0; h < H; ++h) F(s, h) = activate(act, a(h) * x + b(h));
            y(s) = x;
        }
        const Eigen::VectorXd w = ridge_solve(F, y, o.ridge).coefficients;
        J.A.block(i * H, i, H, 1) = a;
        J.zeta.segment(i * H, H) = b;
        J.W.block(i, i * H, 1, H) = w.transpose();

        for (std::size_t c = 0; c < o.check_points; ++c) {
            const double x = o.check_points == 1 ? 0.0
                                                 : -o.m + 2.0 * o.m * static_cast<double>(c) / static_cast<double>(o.check_points - 1);
            double out = 0.0;
            for (Eigen::Index h = 0; h < H; ++h) out += w(h) * activate(act, a(h) * x + b(h));
            eps = std::max(eps, std::abs(out - x));
        }
    }
    J.epsilon = eps;
    return J;
}

EchoStateNetwork build_block_esn(const ShallowNetwork& inner, const IdentityNetwork& J)
{
    if (inner.blocks.empty()) throw DimensionError("inner network needs at least the A^(0) block");
    if (inner.activation != J.activation)
        throw DomainError("inner network uses " + std::string(to_string(inner.activation)) +
                          " but the identity network uses " + std::string(to_string(J.activation)));
    const auto n = static_cast<Eigen::Index>(inner.inputs());
    const auto Nbar = static_cast<Eigen::Index>(inner.hidden());
    const auto K = static_cast<Eigen::Index>(inner.lags());
    for (const auto& b : inner.blocks)
        if (b.rows() != Nbar || b.cols() != n) throw DimensionError("inner network blocks must be Nbar x n");
    if (inner.zeta.size() != Nbar) throw DimensionError("inner network bias must have length Nbar");
    const auto NJ = static_cast<Eigen::Index>(J.hidden());
    if (K > 0 && (J.W.rows() != n || J.W.cols() != NJ || J.A.cols() != n || J.zeta.size() != NJ))
        throw DimensionError("identity network shapes do not match the input dimension");

    const Eigen::Index N = K * NJ + Nbar;
    EchoStateNetwork e;
    e.activation = inner.activation;
    e.A = Eigen::MatrixXd::Zero(N, N);
    e.C = Eigen::MatrixXd::Zero(N, n);
    e.zeta = Eigen::VectorXd::Zero(N);
    e.W = Eigen::VectorXd::Zero(N);
    const Eigen::Index last = K * NJ;
    if (K > 0) {
        const Eigen::MatrixXd AJWJ = J.A * J.W;
        for (Eigen::Index j = 1; j < K; ++j) e.A.block(j * NJ, (j - 1) * NJ, NJ, NJ) = AJWJ;
        for (Eigen::Index j = 1; j <= K; ++j)
            e.A.block(last, (j - 1) * NJ, Nbar, NJ) = inner.blocks[static_cast<std::size_t>(j)] * J.W;
        e.C.topRows(NJ) = J.A;
        for (Eigen::Index j = 0; j < K; ++j) e.zeta.segment(j * NJ, NJ) = J.zeta;
    }
    e.C.bottomRows(Nbar) = inner.blocks[0];
    e.zeta.tail(Nbar) = inner.zeta;
    e.W.tail(Nbar) = inner.W;
    return e;
}

double block_esn_closed_form(const ShallowNetwork& inner, const IdentityNetwork& J, const Window& w)
{
    const std::size_t K = inner.lags();
    if (w.length() < K + 1) throw DomainError("window shorter than K+1");
    Eigen::VectorXd pre = inner.blocks[0] * w.at(0).transpose() + inner.zeta;
    for (std::size_t j = 1; j <= K; ++j) pre += inner.blocks[j] * J.power(w.at(j).transpose(), j);
    return inner.W.dot(activate(inner.activation, pre));
}

Eigen::VectorXd block_esn_substate(const IdentityNetwork& J, const Window& w, std::size_t j, std::size_t lag)
{
    if (j < 1) throw DomainError("sub-state index starts at 1");
    if (w.length() < lag + j) throw DomainError("window too short for the requested sub-state");
    return activate(J.activation, J.A * J.power(w.at(lag + j - 1).transpose(), j - 1) + J.zeta);
}

}  // namespace rcu
