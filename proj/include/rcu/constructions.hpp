#pragma once

// Explicit reservoirs whose functionals are known in closed form:
//   - the shift register, whose state is the stacked recent input history;
//   - nilpotent trigonometric state-affine systems realizing products of sines and cosines of
//     lagged inputs;
//   - direct sums of trig-SAS, realizing linear combinations of their functionals;
//   - block echo state networks that feed the history through identity-approximating networks
//     into a shallow network over the lagged inputs.

#include "rcu/reservoirs.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rcu {

/// N = n(K+1); A has identity blocks on the n-th subdiagonal, c = [I_n; 0]. Driven from any state
/// over a window with T >= K+1 the final state is (z_0^T, ..., z_{-K}^T)^T.
LinearReservoir build_shift_register(std::size_t n, std::size_t K);

/// Trig-SAS with N = K+1 whose functional is prod_{j in I} sin(u_j . z_{-j}) prod_{k not in I} cos(u_k . z_{-k}).
/// freqs is (K+1) x n with row k = u_k; sine[k] marks k in I. P(z) = sum_{j<K} A_{K-j} g_j(z),
/// Q(z) = e_1 g_K(z), W = e_{K+1}, with A_j the single-entry shifts of nilpotent.hpp.
TrigSAS build_nilpotent_trig_sas(const Eigen::MatrixXd& freqs, const std::vector<bool>& sine);

/// System with functional H_1 + lambda H_2: P = P_1 (+) P_2 block-diagonally, Q and W stacked
/// (W_2 scaled by lambda). Throws EspError unless both inputs are certified, DimensionError if the
/// input dimensions differ.
TrigSAS direct_sum_sas(const TrigSAS& s1, const TrigSAS& s2, double lambda);

/// Single-hidden-layer network h(z) = W^T sigma(A z + zeta) over the stacked history
/// (z_0^T, ..., z_{-K}^T)^T, stored as the blocks A = [A^{(0)} A^{(-1)} ... A^{(-K)}].
struct ShallowNetwork {
    Eigen::VectorXd W;                    // Nbar
    std::vector<Eigen::MatrixXd> blocks;  // K+1 blocks, each Nbar x n
    Eigen::VectorXd zeta;                 // Nbar
    Activation activation = Activation::tanh;

    std::size_t lags() const { return blocks.size() - 1; }
    std::size_t hidden() const { return static_cast<std::size_t>(W.size()); }
    std::size_t inputs() const { return blocks.empty() ? 0 : static_cast<std::size_t>(blocks.front().cols()); }
    double operator()(const Eigen::VectorXd& stacked) const;
};

/// Converts a network readout over the shift-register state (n(K+1) inputs) into block form.
ShallowNetwork shallow_from_readout(const NetworkReadout& r, std::size_t n, std::size_t K);

/// J(x) = W_J sigma(A_J x + zeta_J), an R^n -> R^n network approximating the identity on the
/// hypercube B_m = [-m, m]^n. `epsilon` is the measured sup-norm error on B_m.
struct IdentityNetwork {
    Eigen::MatrixXd W;     // n x N_J
    Eigen::MatrixXd A;     // N_J x n
    Eigen::VectorXd zeta;  // N_J
    Activation activation = Activation::tanh;
    double m = 1.0;
    double epsilon = 0.0;

    std::size_t channels() const { return static_cast<std::size_t>(W.rows()); }
    std::size_t hidden() const { return static_cast<std::size_t>(A.rows()); }
    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
    /// J applied `times` times (the identity for times = 0).
    Eigen::VectorXd power(const Eigen::VectorXd& x, std::size_t times) const;
};

struct IdentityFitOptions {
    std::size_t hidden_per_channel = 32;
    double m = 1.0;
    std::size_t grid_points = 401;    // per channel, uniformly spaced on [-m, m]
    std::size_t random_points = 400;  // extra uniform draws on [-m, m]
    std::size_t check_points = 4001;  // dense grid for measuring epsilon
    double ridge = 1e-12;
};

/// Fits the componentwise identity by least squares. Channel i uses hidden units that read only
/// x_i, with slopes and offsets drawn under `seed` so their kinks cover [-m, m]; the output
/// weights are the least-squares solution. epsilon is the largest error over a dense grid of B_m
/// (per channel; the channels do not interact).
IdentityNetwork fit_identity_network(std::size_t n, Activation activation, const IdentityFitOptions& opts,
                                     std::uint64_t seed);

/// ESN with N = K N_J + Nbar: blocks 1..K carry sigma(A_J [J]^{j-1}(z_{t-j+1}) + zeta_J) and the
/// last block evaluates the inner network on (z_t, J(z_{t-1}), ..., J^K(z_{t-K})). Throws
/// DomainError on activation mismatch, DimensionError on inconsistent shapes.
EchoStateNetwork build_block_esn(const ShallowNetwork& inner, const IdentityNetwork& J);

/// Closed form H_m(z) = Wbar^T sigma(sum_{j=1}^K A^{(-j)} J^j(z_{-j}) + A^{(0)} z_0 + zetabar),
/// evaluated by direct composition.
double block_esn_closed_form(const ShallowNetwork& inner, const IdentityNetwork& J, const Window& w);

/// Closed form of sub-state j (1 <= j <= K) at lag `lag`: sigma(A_J [J]^{j-1}(z_{-lag-j+1}) + zeta_J).
Eigen::VectorXd block_esn_substate(const IdentityNetwork& J, const Window& w, std::size_t j, std::size_t lag = 0);

}  // namespace rcu
