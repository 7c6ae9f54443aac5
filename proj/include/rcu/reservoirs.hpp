#pragma once

// Reservoir systems x_t = F(x_{t-1}, z_t) in three families:
//   linear      x_t = A x_{t-1} + c z_t                    (readout supplied separately)
//   trig-SAS    x_t = P(z_t) x_{t-1} + Q(z_t),  y_t = W^T x_t
//   ESN         x_t = sigma(A x_{t-1} + C z_t + zeta),  y_t = W^T x_t

#include "rcu/activation.hpp"
#include "rcu/functional.hpp"
#include "rcu/readouts.hpp"
#include "rcu/window.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rcu {

struct LinearReservoir {
    Eigen::MatrixXd A;  // N x N
    Eigen::MatrixXd c;  // N x n
};

/// One term A cos(u . z) + B sin(v . z).
struct TrigTerm {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::VectorXd u;
    Eigen::VectorXd v;
};

/// R(z) = sum_k A_k cos(u_k . z) + B_k sin(v_k . z), an N x M matrix-valued function of z in R^n.
class TrigPolynomial {
public:
    TrigPolynomial(std::size_t rows, std::size_t cols, std::size_t inputs) : rows_(rows), cols_(cols), inputs_(inputs) {}
    TrigPolynomial(std::size_t rows, std::size_t cols, std::size_t inputs, std::vector<TrigTerm> terms);

    /// Throws DimensionError on shape mismatch.
    void add_term(TrigTerm term);

    Eigen::MatrixXd operator()(const Eigen::VectorXd& z) const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t inputs() const { return inputs_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }

    /// sum_k (||A_k||_2 + ||B_k||_2): a uniform bound on ||R(z)||_2.
    double operator_norm_bound() const;

private:
    std::size_t rows_, cols_, inputs_;
    std::vector<TrigTerm> terms_;
};

struct TrigSAS {
    TrigPolynomial P;   // N x N
    TrigPolynomial Q;   // N x 1
    Eigen::VectorXd W;  // N
};

struct EchoStateNetwork {
    Eigen::MatrixXd A;     // N x N
    Eigen::MatrixXd C;     // N x n
    Eigen::VectorXd zeta;  // N
    Eigen::VectorXd W;     // N
    Activation activation = Activation::tanh;
};

using ReservoirSystem = std::variant<LinearReservoir, TrigSAS, EchoStateNetwork>;

std::string family_name(const ReservoirSystem& s);
std::size_t state_dimension(const ReservoirSystem& s);
std::size_t input_dimension(const ReservoirSystem& s);

/// Throws DimensionError if the system's matrices are mutually inconsistent.
void validate(const ReservoirSystem& s);

/// One application of the state map.
Eigen::VectorXd step(const ReservoirSystem& s, const Eigen::VectorXd& x, const Eigen::VectorXd& z);

struct Trajectory {
    /// Row k holds x_{-k} (same orientation as the input window).
    Eigen::MatrixXd states;
    /// W^T x_0 for trig-SAS and ESN; empty for linear reservoirs.
    std::optional<double> output;

    Eigen::VectorXd final_state() const { return states.row(0).transpose(); }
};

/// Iterates from the oldest row to row 0 starting at x_init (zero if omitted).
/// Throws DimensionError on shape mismatch, NumericOverflow if a state becomes non-finite.
Trajectory run_reservoir(const ReservoirSystem& s, const Window& w, const std::optional<Eigen::VectorXd>& x_init = {});

/// Final state only, without storing the trajectory.
Eigen::VectorXd final_state(const ReservoirSystem& s, const Window& w);

/// Final states of many windows at once, one column per window (all windows must share length).
/// Linear reservoirs and ESNs are advanced as matrix-matrix products.
Eigen::MatrixXd final_states(const ReservoirSystem& s, const std::vector<Window>& windows);

enum class EspMethod { spectral, nilpotent, lipschitz_spectral, empirical };

std::string to_string(EspMethod m);

struct EspReport {
    bool certified = false;
    EspMethod method = EspMethod::spectral;
    /// Contraction modulus for spectral certificates (or the failed bound); 0 for nilpotent ones.
    double bound = 0.0;
    /// Steps after which two trajectories coincide exactly (nilpotent certificates).
    std::optional<std::size_t> nilpotency_depth;
    std::optional<double> empirical_decay_rate;
};

/// Sufficient conditions, tried in order:
///   linear   sigma_max(A) < 1, then nilpotency of A
///   trig-SAS sum_k (||A_k||_2 + ||B_k||_2) < 1 over P, taken as the largest value over the
///            decoupled diagonal blocks of P (connected components of its support), then
///            nilpotency of P's coefficient matrices
///   ESN      L_sigma sigma_max(A) < 1, then nilpotency of A
/// Nilpotency is decided exactly on the sparsity pattern: if the directed graph with an edge l -> k
/// for every nonzero (k, l) entry of any coefficient matrix is acyclic with longest path length D,
/// then every product of D+1 coefficient matrices is exactly zero and trajectories from different
/// initial states coincide after D+1 steps. Never certifies from empirical evidence.
EspReport certify_esp(const ReservoirSystem& s);

/// Longest path in the support graph of the given N x N matrices plus one, or nullopt if the
/// graph has a cycle.
std::optional<std::size_t> support_nilpotency_depth(const std::vector<const Eigen::MatrixXd*>& matrices);

/// ||x_t - x'_t||_2 for t = 0..T: entry 0 is the initial distance, entry t the distance after
/// t steps (after consuming window rows T-1 down to T-t).
std::vector<double> washout_decay(const ReservoirSystem& s, const Window& w, const Eigen::VectorXd& x_init_a,
                                  const Eigen::VectorXd& x_init_b);

/// Same with both initial states drawn uniformly from [-1, 1]^N under `seed`.
std::vector<double> washout_decay(const ReservoirSystem& s, const Window& w, std::uint64_t seed);

/// exp of the least-squares slope of log distance against step over the strictly positive entries;
/// nullopt if fewer than two positive entries exist.
std::optional<double> fit_decay_rate(const std::vector<double>& distances);

/// True if the distances respect the certificate: d_t <= d_0 bound^t (1 + slack) for spectral
/// certificates, d_t == 0 for t >= depth for nilpotent ones.
bool washout_within_certificate(const EspReport& report, const std::vector<double>& distances, double slack = 1e-9);

/// A reservoir system together with its readout; the readout is required for linear reservoirs and
/// must be absent for trig-SAS and ESN, whose readout W is part of the system.
struct ReservoirModel {
    ReservoirSystem system;
    std::optional<Readout> readout;

    /// Throws DimensionError on inconsistent shapes or readout presence.
    void validate() const;
};

/// H^RC(window): run from the zero state, then apply the readout.
double reservoir_functional(const ReservoirModel& m, const Window& w);

/// Wraps the model as a custom functional (memory unbounded unless given).
FunctionalSpec as_functional(ReservoirModel m, std::string name, std::optional<std::size_t> memory = {});

// ---------------------------------------------------------------------------------------------
// Random reservoirs used by the trained families.

/// A = Q diag(s) Q^T with Q Haar-orthogonal and s uniform on [0, sigma_max]; c Gaussian * input_scale.
LinearReservoir random_linear_reservoir(std::size_t N, std::size_t n, double sigma_max, double input_scale,
                                        std::uint64_t seed);

struct RandomEsnOptions {
    double sigma_max = 0.9;
    double input_scale = 0.3;
    double bias_scale = 0.1;
    Activation activation = Activation::tanh;
};

/// Symmetric A with uniformly spread singular values in [0, sigma_max], Gaussian C and zeta; W = 0.
EchoStateNetwork random_esn(std::size_t N, std::size_t n, const RandomEsnOptions& opts, std::uint64_t seed);

struct RandomTrigSasOptions {
    std::size_t terms = 2;
    /// Target value of sum_k (||A_k||_2 + ||B_k||_2) for P; must be < 1 for certification.
    double contraction = 0.9;
    double frequency_scale = 1.0;
};

/// P rescaled to the requested contraction bound, Q with Gaussian coefficients; W = 0.
TrigSAS random_trig_sas(std::size_t N, std::size_t n, const RandomTrigSasOptions& opts, std::uint64_t seed);

/// Replaces the readout weights of a trig-SAS or ESN.
ReservoirSystem with_readout(ReservoirSystem s, const Eigen::VectorXd& W);

}  // namespace rcu
