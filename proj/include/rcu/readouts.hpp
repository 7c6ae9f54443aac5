#pragma once

// Readout maps h: R^N -> R.

#include "rcu/activation.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <variant>
#include <vector>

namespace rcu {

/// Largest admissible monomial count C(N+d, d).
inline constexpr std::size_t kMaxPolyFeatures = 10'000'000;

/// C(N+d, d) or kMaxPolyFeatures + 1 if the count exceeds the guard.
std::size_t poly_feature_count(std::size_t n_vars, std::size_t degree);

/// Exponent vectors of total degree <= d in graded-lexicographic order: constant first, then
/// degree 1, 2, ...; within a degree, exponent vectors in descending lexicographic order.
std::vector<std::vector<unsigned>> graded_lex_multi_indices(std::size_t n_vars, std::size_t degree);

/// Monomials of x in graded-lex order. Throws DomainError if the feature count exceeds the guard.
Eigen::VectorXd poly_features(const Eigen::VectorXd& x, std::size_t degree);

struct LinearReadout {
    Eigen::VectorXd W;
};

struct PolynomialReadout {
    std::size_t n_vars = 0;
    std::size_t degree = 0;
    /// One coefficient per multi-index, graded-lex order.
    Eigen::VectorXd coefficients;

    /// Throws DimensionError if coefficient count != C(n_vars+degree, degree).
    PolynomialReadout(std::size_t n_vars, std::size_t degree, Eigen::VectorXd coefficients);
    PolynomialReadout() = default;

    /// Sets the coefficient of the monomial with the given exponents.
    void set(const std::vector<unsigned>& exponents, double value);
};

/// h(x) = sum_j beta_j sigma(alpha_j . x - theta_j); alpha holds alpha_j as rows.
struct NetworkReadout {
    Eigen::VectorXd beta;
    Eigen::MatrixXd alpha;
    Eigen::VectorXd theta;
    Activation activation = Activation::tanh;

    std::size_t hidden() const { return static_cast<std::size_t>(beta.size()); }
    std::size_t inputs() const { return static_cast<std::size_t>(alpha.cols()); }
};

using Readout = std::variant<LinearReadout, PolynomialReadout, NetworkReadout>;

double eval_readout(const LinearReadout& r, const Eigen::VectorXd& x);
double eval_readout(const PolynomialReadout& r, const Eigen::VectorXd& x);
double eval_readout(const NetworkReadout& r, const Eigen::VectorXd& x);
double eval_readout(const Readout& r, const Eigen::VectorXd& x);

/// Input dimension the readout expects.
std::size_t readout_inputs(const Readout& r);
/// Number of fitted coefficients.
std::size_t readout_coefficients(const Readout& r);

/// Hidden-layer activations sigma(alpha x - theta) for a network readout.
Eigen::VectorXd network_hidden(const NetworkReadout& r, const Eigen::VectorXd& x);

}  // namespace rcu
