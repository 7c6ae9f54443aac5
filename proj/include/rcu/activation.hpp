#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

namespace rcu {

/// Bounded, continuous, non-constant activations.
enum class Activation { logistic, tanh, hard_sigmoid };

inline double activate(Activation a, double x)
{
    switch (a) {
    case Activation::logistic: return 1.0 / (1.0 + std::exp(-x));
    case Activation::tanh: return std::tanh(x);
    case Activation::hard_sigmoid: return std::clamp(0.2 * x + 0.5, 0.0, 1.0);
    }
    return 0.0;
}

template <typename Derived>
Eigen::VectorXd activate(Activation a, const Eigen::MatrixBase<Derived>& x)
{
    return x.unaryExpr([a](double v) { return activate(a, v); });
}

/// Global Lipschitz constant.
constexpr double lipschitz_constant(Activation a)
{
    switch (a) {
    case Activation::logistic: return 0.25;
    case Activation::tanh: return 1.0;
    case Activation::hard_sigmoid: return 0.2;
    }
    return 1.0;
}

/// sup |sigma(x)|.
constexpr double sup_abs(Activation) { return 1.0; }

std::string_view to_string(Activation a);
/// Throws DomainError for unknown names (including unbounded ones such as "relu").
Activation activation_from_string(std::string_view name);

}  // namespace rcu
