#pragma once

// Causal functionals H: (R^n)^{Z_-} -> R evaluated on finite windows.
//
// Truncation semantics (how each kind treats the unseen past beyond the window):
//   constant      no dependence on the input.
//   finite_poly   q(z_0, ..., z_{-K}); exact once T >= K+1.
//   geometric_ma  sum_{t=0}^{T-1} lambda^t z_{-t} on channel 0; the unseen past contributes zero.
//   peak_hold     max over the T rows of channel 0 (the running sup of the truncated path).
//   trig_product  prod_{j in I} sin(u_j . z_{-j}) prod_{k not in I} cos(u_k . z_{-k}); exact once T >= K+1.
//   garch_vol     omega/(1-beta) + alpha sum_{j=0}^{T-2} beta^j z_{-j-1}^2 on channel 0; the unseen past
//                 contributes zero to the sum.
//   custom        an opaque callable, e.g. a reservoir functional.

#include "rcu/readouts.hpp"
#include "rcu/window.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rcu {

enum class FunctionalKind { constant, finite_poly, geometric_ma, peak_hold, trig_product, garch_vol, custom };

std::string to_string(FunctionalKind k);

struct ConstantFunctional {
    double value = 0.0;
};

/// q applied to the stacked vector (z_0^T, ..., z_{-K}^T)^T; q has n(K+1) variables.
struct FinitePolyFunctional {
    std::size_t lags = 0;  // K
    PolynomialReadout poly;
};

struct GeometricMaFunctional {
    double lambda = 0.5;
};

struct PeakHoldFunctional {};

/// Row k of `freqs` is u_k in R^n, k = 0..K; sine[k] selects sin over cos for lag k.
struct TrigProductFunctional {
    Eigen::MatrixXd freqs;
    std::vector<bool> sine;
};

struct GarchVolFunctional {
    double omega = 0.1;
    double alpha = 0.1;
    double beta = 0.8;
};

struct CustomFunctional {
    std::string name;
    std::optional<std::size_t> memory;
    std::function<double(const Window&)> eval;
};

class FunctionalSpec {
public:
    using Definition = std::variant<ConstantFunctional, FinitePolyFunctional, GeometricMaFunctional,
                                    PeakHoldFunctional, TrigProductFunctional, GarchVolFunctional, CustomFunctional>;

    static FunctionalSpec constant(double c);
    /// Throws DimensionError if the polynomial does not have n(K+1) variables.
    static FunctionalSpec finite_poly(std::size_t n, std::size_t K, PolynomialReadout q);
    /// Throws DomainError unless |lambda| < 1.
    static FunctionalSpec geometric_ma(double lambda);
    static FunctionalSpec peak_hold();
    /// freqs is (K+1) x n; sine has K+1 entries.
    static FunctionalSpec trig_product(Eigen::MatrixXd freqs, std::vector<bool> sine);
    /// Throws DomainError unless omega > 0, alpha, beta >= 0, alpha + beta < 1.
    static FunctionalSpec garch_vol(double omega, double alpha, double beta);
    static FunctionalSpec custom(std::string name, std::optional<std::size_t> memory,
                                 std::function<double(const Window&)> eval);

    FunctionalKind kind() const;
    /// Finite memory K, or nullopt for infinite memory.
    std::optional<std::size_t> memory() const;
    /// Required channel count, if the functional fixes one.
    std::optional<std::size_t> channels() const;
    /// Short human-readable name such as "geometric_ma(0.5)".
    std::string name() const;

    const Definition& definition() const { return *def_; }

private:
    explicit FunctionalSpec(Definition d) : def_(std::make_shared<const Definition>(std::move(d))) {}
    std::shared_ptr<const Definition> def_;
};

/// H applied to the window. Throws DomainError if the window is shorter than K+1 for a finite-memory
/// functional or has the wrong channel count.
double evaluate_functional(const FunctionalSpec& spec, const Window& w);

}  // namespace rcu
