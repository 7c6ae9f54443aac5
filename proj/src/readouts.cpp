#include "rcu/readouts.hpp"

#include "rcu/errors.hpp"

#include <string>

namespace rcu {

std::size_t poly_feature_count(std::size_t n_vars, std::size_t degree)
{
    // C(N+d, d) built incrementally: C(N+k, k) = C(N+k-1, k-1) * (N+k) / k stays integral.
    unsigned __int128 c = 1;
    for (std::size_t k = 1; k <= degree; ++k) {
        c = c * (n_vars + k) / k;
        if (c > kMaxPolyFeatures) return kMaxPolyFeatures + 1;
    }
    return static_cast<std::size_t>(c);
}

namespace {

void check_guard(std::size_t n_vars, std::size_t degree)
{
    if (poly_feature_count(n_vars, degree) > kMaxPolyFeatures)
        throw DomainError("polynomial feature count C(" + std::to_string(n_vars + degree) + ", " +
                          std::to_string(degree) + ") exceeds the limit of 10^7");
}

// Exponent vectors summing to `total` over variables [var, n), descending lexicographic.
void enumerate(std::vector<unsigned>& current, std::size_t var, unsigned total,
               std::vector<std::vector<unsigned>>& out)
{
    if (var + 1 == current.size()) {
        current[var] = total;
        out.push_back(current);
        return;
    }
    for (unsigned e = total + 1; e-- > 0;) {
        current[var] = e;
        enumerate(current, var + 1, total - e, out);
    }
    current[var] = 0;
}

double monomial(const std::vector<unsigned>& exponents, const Eigen::VectorXd& x)
{
    double m = 1.0;
    for (std::size_t v = 0; v < exponents.size(); ++v)
        for (unsigned e = 0; e < exponents[v]; ++e) m *= x(static_cast<Eigen::Index>(v));
    return m;
}

}  // namespace

std::vector<std::vector<unsigned>> graded_lex_multi_indices(std::size_t n_vars, std::size_t degree)
{
    check_guard(n_vars, degree);
    std::vector<std::vector<unsigned>> out;
    out.reserve(poly_feature_count(n_vars, degree));
    if (n_vars == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<unsigned> current(n_vars, 0);
    for (unsigned total = 0; total <= degree; ++total) enumerate(current, 0, total, out);
    return out;
}

Eigen::VectorXd poly_features(const Eigen::VectorXd& x, std::size_t degree)
{
    const auto indices = graded_lex_multi_indices(static_cast<std::size_t>(x.size()), degree);
    Eigen::VectorXd f(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) f(static_cast<Eigen::Index>(i)) = monomial(indices[i], x);
    return f;
}

PolynomialReadout::PolynomialReadout(std::size_t n, std::size_t d, Eigen::VectorXd c)
    : n_vars(n), degree(d), coefficients(std::move(c))
{
    const auto expected = poly_feature_count(n, d);
    if (expected > kMaxPolyFeatures) check_guard(n, d);
    if (static_cast<std::size_t>(coefficients.size()) != expected)
        throw DimensionError("polynomial in " + std::to_string(n) + " variables of degree " + std::to_string(d) +
                             " needs " + std::to_string(expected) + " coefficients, got " +
                             std::to_string(coefficients.size()));
}

void PolynomialReadout::set(const std::vector<unsigned>& exponents, double value)
{
    const auto indices = graded_lex_multi_indices(n_vars, degree);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] == exponents) {
            coefficients(static_cast<Eigen::Index>(i)) = value;
            return;
        }
    }
    throw DomainError("exponent vector is not a monomial of this polynomial space");
}

double eval_readout(const LinearReadout& r, const Eigen::VectorXd& x)
{
    if (r.W.size() != x.size()) throw DimensionError("linear readout expects " + std::to_string(r.W.size()) + " inputs");
    return r.W.dot(x);
}

double eval_readout(const PolynomialReadout& r, const Eigen::VectorXd& x)
{
    if (static_cast<std::size_t>(x.size()) != r.n_vars)
        throw DimensionError("polynomial readout expects " + std::to_string(r.n_vars) + " inputs");
    return r.coefficients.dot(poly_features(x, r.degree));
}

Eigen::VectorXd network_hidden(const NetworkReadout& r, const Eigen::VectorXd& x)
{
    if (r.alpha.cols() != x.size())
        throw DimensionError("network readout expects " + std::to_string(r.alpha.cols()) + " inputs");
    if (r.alpha.rows() != r.beta.size() || r.theta.size() != r.beta.size())
        throw DimensionError("network readout has inconsistent hidden sizes");
    return activate(r.activation, r.alpha * x - r.theta);
}

double eval_readout(const NetworkReadout& r, const Eigen::VectorXd& x) { return r.beta.dot(network_hidden(r, x)); }

double eval_readout(const Readout& r, const Eigen::VectorXd& x)
{
    return std::visit([&](const auto& h) { return eval_readout(h, x); }, r);
}

std::size_t readout_inputs(const Readout& r)
{
    struct {
        std::size_t operator()(const LinearReadout& h) const { return static_cast<std::size_t>(h.W.size()); }
        std::size_t operator()(const PolynomialReadout& h) const { return h.n_vars; }
        std::size_t operator()(const NetworkReadout& h) const { return h.inputs(); }
    } v;
    return std::visit(v, r);
}

std::size_t readout_coefficients(const Readout& r)
{
    struct {
        std::size_t operator()(const LinearReadout& h) const { return static_cast<std::size_t>(h.W.size()); }
        std::size_t operator()(const PolynomialReadout& h) const { return static_cast<std::size_t>(h.coefficients.size()); }
        std::size_t operator()(const NetworkReadout& h) const { return h.hidden(); }
    } v;
    return std::visit(v, r);
}

}  // namespace rcu

namespace rcu {

std::string_view to_string(Activation a)
{
    switch (a) {
    case Activation::logistic: return "logistic";
    case Activation::tanh: return "tanh";
    case Activation::hard_sigmoid: return "hard_sigmoid";
    }
    return "unknown";
}

Activation activation_from_string(std::string_view name)
{
    if (name == "logistic") return Activation::logistic;
    if (name == "tanh") return Activation::tanh;
    if (name == "hard_sigmoid") return Activation::hard_sigmoid;
    throw DomainError("unknown or unbounded activation '" + std::string(name) +
                      "'; expected logistic, tanh or hard_sigmoid");
}

}  // namespace rcu
