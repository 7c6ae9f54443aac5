#include "rcu/functional.hpp"

#include "rcu/errors.hpp"

#include <cmath>
#include <sstream>

namespace rcu {

std::string to_string(FunctionalKind k)
{
    switch (k) {
    case FunctionalKind::constant: return "constant";
    case FunctionalKind::finite_poly: return "finite_poly";
    case FunctionalKind::geometric_ma: return "geometric_ma";
    case FunctionalKind::peak_hold: return "peak_hold";
    case FunctionalKind::trig_product: return "trig_product";
    case FunctionalKind::garch_vol: return "garch_vol";
    case FunctionalKind::custom: return "custom";
    }
    return "unknown";
}

FunctionalSpec FunctionalSpec::constant(double c)
{
    if (!std::isfinite(c)) throw DomainError("constant functional must be finite");
    return FunctionalSpec(ConstantFunctional{c});
}

FunctionalSpec FunctionalSpec::finite_poly(std::size_t n, std::size_t K, PolynomialReadout q)
{
    if (n < 1) throw DomainError("finite_poly needs n >= 1");
    if (q.n_vars != n * (K + 1))
        throw DimensionError("finite_poly over " + std::to_string(K + 1) + " lags of " + std::to_string(n) +
                             " channels needs " + std::to_string(n * (K + 1)) + " variables, polynomial has " +
                             std::to_string(q.n_vars));
    return FunctionalSpec(FinitePolyFunctional{K, std::move(q)});
}

FunctionalSpec FunctionalSpec::geometric_ma(double lambda)
{
    if (!(std::abs(lambda) < 1.0)) throw DomainError("geometric_ma requires |lambda| < 1");
    return FunctionalSpec(GeometricMaFunctional{lambda});
}

FunctionalSpec FunctionalSpec::peak_hold() { return FunctionalSpec(PeakHoldFunctional{}); }

FunctionalSpec FunctionalSpec::trig_product(Eigen::MatrixXd freqs, std::vector<bool> sine)
{
    if (freqs.rows() < 1 || freqs.cols() < 1) throw DomainError("trig_product needs at least one lag and channel");
    if (static_cast<Eigen::Index>(sine.size()) != freqs.rows())
        throw DimensionError("trig_product sine mask must have one entry per lag");
    if (!freqs.allFinite()) throw DomainError("trig_product frequencies must be finite");
    return FunctionalSpec(TrigProductFunctional{std::move(freqs), std::move(sine)});
}

FunctionalSpec FunctionalSpec::garch_vol(double omega, double alpha, double beta)
{
    if (!(omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0))
        throw DomainError("garch_vol requires omega > 0, alpha >= 0, beta >= 0 and alpha + beta < 1");
    return FunctionalSpec(GarchVolFunctional{omega, alpha, beta});
}

FunctionalSpec FunctionalSpec::custom(std::string name, std::optional<std::size_t> memory,
                                      std::function<double(const Window&)> eval)
{
    if (!eval) throw DomainError("custom functional needs a callable");
    return FunctionalSpec(CustomFunctional{std::move(name), memory, std::move(eval)});
}

FunctionalKind FunctionalSpec::kind() const
{
    return static_cast<FunctionalKind>(def_->index());
}

std::optional<std::size_t> FunctionalSpec::memory() const
{
    struct {
        std::optional<std::size_t> operator()(const ConstantFunctional&) const { return 0; }
        std::optional<std::size_t> operator()(const FinitePolyFunctional& f) const { return f.lags; }
        std::optional<std::size_t> operator()(const GeometricMaFunctional&) const { return std::nullopt; }
        std::optional<std::size_t> operator()(const PeakHoldFunctional&) const { return std::nullopt; }
        std::optional<std::size_t> operator()(const TrigProductFunctional& f) const
        {
            return static_cast<std::size_t>(f.freqs.rows() - 1);
        }
        std::optional<std::size_t> operator()(const GarchVolFunctional&) const { return std::nullopt; }
        std::optional<std::size_t> operator()(const CustomFunctional& f) const { return f.memory; }
    } v;
    return std::visit(v, *def_);
}

std::optional<std::size_t> FunctionalSpec::channels() const
{
    if (const auto* f = std::get_if<FinitePolyFunctional>(def_.get())) return f->poly.n_vars / (f->lags + 1);
    if (const auto* f = std::get_if<TrigProductFunctional>(def_.get())) return static_cast<std::size_t>(f->freqs.cols());
    return std::nullopt;
}

std::string FunctionalSpec::name() const
{
    std::ostringstream os;
    os.precision(6);
    struct {
        std::ostringstream& os;
        void operator()(const ConstantFunctional& f) { os << "constant(" << f.value << ")"; }
        void operator()(const FinitePolyFunctional& f) { os << "finite_poly(K=" << f.lags << ",d=" << f.poly.degree << ")"; }
        void operator()(const GeometricMaFunctional& f) { os << "geometric_ma(" << f.lambda << ")"; }
        void operator()(const PeakHoldFunctional&) { os << "peak_hold"; }
        void operator()(const TrigProductFunctional& f) { os << "trig_product(K=" << f.freqs.rows() - 1 << ")"; }
        void operator()(const GarchVolFunctional& f)
        {
            os << "garch_vol(" << f.omega << "," << f.alpha << "," << f.beta << ")";
        }
        void operator()(const CustomFunctional& f) { os << f.name; }
    } v{os};
    std::visit(v, *def_);
    return os.str();
}

namespace {

struct Evaluator {
    const Window& w;

    double operator()(const ConstantFunctional& f) const { return f.value; }

    double operator()(const FinitePolyFunctional& f) const { return eval_readout(f.poly, w.stacked(f.lags)); }

    double operator()(const GeometricMaFunctional& f) const
    {
        // Horner from the oldest lag keeps one multiply per step.
        double acc = 0.0;
        for (std::size_t k = w.length(); k-- > 0;) acc = f.lambda * acc + w.at(k, 0);
        return acc;
    }

    double operator()(const PeakHoldFunctional&) const { return w.data().col(0).maxCoeff(); }

    double operator()(const TrigProductFunctional& f) const
    {
        double prod = 1.0;
        for (Eigen::Index k = 0; k < f.freqs.rows(); ++k) {
            const double phase = f.freqs.row(k).dot(w.at(static_cast<std::size_t>(k)));
            prod *= f.sine[static_cast<std::size_t>(k)] ? std::sin(phase) : std::cos(phase);
        }
        return prod;
    }

    double operator()(const GarchVolFunctional& f) const
    {
        double acc = 0.0;
        for (std::size_t k = w.length(); k-- > 1;) {
            const double z = w.at(k, 0);
            acc = f.beta * acc + z * z;
        }
        return f.omega / (1.0 - f.beta) + f.alpha * acc;
    }

    double operator()(const CustomFunctional& f) const { return f.eval(w); }
};

}  // namespace

double evaluate_functional(const FunctionalSpec& spec, const Window& w)
{
    if (const auto K = spec.memory(); K && w.length() < *K + 1)
        throw DomainError(spec.name() + " has memory " + std::to_string(*K) + " but the window has only " +
                          std::to_string(w.length()) + " lags");
    if (const auto n = spec.channels(); n && *n != w.channels())
        throw DomainError(spec.name() + " expects " + std::to_string(*n) + " channels, window has " +
                          std::to_string(w.channels()));
    return std::visit(Evaluator{w}, spec.definition());
}

}  // namespace rcu
