#include "rcu/targets.hpp"

#include "rcu/errors.hpp"
#include "rcu/rng.hpp"

#include <cmath>

namespace rcu {

namespace {

std::string note_for(FunctionalKind k)
{
    switch (k) {
    case FunctionalKind::constant: return "integrable under every sampler";
    case FunctionalKind::finite_poly:
        return "integrable when inputs have finite moments of order p times the degree";
    case FunctionalKind::geometric_ma: return "integrable when inputs have a finite p-th moment";
    case FunctionalKind::peak_hold:
        return "bounded-support samplers only; equals a_max almost surely there and is infinite for "
               "unbounded i.i.d. inputs";
    case FunctionalKind::trig_product: return "bounded by 1, integrable under every sampler";
    case FunctionalKind::garch_vol: return "integrable when inputs have a finite moment of order 2p";
    case FunctionalKind::custom: return "unknown";
    }
    return "unknown";
}

}  // namespace

TargetCatalogEntry catalog_entry(const FunctionalSpec& spec)
{
    return {spec, note_for(spec.kind()), spec.kind() == FunctionalKind::peak_hold};
}

std::vector<TargetCatalogEntry> catalog()
{
    Eigen::MatrixXd freqs(3, 1);
    freqs << 1.0, 0.7, 1.3;
    return {
        catalog_entry(FunctionalSpec::constant(1.0)),
        catalog_entry(random_finite_poly(1, 2, 2, 7)),
        catalog_entry(FunctionalSpec::geometric_ma(0.5)),
        catalog_entry(FunctionalSpec::geometric_ma(0.9)),
        catalog_entry(FunctionalSpec::peak_hold()),
        catalog_entry(FunctionalSpec::trig_product(freqs, {true, false, true})),
        catalog_entry(FunctionalSpec::garch_vol(0.1, 0.1, 0.8)),
    };
}

bool sampler_admissible(const TargetCatalogEntry& entry, const ProcessSampler& sampler)
{
    if (entry.requires_bounded_support && !sampler.bounded_support()) return false;
    if (const auto c = entry.spec.channels(); c && *c != sampler.channels()) return false;
    return true;
}

void require_admissible(const FunctionalSpec& spec, const ProcessSampler& sampler)
{
    const auto entry = catalog_entry(spec);
    if (entry.requires_bounded_support && !sampler.bounded_support())
        throw DomainError(spec.name() + " is restricted to bounded-support samplers; under " + sampler.describe() +
                          " it is not p-integrable");
    if (const auto c = spec.channels(); c && *c != sampler.channels())
        throw DimensionError(spec.name() + " expects " + std::to_string(*c) + " channels, sampler has " +
                             std::to_string(sampler.channels()));
}

std::optional<double> truncation_bound(const FunctionalSpec& spec, std::size_t T, const ProcessSampler* sampler)
{
    return std::visit(
        [&](const auto& d) -> std::optional<double> {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ConstantFunctional>) {
                return 0.0;
            } else if constexpr (std::is_same_v<D, FinitePolyFunctional>) {
                if (T < d.lags + 1) return std::nullopt;
                return 0.0;
            } else if constexpr (std::is_same_v<D, TrigProductFunctional>) {
                if (T < static_cast<std::size_t>(d.freqs.rows())) return std::nullopt;
                return 0.0;
            } else if constexpr (std::is_same_v<D, GeometricMaFunctional>) {
                double B = 1.0;
                if (sampler) {
                    if (const auto sup = sampler->bounded_support())
                        B = std::max(std::abs(sup->first), std::abs(sup->second));
                    else
                        B = std::sqrt(sampler->second_moment());
                }
                const double l = std::abs(d.lambda);
                return std::pow(l, static_cast<double>(T)) / (1.0 - l) * B;
            } else if constexpr (std::is_same_v<D, GarchVolFunctional>) {
                if (T < 1) return std::nullopt;
                const double ez2 = sampler ? sampler->second_moment() : d.omega / (1.0 - d.alpha - d.beta);
                return d.alpha * std::pow(d.beta, static_cast<double>(T - 1)) * ez2 / (1.0 - d.beta);
            } else {
                return std::nullopt;
            }
        },
        spec.definition());
}

FunctionalSpec random_finite_poly(std::size_t n, std::size_t K, std::size_t degree, std::uint64_t seed)
{
    const std::size_t vars = n * (K + 1);
    RandomStream rng(seed, 0);
    Eigen::VectorXd c(static_cast<Eigen::Index>(poly_feature_count(vars, degree)));
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = rng.normal();
    return FunctionalSpec::finite_poly(n, K, PolynomialReadout(vars, degree, std::move(c)));
}

FunctionalSpec random_trig_product(std::size_t n, std::size_t K, double scale, std::uint64_t seed)
{
    RandomStream rng(seed, 0);
    Eigen::MatrixXd freqs(static_cast<Eigen::Index>(K + 1), static_cast<Eigen::Index>(n));
    for (Eigen::Index k = 0; k < freqs.rows(); ++k)
        for (Eigen::Index i = 0; i < freqs.cols(); ++i) freqs(k, i) = scale * rng.normal();
    std::vector<bool> sine(K + 1);
    for (std::size_t k = 0; k <= K; ++k) sine[k] = rng.uniform() < 0.5;
    return FunctionalSpec::trig_product(std::move(freqs), std::move(sine));
}

}  // namespace rcu
