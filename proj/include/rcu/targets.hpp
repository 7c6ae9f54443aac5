#pragma once

// Catalog of target functionals and their truncation error bounds.

#include "rcu/functional.hpp"
#include "rcu/processes.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rcu {

struct TargetCatalogEntry {
    FunctionalSpec spec;
    /// Which samplers make H(Z) p-integrable.
    std::string integrability_note;
    /// Only bounded-support samplers are admissible (peak_hold).
    bool requires_bounded_support = false;
};

/// The fixed catalog: one representative of every functional kind except custom.
std::vector<TargetCatalogEntry> catalog();

/// Catalog entry wrapping an arbitrary spec (integrability note and whitelist filled in by kind).
TargetCatalogEntry catalog_entry(const FunctionalSpec& spec);

/// True if the sampler makes the target admissible for L^p experiments.
bool sampler_admissible(const TargetCatalogEntry& entry, const ProcessSampler& sampler);

/// Throws DomainError naming the violated whitelist when the sampler is not admissible.
void require_admissible(const FunctionalSpec& spec, const ProcessSampler& sampler);

/// Bound on |H(z) - H(window of length T)|.
///
///   finite_poly, trig_product, constant   0 once T >= K+1
///   geometric_ma   |lambda|^T / (1 - |lambda|) B, with B the per-step input bound: sup |z| for a
///                  bounded sampler, ||z||_2 for an unbounded one (an L^2 bound), 1 without a sampler
///   garch_vol      alpha beta^{T-1} E[z^2] / (1 - beta), a bound in L^1 (the tail is nonnegative);
///                  E[z^2] is the sampler's second moment, or omega/(1-alpha-beta) without one
///   peak_hold, custom   none
std::optional<double> truncation_bound(const FunctionalSpec& spec, std::size_t T,
                                       const ProcessSampler* sampler = nullptr);

/// Random polynomial in the stacked window z_0..z_{-K} (n(K+1) variables) of total degree d with
/// N(0,1) coefficients.
FunctionalSpec random_finite_poly(std::size_t n, std::size_t K, std::size_t degree, std::uint64_t seed);

/// Random trig product with frequencies N(0, scale^2) and a random sine set.
FunctionalSpec random_trig_product(std::size_t n, std::size_t K, double scale, std::uint64_t seed);

}  // namespace rcu
