#pragma once

// Property suites checked by `rcu verify` and by the acceptance binary.
//
// Each suite draws its fixtures from fixed seeds, so a run is reproducible. Oracles are computed
// independently of the code under test where one exists (dense matrix products, direct
// trigonometric products, closed-form norms).

#include "rcu/serialize.hpp"

#include <string>
#include <vector>

namespace rcu {

struct PropertyResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    /// "<", "<=", ">", ">=" or "==".
    std::string relation;
    double threshold = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<PropertyResult> results;
    double seconds = 0.0;
    bool passed() const;
};

/// lemma1, lemma2, esp, direct_sum, block_esn, stationarity, shift_register, nilpotent_sas,
/// lognormal, universality.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
SuiteReport run_suite(const std::string& name);

Json to_json(const PropertyResult& r);
Json to_json(const SuiteReport& r);

}  // namespace rcu
