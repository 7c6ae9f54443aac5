#pragma once

// Experiment configs and capacity sweeps behind `rcu run`.
//
// A config names an input sampler, a target, a reservoir family and a capacity grid. Each grid
// point (and each reservoir seed) is built or trained, certified, and evaluated on fresh paths;
// one CSV row and one JSON artifact are written per point. The schema is documented in
// docs/config.md.

#include "rcu/functional.hpp"
#include "rcu/processes.hpp"
#include "rcu/serialize.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rcu {

inline constexpr int kSchemaVersion = 1;

/// Parameters of the reservoir families; which ones apply depends on the family.
struct ReservoirParams {
    std::size_t N = 50;
    std::size_t degree = 2;
    std::size_t hidden = 64;
    double sigma_max = 0.9;
    double input_scale = 0.3;
    double bias_scale = 0.1;
    Activation activation = Activation::tanh;
    std::size_t terms = 2;
    double contraction = 0.9;
    double frequency_scale = 1.0;
    double feature_scale = 1.0;
    /// Lags of the inner network of constructed_block_esn (defaults to the target memory).
    std::optional<std::size_t> K;
    std::size_t identity_hidden = 32;
    double identity_m = 3.0;
    /// Runs exp_moment_check at this alpha before polynomial fits.
    std::optional<double> moment_alpha;
};

struct ExperimentConfig {
    std::string family;
    std::optional<ProcessSampler> sampler;
    std::optional<FunctionalSpec> target;
    Json target_json;
    std::string capacity_param;
    std::vector<std::size_t> capacity_values;
    ReservoirParams reservoir;
    double p = 2.0;
    std::size_t T = 0;
    std::size_t washout = 0;
    std::size_t M_train = 0;
    std::size_t M_eval = 0;
    double ridge = 1e-8;
    std::vector<std::uint64_t> reservoir_seeds;
    std::optional<std::uint64_t> train_seed;
    std::uint64_t eval_seed = 0;
};

/// Families accepted in the "family" field.
const std::vector<std::string>& experiment_families();

/// Throws ConfigError for unknown keys, missing or ill-typed fields, invalid sampler parameters,
/// inadmissible sampler/target pairs and seed collisions.
ExperimentConfig parse_experiment_config(const Json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// {"kind": ..., "n": ..., kind-specific parameters}. Throws ConfigError.
ProcessSampler sampler_from_json(const Json& j);
/// {"name": ..., parameters}; n is the input channel count. Throws ConfigError.
FunctionalSpec target_from_json(const Json& j, std::size_t n);

struct ResultRow {
    std::string family;
    std::size_t N = 0;
    std::string target;
    double p = 2.0;
    double value = 0.0;
    double stderr_value = 0.0;
    std::size_t M = 0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> train_seed;
    std::optional<std::uint64_t> reservoir_seed;
    std::string capacity_param;
    std::size_t capacity = 0;
    double target_norm = 0.0;
    std::string esp_method;
    double esp_bound = 0.0;
};

std::string results_csv_header();
std::string to_csv(const ResultRow& r);

/// Runs every grid point, writing <out>/results.csv and <out>/runs/run_<i>.json. Throws EspError
/// when a system cannot be certified and NumericOverflow on non-finite estimates; rows finished
/// before the failure stay on disk.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace rcu
