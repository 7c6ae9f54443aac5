#pragma once

// JSON documents for reservoirs, readouts and run records.
//
// Matrices are row-major nested arrays, vectors flat arrays. Doubles are written with the shortest
// representation that parses back to the same binary64 value, so documents round-trip bit-exactly.

#include "rcu/lp.hpp"
#include "rcu/processes.hpp"
#include "rcu/readouts.hpp"
#include "rcu/reservoirs.hpp"
#include "rcu/training.hpp"

#include <json.hpp>

#include <filesystem>

namespace rcu {

using Json = nlohmann::json;

Json matrix_to_json(const Eigen::MatrixXd& m);
/// Throws ConfigError unless `j` is a rectangular array of number arrays.
Eigen::MatrixXd matrix_from_json(const Json& j);
Json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j);

Json to_json(const Readout& r);
Readout readout_from_json(const Json& j);

Json to_json(const EspReport& r);
EspReport esp_report_from_json(const Json& j);

/// {"format": "rcu-reservoir", "version": 1, "family": ..., system fields, "readout": ..., "esp": ...}.
/// The ESP block is recomputed on write.
Json to_json(const ReservoirModel& m);
/// Throws ConfigError on malformed documents; the model is validated.
ReservoirModel model_from_json(const Json& j);

void save_model(const std::filesystem::path& path, const ReservoirModel& m);
ReservoirModel load_model(const std::filesystem::path& path);

/// {lambda, paths, rmse_train, rmse_holdout, coeff_count, seed} plus row counts and warnings.
Json to_json(const TrainDiagnostics& d);
Json to_json(const LpEstimate& e);
Json to_json(const MomentDiagnostic& d);

}  // namespace rcu
