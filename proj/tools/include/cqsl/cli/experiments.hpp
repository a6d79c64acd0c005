#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqsl/cli/config.hpp"
#include "cqsl/dynamics.hpp"

namespace cqsl::cli {

struct ResultRow {
  std::string scenario_id;
  double tau = 0.0;
  /// One entry per requested bound, in config order; nullopt when that
  /// bound failed and `bound_errors` holds the error code.
  std::vector<std::optional<double>> values;
  std::vector<std::string> bound_errors;
  std::optional<double> relative_purity_T;
  std::optional<double> affinity_T;
  /// Scenario-level and validity problems, "; "-joined in the error column.
  std::vector<std::string> errors;
  std::map<std::string, std::string> metadata;
};

/// Initial state, protocol and horizon for one row.
struct Scenario {
  std::string id;
  DensityMatrix initial;
  Protocol protocol;
  double tau;
};

std::vector<ResultRow> run_fig1a(const ExperimentConfig& cfg);
std::vector<ResultRow> run_rqa_single(const ExperimentConfig& cfg);
std::vector<ResultRow> run_rqa_two(const ExperimentConfig& cfg);
/// Bounds and grid come from cfg; the protocol file's own values are merged
/// in by the caller (see load_protocol_file).
std::vector<ResultRow> run_custom(const ExperimentConfig& cfg, const std::vector<Scenario>& scenarios);

/// Propagates one scenario and evaluates every requested bound on it. Domain
/// errors are recorded in the row instead of thrown.
ResultRow evaluate_scenario(const Scenario& scenario, const std::vector<std::string>& bounds, std::size_t steps);

/// fig1a row for a given Hamiltonian with |psi_0> = |0>.
ResultRow evaluate_fig1a_instance(const std::string& id, const ComplexMatrix& h, const ExperimentConfig& cfg);

/// Fraction of rows whose T_S_TILDE_2_2 is at most T_AA, over rows that
/// carry both values.
double fraction_tilde_below_aa(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows);

}  // namespace cqsl::cli
