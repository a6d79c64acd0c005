#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cqsl/cli/config.hpp"
#include "cqsl/cli/experiments.hpp"

namespace cqsl::cli {

/// %.17g
std::string format_double(double x);

/// scenario_id, tau, bound columns, <bound>_over_tau columns,
/// relative_purity_T, affinity_T, error. Failed cells read ERR:<code>.
void write_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ResultRow>& rows);

/// {"meta": {...}, "rows": [...]} with the same numbers as the CSV.
void write_json(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ResultRow>& rows);

}  // namespace cqsl::cli
