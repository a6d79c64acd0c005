#include "cqsl/cli/config.hpp"

#include <cmath>

#include "cqsl/cli/bound_spec.hpp"
#include "cqsl/error.hpp"

namespace cqsl::cli {

namespace {

const std::vector<double> kRqaGrid{1, 2, 3, 5, 8, 12, 20, 30, 50};

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::Fig1a: return "fig1a";
    case Experiment::RqaSingle: return "rqa-single";
    case Experiment::RqaTwo: return "rqa-two";
    case Experiment::Custom: return "custom";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  switch (e) {
    case Experiment::Fig1a:
      cfg.tau_grid = {1.0};
      cfg.bounds = {"T_AA", "T_S_TILDE_2_2"};
      break;
    case Experiment::RqaSingle:
      cfg.gamma_over_j = 0.5;
      cfg.tau_grid = kRqaGrid;
      cfg.bounds = {"T_S_PURE_2_2", "T_RP_PURE"};
      break;
    case Experiment::RqaTwo:
      cfg.gamma_over_j = 1.0;
      cfg.tau_grid = kRqaGrid;
      cfg.bounds = {"T_S_2_2", "T_RP", "T_H_2_2", "T_WY"};
      break;
    case Experiment::Custom:
      break;
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (tau_grid.empty()) throw Error(Errc::ConfigError, "tau grid is empty");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0) || !std::isfinite(tau_grid[i])) {
      throw Error(Errc::ConfigError, "tau values must be positive and finite");
    }
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) {
      throw Error(Errc::ConfigError, "tau grid must be strictly increasing");
    }
  }
  if (instances < 1) throw Error(Errc::ConfigError, "instances must be >= 1");
  if (steps < 64) throw Error(Errc::ConfigError, "steps must be >= 64");
  if (!(gamma_over_j >= 0.0) || !std::isfinite(gamma_over_j)) {
    throw Error(Errc::ConfigError, "gamma must be a non-negative number");
  }
  if (bounds.empty()) throw Error(Errc::ConfigError, "no bounds requested");
  for (const auto& b : bounds) parse_bound(b);
}

}  // namespace cqsl::cli
