#include "cqsl/cli/experiments.hpp"

#include <algorithm>
#include <cstdio>

#include "cqsl/cli/bound_spec.hpp"
#include "cqsl/cli/output.hpp"
#include "cqsl/cli/parallel.hpp"
#include "cqsl/error.hpp"
#include "cqsl/random.hpp"

namespace cqsl::cli {

namespace {

constexpr double kValiditySlack = 1e-6;

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t nb = b.dim();
  ComplexMatrix out(a.dim() * nb);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

std::string scenario_id(Experiment e, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "-%04zu", index);
  return std::string(to_string(e)) + buf;
}

std::vector<ResultRow> run_all(const ExperimentConfig& cfg, const std::vector<Scenario>& scenarios) {
  return parallel_map<ResultRow>(scenarios.size(), [&](std::size_t i) {
    return evaluate_scenario(scenarios[i], cfg.bounds, cfg.steps);
  });
}

void require(const ExperimentConfig& cfg, Experiment e) {
  if (cfg.experiment != e) throw Error(Errc::ConfigError, "config is not for " + std::string(to_string(e)));
  cfg.validate();
}

}  // namespace

ResultRow evaluate_scenario(const Scenario& scenario, const std::vector<std::string>& bounds, std::size_t steps) {
  ResultRow row;
  row.scenario_id = scenario.id;
  row.tau = scenario.tau;
  row.values.assign(bounds.size(), std::nullopt);
  row.bound_errors.assign(bounds.size(), "");

  std::optional<Trajectory> traj;
  try {
    traj = propagate(scenario.initial, scenario.protocol, scenario.tau, steps);
  } catch (const Error& e) {
    for (auto& err : row.bound_errors) err = to_string(e.code());
    row.errors.push_back("propagate: " + std::string(to_string(e.code())));
    return row;
  }
  row.metadata["purity_drift"] = format_double(traj->max_purity_drift);
  row.metadata["sqrt_defect"] = format_double(traj->max_sqrt_defect);
  row.relative_purity_T = relative_purity(traj->initial(), traj->final());
  row.affinity_T = affinity(traj->initial(), traj->final()).value;

  for (std::size_t i = 0; i < bounds.size(); ++i) {
    try {
      const BoundReport report = evaluate(parse_bound(bounds[i]), *traj);
      row.values[i] = report.value;
      if (report.value > scenario.tau * (1.0 + kValiditySlack)) {
        row.errors.push_back(bounds[i] + ": ValidityViolation");
      }
    } catch (const Error& e) {
      row.bound_errors[i] = to_string(e.code());
      row.errors.push_back(bounds[i] + ": " + row.bound_errors[i]);
    }
  }
  return row;
}

ResultRow evaluate_fig1a_instance(const std::string& id, const ComplexMatrix& h, const ExperimentConfig& cfg) {
  const DensityMatrix rho0 = DensityMatrix::from_pure(PureState::basis(2, 0));
  ResultRow row = evaluate_scenario({id, rho0, Protocol::constant(h), cfg.tau_grid.front()}, cfg.bounds, cfg.steps);
  row.metadata["ensemble"] = "GUE";
  return row;
}

std::vector<ResultRow> run_fig1a(const ExperimentConfig& cfg) {
  require(cfg, Experiment::Fig1a);
  const std::size_t grid = cfg.tau_grid.size();
  const std::size_t total = static_cast<std::size_t>(cfg.instances) * grid;
  const DensityMatrix rho0 = DensityMatrix::from_pure(PureState::basis(2, 0));
  return parallel_map<ResultRow>(total, [&](std::size_t k) {
    const std::size_t instance = k / grid;
    const ComplexMatrix h = haar_random_hamiltonian(2, split_seed(cfg.seed, instance));
    const Scenario s{scenario_id(cfg.experiment, instance), rho0, Protocol::constant(h), cfg.tau_grid[k % grid]};
    ResultRow row = evaluate_scenario(s, cfg.bounds, cfg.steps);
    row.metadata["ensemble"] = "GUE";
    return row;
  });
}

std::vector<ResultRow> run_rqa_single(const ExperimentConfig& cfg) {
  require(cfg, Experiment::RqaSingle);
  const ComplexMatrix hi = pauli_z();
  const DensityMatrix rho0 = DensityMatrix::from_pure(eigenstate_prep(hi, 0));
  std::vector<Scenario> scenarios;
  for (std::size_t i = 0; i < cfg.tau_grid.size(); ++i) {
    const double tau = cfg.tau_grid[i];
    scenarios.push_back({scenario_id(cfg.experiment, i), rho0,
                         Protocol::rqa(hi, pauli_x() * Complex(-cfg.gamma_over_j), hi * Complex(-1.0), tau), tau});
  }
  return run_all(cfg, scenarios);
}

std::vector<ResultRow> run_rqa_two(const ExperimentConfig& cfg) {
  require(cfg, Experiment::RqaTwo);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix hi = kron(pauli_z(), id) * Complex(2.0) - kron(id, pauli_z());
  const ComplexMatrix hx = kron(pauli_x(), pauli_x()) * Complex(-cfg.gamma_over_j);
  const std::vector<double> w{0.25, 0.75};
  const std::vector<PureState> k{eigenstate_prep(hi, 0), eigenstate_prep(hi, 1)};
  const DensityMatrix rho0 = DensityMatrix::mixture(w, k);
  std::vector<Scenario> scenarios;
  for (std::size_t i = 0; i < cfg.tau_grid.size(); ++i) {
    const double tau = cfg.tau_grid[i];
    scenarios.push_back(
        {scenario_id(cfg.experiment, i), rho0, Protocol::rqa(hi, hx, hi * Complex(-1.0), tau), tau});
  }
  return run_all(cfg, scenarios);
}

std::vector<ResultRow> run_custom(const ExperimentConfig& cfg, const std::vector<Scenario>& scenarios) {
  require(cfg, Experiment::Custom);
  return run_all(cfg, scenarios);
}

double fraction_tilde_below_aa(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows) {
  const auto column = [&](std::string_view name) {
    const auto it = std::find(cfg.bounds.begin(), cfg.bounds.end(), name);
    if (it == cfg.bounds.end()) throw Error(Errc::ConfigError, "bound " + std::string(name) + " not requested");
    return static_cast<std::size_t>(it - cfg.bounds.begin());
  };
  const std::size_t aa = column("T_AA");
  const std::size_t tilde = column("T_S_TILDE_2_2");
  std::size_t both = 0, below = 0;
  for (const auto& r : rows) {
    if (!r.values[aa] || !r.values[tilde]) continue;
    ++both;
    if (*r.values[tilde] <= *r.values[aa]) ++below;
  }
  return both == 0 ? 0.0 : static_cast<double>(below) / static_cast<double>(both);
}

}  // namespace cqsl::cli
