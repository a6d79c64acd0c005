#include "cqsl/cli/output.hpp"

#include <cstdio>

#include "json.hpp"

namespace cqsl::cli {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// Error text may hold commas; quote per RFC 4180 when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ResultRow>& rows) {
  out << "scenario_id,tau";
  for (const auto& b : cfg.bounds) out << ',' << b;
  for (const auto& b : cfg.bounds) out << ',' << b << "_over_tau";
  out << ",relative_purity_T,affinity_T,error\n";
  for (const auto& r : rows) {
    out << csv_field(r.scenario_id) << ',' << format_double(r.tau);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      out << ',' << (r.values[i] ? format_double(*r.values[i]) : "ERR:" + r.bound_errors[i]);
    }
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      out << ',' << (r.values[i] ? format_double(*r.values[i] / r.tau) : "ERR:" + r.bound_errors[i]);
    }
    out << ',' << optional_cell(r.relative_purity_T) << ',' << optional_cell(r.affinity_T) << ','
        << csv_field(join(r.errors, "; ")) << '\n';
  }
}

void write_json(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ResultRow>& rows) {
  nlohmann::json meta{
      {"experiment", std::string(to_string(cfg.experiment))},
      {"seed", cfg.seed},
      {"steps", cfg.steps},
      {"tau_grid", cfg.tau_grid},
      {"bounds", cfg.bounds},
      {"integrator", "commutator-free Magnus, order 4"},
      {"energy_unit", "J = 1"},
  };
  if (cfg.experiment == Experiment::Fig1a) {
    meta["instances"] = cfg.instances;
    meta["ensemble"] = "GUE";
  }
  if (cfg.experiment == Experiment::RqaSingle || cfg.experiment == Experiment::RqaTwo) {
    meta["gamma_over_j"] = cfg.gamma_over_j;
  }

  nlohmann::json jrows = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json values = nlohmann::json::object();
    nlohmann::json ratios = nlohmann::json::object();
    nlohmann::json errors = nlohmann::json::object();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const std::string& name = cfg.bounds[i];
      values[name] = optional_json(r.values[i]);
      ratios[name + "_over_tau"] = r.values[i] ? nlohmann::json(*r.values[i] / r.tau) : nlohmann::json(nullptr);
      if (!r.values[i]) errors[name] = r.bound_errors[i];
    }
    jrows.push_back({
        {"scenario_id", r.scenario_id},
        {"tau", r.tau},
        {"bounds", values},
        {"ratios", ratios},
        {"bound_errors", errors},
        {"relative_purity_T", optional_json(r.relative_purity_T)},
        {"affinity_T", optional_json(r.affinity_T)},
        {"error", join(r.errors, "; ")},
        {"metadata", r.metadata},
    });
  }
  out << nlohmann::json{{"meta", meta}, {"rows", jrows}}.dump(2) << '\n';
}

}  // namespace cqsl::cli
