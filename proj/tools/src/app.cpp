#include "cqsl/cli/app.hpp"

#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "cqsl/cli/experiments.hpp"
#include "cqsl/cli/output.hpp"
#include "cqsl/cli/protocol_file.hpp"
#include "cqsl/error.hpp"

namespace cqsl::cli {

namespace {

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<int> instances;
  std::optional<double> gamma;
  std::optional<std::size_t> steps;
  std::vector<double> tau;
  std::vector<std::string> bounds;
  std::string out;
  std::string format = "csv";
  std::string protocol;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "Base seed for random instances");
  sub->add_option("--steps", f.steps, "Integration steps per trajectory (>= 64)");
  sub->add_option("--tau", f.tau, "Comma-separated evolution times")->delimiter(',');
  sub->add_option("--bounds", f.bounds, "Comma-separated bound names")->delimiter(',');
  sub->add_option("--out", f.out, "Output path (default stdout)");
  sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig build_config(Experiment e, const Flags& f, std::optional<ProtocolFile>& file) {
  ExperimentConfig cfg = ExperimentConfig::defaults(e);
  if (e == Experiment::Custom) {
    file = load_protocol_file(f.protocol);
    cfg.tau_grid = file->tau_grid;
    cfg.bounds = file->bounds;
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.instances) cfg.instances = *f.instances;
  if (f.gamma) cfg.gamma_over_j = *f.gamma;
  if (f.steps) cfg.steps = *f.steps;
  if (!f.tau.empty()) cfg.tau_grid = f.tau;
  if (!f.bounds.empty()) cfg.bounds = f.bounds;
  cfg.output_path = f.out;
  cfg.format = f.format == "json" ? Format::Json : Format::Csv;
  cfg.validate();
  return cfg;
}

std::vector<ResultRow> run(const ExperimentConfig& cfg, const std::optional<ProtocolFile>& file) {
  switch (cfg.experiment) {
    case Experiment::Fig1a: return run_fig1a(cfg);
    case Experiment::RqaSingle: return run_rqa_single(cfg);
    case Experiment::RqaTwo: return run_rqa_two(cfg);
    case Experiment::Custom: return run_custom(cfg, file->scenarios(cfg.tau_grid));
  }
  return {};
}

void emit(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ResultRow>& rows) {
  if (cfg.format == Format::Json) {
    write_json(out, cfg, rows);
  } else {
    write_csv(out, cfg, rows);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent quantum speed limit experiments"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* fig1a = app.add_subcommand("fig1a", "Random static qubit Hamiltonians, T_AA vs T_S_TILDE_2_2");
  add_common(fig1a, flags);
  fig1a->add_option("--instances", flags.instances, "Number of random Hamiltonians");

  CLI::App* single = app.add_subcommand("rqa-single", "Single-qubit reverse annealing sweep over tau");
  add_common(single, flags);
  single->add_option("--gamma", flags.gamma, "Transverse field in units of J");

  CLI::App* two = app.add_subcommand("rqa-two", "Two-qubit reverse annealing from a mixed state");
  add_common(two, flags);
  two->add_option("--gamma", flags.gamma, "Transverse field in units of J");

  CLI::App* custom = app.add_subcommand("custom", "Evaluate bounds for a protocol file");
  add_common(custom, flags);
  custom->add_option("protocol", flags.protocol, "Protocol description (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Experiment experiment = Experiment::Custom;
  if (fig1a->parsed()) experiment = Experiment::Fig1a;
  if (single->parsed()) experiment = Experiment::RqaSingle;
  if (two->parsed()) experiment = Experiment::RqaTwo;

  ExperimentConfig cfg;
  std::optional<ProtocolFile> file;
  try {
    cfg = build_config(experiment, flags, file);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const std::vector<ResultRow> rows = run(cfg, file);
    if (cfg.output_path.empty()) {
      emit(out, cfg, rows);
    } else {
      std::ofstream file_out(cfg.output_path, std::ios::binary);
      if (!file_out) throw std::runtime_error("cannot write " + cfg.output_path);
      emit(file_out, cfg, rows);
      if (!file_out.flush()) throw std::runtime_error("write failed for " + cfg.output_path);
    }
    if (experiment == Experiment::Fig1a) {
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.errors.empty() ? 0 : 1;
      err << "fig1a: " << rows.size() << " rows, " << failed << " with errors";
      try {
        err << ", fraction T_S_TILDE_2_2 <= T_AA: " << format_double(fraction_tilde_below_aa(cfg, rows));
      } catch (const Error&) {
      }
      err << '\n';
    }
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace cqsl::cli
