#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cqsl/cli/app.hpp"
#include "cqsl/cli/bound_spec.hpp"
#include "cqsl/cli/experiments.hpp"
#include "cqsl/cli/output.hpp"
#include "cqsl/cli/parallel.hpp"
#include "cqsl/cli/protocol_file.hpp"
#include "cqsl/error.hpp"
#include "json.hpp"

using namespace cqsl;
using namespace cqsl::cli;

namespace {

void expect_code(Errc code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

const char* kPrecession = R"({
  "dim": 2,
  "kind": "static",
  "H": [[1, 0], [0, 0], [0, 0], [-1, 0]],
  "initial": {"pure": [[1, 0], [1, 0]]},
  "tau_grid": [1.5707963267948966],
  "bounds": ["T_AA", "T_S_TILDE_2_2"]
})";

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("cqsl_test_" + name);
  std::ofstream(path) << text;
  return path;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cqsl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(BoundSpec, ParsesTokens) {
  EXPECT_EQ(parse_bound("T_AA").kind, BoundKind::AnandanAharonov);
  const BoundSpec s = parse_bound("T_S_1_inf");
  EXPECT_EQ(s.kind, BoundKind::SchattenFamily);
  EXPECT_EQ(s.p, 1.0);
  EXPECT_TRUE(std::isinf(s.q));
  const BoundSpec h = parse_bound("T_H_3_1.5");
  EXPECT_EQ(h.kind, BoundKind::HellingerFamily);
  EXPECT_EQ(h.p, 3.0);
  EXPECT_EQ(parse_bound("T_S_TILDE_1_inf").pure_case, PureCase::P1Inf);
  EXPECT_EQ(parse_bound("T_S_PURE_2_2").kind, BoundKind::SchattenPure);
  EXPECT_EQ(parse_bound("T_H_22").kind, BoundKind::Hellinger22);
  EXPECT_EQ(parse_bound("T_MTML").kind, BoundKind::MandelstamTammMargolusLevitin);
}

TEST(BoundSpec, RejectsBadTokens) {
  for (const char* bad : {"T_XX", "T_S_2_3", "T_S_PURE_3_1.5", "T_S_0.5_inf", "T_S_2", "T_H_a_b", ""}) {
    expect_code(Errc::ConfigError, [&] { parse_bound(bad); });
  }
}

TEST(ExperimentConfig, Defaults) {
  const auto fig = ExperimentConfig::defaults(Experiment::Fig1a);
  EXPECT_EQ(fig.instances, 500);
  EXPECT_EQ(fig.tau_grid, std::vector<double>{1.0});
  EXPECT_EQ(fig.steps, 4096u);
  const auto single = ExperimentConfig::defaults(Experiment::RqaSingle);
  EXPECT_EQ(single.gamma_over_j, 0.5);
  EXPECT_EQ(single.tau_grid, (std::vector<double>{1, 2, 3, 5, 8, 12, 20, 30, 50}));
  EXPECT_EQ(ExperimentConfig::defaults(Experiment::RqaTwo).gamma_over_j, 1.0);
}

TEST(ExperimentConfig, Validation) {
  const auto base = ExperimentConfig::defaults(Experiment::RqaSingle);
  const auto with = [&](auto mutate) {
    ExperimentConfig c = base;
    mutate(c);
    return [c] { c.validate(); };
  };
  EXPECT_NO_THROW(base.validate());
  expect_code(Errc::ConfigError, with([](auto& c) { c.tau_grid.clear(); }));
  expect_code(Errc::ConfigError, with([](auto& c) { c.tau_grid = {1.0, 1.0}; }));
  expect_code(Errc::ConfigError, with([](auto& c) { c.tau_grid = {-1.0}; }));
  expect_code(Errc::ConfigError, with([](auto& c) { c.steps = 32; }));
  expect_code(Errc::ConfigError, with([](auto& c) { c.instances = 0; }));
  expect_code(Errc::ConfigError, with([](auto& c) { c.bounds = {"T_NOPE"}; }));
}

TEST(ProtocolFile, ParsesStaticPrecession) {
  const ProtocolFile pf = parse_protocol(kPrecession);
  EXPECT_EQ(pf.dim, 2u);
  EXPECT_TRUE(pf.is_static);
  EXPECT_NEAR(pf.initial.purity(), 1.0, 1e-15);
  EXPECT_EQ(pf.bounds, (std::vector<std::string>{"T_AA", "T_S_TILDE_2_2"}));
  ASSERT_EQ(pf.tau_grid.size(), 1u);
}

TEST(ProtocolFile, ParsesRqaWithMixedInitialState) {
  const ProtocolFile pf = parse_protocol(R"({
    "dim": 2, "kind": "rqa",
    "H_i": [[1,0],[0,0],[0,0],[-1,0]],
    "H_x": [[0,0],[-0.5,0],[-0.5,0],[0,0]],
    "H_p": [[-1,0],[0,0],[0,0],[1,0]],
    "initial": {"mixed": [[0.25, 0], [0.75, 1]]},
    "tau_grid": [1, 2]
  })");
  EXPECT_FALSE(pf.is_static);
  EXPECT_NEAR(pf.initial.purity(), 0.625, 1e-15);
  // Index 0 is the ground state |1> of Z.
  EXPECT_NEAR(pf.initial.matrix()(1, 1).real(), 0.25, 1e-15);
  EXPECT_EQ(pf.scenarios(pf.tau_grid).size(), 2u);
}

TEST(ProtocolFile, DiagnosticsNameLineAndField) {
  try {
    parse_protocol("{\n  \"dim\": 2,\n  \"kind\": \"static\",\n  \"H\": [[1, 0], [0, 0], [0, 0]]\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("'H'"), std::string::npos) << e.what();
  }
  try {
    parse_protocol("{\n  \"dim\": 2,\n  \"kind\": static\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  expect_code(Errc::ParseError, [] { parse_protocol(R"({"dim": 2, "kind": "other"})"); });
  expect_code(Errc::ParseError, [] {
    parse_protocol(R"({"dim": 2, "kind": "static", "H": [[0,0],[1,0],[0,0],[0,0]], "initial": {"pure": [[1,0],[0,0]]}})");
  });
  expect_code(Errc::ParseError, [] {
    parse_protocol(R"({"dim": 2, "kind": "static", "H": [[1,0],[0,0],[0,0],[-1,0]], "initial": {"mixed": [[1, 5]]}})");
  });
}

TEST(RunCustom, PrecessionRowMatchesClosedForms) {
  const ProtocolFile pf = parse_protocol(kPrecession);
  ExperimentConfig cfg = ExperimentConfig::defaults(Experiment::Custom);
  cfg.tau_grid = pf.tau_grid;
  cfg.bounds = pf.bounds;
  const auto rows = run_custom(cfg, pf.scenarios(cfg.tau_grid));
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_TRUE(rows[0].values[0] && rows[0].values[1]);
  EXPECT_NEAR(*rows[0].values[0], std::numbers::pi / 2, 1e-6);
  EXPECT_NEAR(*rows[0].values[1], 1.0, 1e-6);
  EXPECT_TRUE(rows[0].errors.empty());
}

TEST(RunCustom, ErrorsAreIsolatedPerBound) {
  ExperimentConfig cfg = ExperimentConfig::defaults(Experiment::Custom);
  cfg.tau_grid = {0.5};
  cfg.bounds = {"T_AA", "T_RP", "T_WY"};
  const DensityMatrix rho(ComplexMatrix(2, {0.3, 0.2, 0.2, 0.7}));
  const std::vector<Scenario> s{{"mixed", rho, Protocol::constant(ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0})), 0.5}};
  const auto rows = run_custom(cfg, s);
  EXPECT_FALSE(rows[0].values[0]);
  EXPECT_EQ(rows[0].bound_errors[0], "NotPure");
  EXPECT_TRUE(rows[0].values[1]);
  EXPECT_TRUE(rows[0].values[2]);

  std::ostringstream csv;
  write_csv(csv, cfg, rows);
  EXPECT_NE(csv.str().find("ERR:NotPure"), std::string::npos);
  EXPECT_NE(csv.str().find("T_AA: NotPure"), std::string::npos);
}

TEST(RunFig1a, SingleInstanceIsValid) {
  ExperimentConfig cfg = ExperimentConfig::defaults(Experiment::Fig1a);
  cfg.instances = 1;
  const auto rows = run_fig1a(cfg);
  ASSERT_EQ(rows.size(), 1u);
  for (const auto& v : rows[0].values) {
    ASSERT_TRUE(v);
    EXPECT_LE(*v, 1.0 + 1e-6);
  }
  EXPECT_EQ(fraction_tilde_below_aa(cfg, rows), 1.0);
}

TEST(RunFig1a, CommutingHamiltonianIsFlagged) {
  const ExperimentConfig cfg = ExperimentConfig::defaults(Experiment::Fig1a);
  const ResultRow row =
      evaluate_fig1a_instance("diag", ComplexMatrix::diagonal(std::vector<double>{0.3, -1.2}), cfg);
  for (std::size_t i = 0; i < row.values.size(); ++i) {
    EXPECT_FALSE(row.values[i]);
    EXPECT_EQ(row.bound_errors[i], "DegenerateDenominator");
  }
}

TEST(RunRqa, SmallestTauIsValid) {
  ExperimentConfig single = ExperimentConfig::defaults(Experiment::RqaSingle);
  single.tau_grid = {1.0};
  single.steps = 512;
  for (const auto& v : run_rqa_single(single)[0].values) EXPECT_LE(v.value(), 1.0 + 1e-6);

  ExperimentConfig two = ExperimentConfig::defaults(Experiment::RqaTwo);
  two.tau_grid = {1.0};
  two.steps = 512;
  for (const auto& v : run_rqa_two(two)[0].values) EXPECT_LE(v.value(), 1.0 + 1e-6);
}

TEST(Output, CsvSchemaAndJsonAgree) {
  ExperimentConfig cfg = ExperimentConfig::defaults(Experiment::RqaTwo);
  cfg.tau_grid = {1.0, 2.0};
  cfg.steps = 256;
  const auto rows = run_rqa_two(cfg);
  std::ostringstream csv, js;
  write_csv(csv, cfg, rows);
  write_json(js, cfg, rows);

  const auto table = split_csv(csv.str());
  ASSERT_EQ(table.size(), 3u);
  const std::vector<std::string> header{"scenario_id",     "tau",          "T_S_2_2",           "T_RP",
                                        "T_H_2_2",         "T_WY",         "T_S_2_2_over_tau",  "T_RP_over_tau",
                                        "T_H_2_2_over_tau", "T_WY_over_tau", "relative_purity_T", "affinity_T",
                                        "error"};
  EXPECT_EQ(table[0], header);

  const auto doc = nlohmann::json::parse(js.str());
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["meta"]["steps"], 256);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t b = 0; b < cfg.bounds.size(); ++b) {
      const double from_csv = std::stod(table[r + 1][2 + b]);
      const double from_json = doc["rows"][r]["bounds"][cfg.bounds[b]].get<double>();
      EXPECT_LE(std::abs(from_csv - from_json), std::abs(from_json) * 2.3e-16) << cfg.bounds[b];
      EXPECT_EQ(from_csv, *rows[r].values[b]);
    }
  }
}

TEST(Parallel, PreservesOrderAndPropagatesErrors) {
  const auto squares = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(squares[static_cast<std::size_t>(i)], i * i);
  EXPECT_THROW(parallel_map<int>(10, [](std::size_t i) -> int {
                 if (i == 7) throw std::runtime_error("boom");
                 return 0;
               }),
               std::runtime_error);
}

TEST(RunCli, DeterministicCsv) {
  const auto a = invoke({"fig1a", "--instances", "20", "--seed", "5"});
  const auto b = invoke({"fig1a", "--instances", "20", "--seed", "5"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.err.find("fraction T_S_TILDE_2_2 <= T_AA"), std::string::npos);
  const auto c = invoke({"fig1a", "--instances", "20", "--seed", "6"});
  EXPECT_NE(a.out, c.out);
}

TEST(RunCli, CustomCommandWritesFile) {
  const auto protocol = temp_file("precession.json", kPrecession);
  const auto out = std::filesystem::temp_directory_path() / "cqsl_test_out.json";
  const auto r = invoke({"custom", protocol.string(), "--format", "json", "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_NEAR(doc["rows"][0]["bounds"]["T_AA"].get<double>(), std::numbers::pi / 2, 1e-6);
}

TEST(RunCli, ExitCodes) {
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(invoke({}).code, kExitConfig);
  EXPECT_EQ(invoke({"fig1a", "--bogus"}).code, kExitConfig);
  EXPECT_EQ(invoke({"fig1a", "--format", "xml"}).code, kExitConfig);
  EXPECT_EQ(invoke({"rqa-single", "--steps", "8"}).code, kExitConfig);
  EXPECT_EQ(invoke({"rqa-single", "--tau", "3,2"}).code, kExitConfig);
  EXPECT_EQ(invoke({"rqa-two", "--bounds", "T_Q"}).code, kExitConfig);
  EXPECT_EQ(invoke({"custom", "/nonexistent/protocol.json"}).code, kExitConfig);

  const auto no_grid = temp_file("nogrid.json", R"({"dim": 2, "kind": "static",
    "H": [[1,0],[0,0],[0,0],[-1,0]], "initial": {"pure": [[1,0],[1,0]]}, "bounds": ["T_AA"]})");
  const auto r = invoke({"custom", no_grid.string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("tau grid is empty"), std::string::npos);

  const auto protocol = temp_file("precession2.json", kPrecession);
  EXPECT_EQ(invoke({"custom", protocol.string(), "--out", "/nonexistent/dir/out.csv"}).code, kExitRuntime);
}
