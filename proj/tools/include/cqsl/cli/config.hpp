#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cqsl::cli {

enum class Experiment { Fig1a, RqaSingle, RqaTwo, Custom };
enum class Format { Csv, Json };

std::string_view to_string(Experiment e) noexcept;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct ExperimentConfig {
  Experiment experiment = Experiment::Custom;
  std::uint64_t seed = kDefaultSeed;
  int instances = 500;
  double gamma_over_j = 0.5;
  std::vector<double> tau_grid;
  std::size_t steps = 4096;
  std::vector<std::string> bounds;
  /// Empty writes to stdout.
  std::string output_path;
  Format format = Format::Csv;

  /// Defaults for each experiment: Fig1a 500 instances at tau = 1, RQA grids
  /// {1, 2, 3, 5, 8, 12, 20, 30, 50} with Gamma = J/2 (single) or J (two).
  static ExperimentConfig defaults(Experiment e);

  /// Throws ConfigError on an empty or non-increasing grid, instances < 1,
  /// steps < 64, a bad gamma or an unknown bound token.
  void validate() const;
};

}  // namespace cqsl::cli
