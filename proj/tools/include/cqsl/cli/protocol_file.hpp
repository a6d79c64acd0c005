#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cqsl/cli/experiments.hpp"

namespace cqsl::cli {

/// Parsed custom-protocol description.
struct ProtocolFile {
  std::size_t dim = 0;
  bool is_static = true;
  ComplexMatrix h{1};    // static
  ComplexMatrix h_i{1};  // rqa
  ComplexMatrix h_x{1};
  ComplexMatrix h_p{1};
  DensityMatrix initial{ComplexMatrix::identity(1)};
  std::vector<double> tau_grid;
  std::vector<std::string> bounds;

  /// One scenario per grid point.
  std::vector<Scenario> scenarios(const std::vector<double>& grid) const;
};

/// JSON document:
///   dim       integer >= 1
///   kind      "static" | "rqa"
///   H | H_i, H_x, H_p   dim*dim row-major [re, im] pairs
///   initial   {"pure": [[re, im], ...]} or {"mixed": [[weight, index], ...]}
///             where index picks an eigenstate of H (static) or H_i (rqa)
///   tau_grid  list of positive numbers
///   bounds    list of bound tokens
/// Throws ParseError naming the line and field.
ProtocolFile parse_protocol(std::string_view text);
ProtocolFile load_protocol_file(const std::filesystem::path& path);

}  // namespace cqsl::cli
