#pragma once

#include <optional>

#include "cqsl/states.hpp"

namespace cqsl::detail {

/// Back door for the propagator: builds states without eager validation.
struct DensityMatrixAccess {
  static DensityMatrix unchecked(ComplexMatrix matrix, std::optional<ComplexMatrix> sqrt) {
    return DensityMatrix(DensityMatrix::Unchecked{}, std::move(matrix), std::move(sqrt));
  }
};

}  // namespace cqsl::detail
