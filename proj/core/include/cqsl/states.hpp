#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>

#include "cqsl/linalg.hpp"

namespace cqsl {

/// Normalized state vector.
class PureState {
 public:
  /// Throws InvalidState unless the squared norm is 1 within 1e-10.
  explicit PureState(ComplexVector amplitudes);
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(ComplexVector amplitudes);
  /// Computational basis state |index>.
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  ComplexMatrix projector() const;

 private:
  ComplexVector amplitudes_;
};

namespace detail {
struct DensityMatrixAccess;
}

/// Hermitian, positive-semidefinite, unit-trace operator. Construction
/// validates eagerly; the square root is computed on first use and shared
/// between copies.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);
  static DensityMatrix from_pure(const PureState& psi);
  /// sum_k weights[k] |states[k]><states[k]|
  static DensityMatrix mixture(std::span<const double> weights, std::span<const PureState> states);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  /// Tr(rho^2)
  double purity() const;
  bool is_pure(double tolerance = 1e-8) const { return purity() > 1.0 - tolerance; }
  const ComplexMatrix& sqrt() const;

 private:
  friend struct detail::DensityMatrixAccess;

  struct SqrtCache {
    std::once_flag once;
    std::optional<ComplexMatrix> value;
  };

  struct Unchecked {};
  DensityMatrix(Unchecked, ComplexMatrix matrix, std::optional<ComplexMatrix> sqrt);

  ComplexMatrix matrix_;
  std::shared_ptr<SqrtCache> sqrt_;
};

/// Returns a description of the first violated DensityMatrix invariant, or
/// nullopt when `m` is a valid density matrix.
std::optional<std::string> density_matrix_violation(const ComplexMatrix& m);

/// Clamped overlap value together with the unclamped number it came from.
struct Overlap {
  double value;
  double raw;
  operator double() const noexcept { return value; }
};

/// |<a|b>|^2
Overlap fidelity_pure(const PureState& a, const PureState& b);

/// Tr(rho sigma) / Tr(rho^2)
double relative_purity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr(sqrt(rho) sqrt(sigma)), clamped to [0, 1].
Overlap affinity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr[(sqrt(rho) - sqrt(sigma))^2] = 2 - 2 affinity
double hellinger_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// arccos(sqrt(F)); F outside [-1e-12, 1 + 1e-12] throws OutOfRange.
double bures_angle(double fidelity);

}  // namespace cqsl
