#include "cqsl/states.hpp"

#include <algorithm>
#include <cmath>

#include "cqsl/error.hpp"

namespace cqsl {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-10;
constexpr double kPurityTolerance = 1e-9;

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(Errc::DimMismatch, "state dims " + std::to_string(a) + " and " + std::to_string(b));
  }
}

double squared_norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const Complex& x : v) acc += std::norm(x);
  return acc;
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw Error(Errc::InvalidState, "empty state vector");
  const double n2 = squared_norm(amplitudes_);
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    throw Error(Errc::InvalidState, "squared norm " + std::to_string(n2) + " != 1");
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::InvalidState, "cannot normalize zero vector");
  for (Complex& x : amplitudes) x /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(Errc::IndexOutOfRange, "basis index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

ComplexMatrix PureState::projector() const { return ComplexMatrix::outer(amplitudes_, amplitudes_); }

std::optional<std::string> density_matrix_violation(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermitianTolerance)) return "not Hermitian (defect " + std::to_string(defect) + ")";
  const Complex tr = m.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTolerance)) return "trace " + std::to_string(tr.real()) + " != 1";
  const Spectrum spec = hermitian_eig(m);
  if (spec.eigenvalues.front() < kPsdClip) {
    return "negative eigenvalue " + std::to_string(spec.eigenvalues.front());
  }
  double purity = 0.0;
  for (double x : spec.eigenvalues) purity += x * x;
  const double lo = 1.0 / static_cast<double>(m.dim()) - kPurityTolerance;
  if (purity < lo || purity > 1.0 + kPurityTolerance) {
    return "purity " + std::to_string(purity) + " out of range";
  }
  return std::nullopt;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : matrix_(std::move(matrix)), sqrt_(std::make_shared<SqrtCache>()) {
  if (auto why = density_matrix_violation(matrix_)) throw Error(Errc::InvalidState, *why);
}

DensityMatrix::DensityMatrix(Unchecked, ComplexMatrix matrix, std::optional<ComplexMatrix> sqrt)
    : matrix_(std::move(matrix)), sqrt_(std::make_shared<SqrtCache>()) {
  if (sqrt) {
    std::call_once(sqrt_->once, [&] { sqrt_->value = std::move(sqrt); });
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::mixture(std::span<const double> weights,
                                     std::span<const PureState> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(Errc::DimMismatch, "mixture needs one weight per state");
  }
  ComplexMatrix m(states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (weights[k] < 0.0) throw Error(Errc::InvalidState, "negative mixture weight");
    m += states[k].projector() * Complex(weights[k]);
  }
  return DensityMatrix(std::move(m));
}

double DensityMatrix::purity() const { return trace_product(matrix_, matrix_).real(); }

const ComplexMatrix& DensityMatrix::sqrt() const {
  std::call_once(sqrt_->once, [this] { sqrt_->value = matrix_sqrt_psd(matrix_); });
  return *sqrt_->value;
}

Overlap fidelity_pure(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim());
  const double raw = std::norm(inner(a.amplitudes(), b.amplitudes()));
  return {std::clamp(raw, 0.0, 1.0), raw};
}

double relative_purity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim());
  return trace_product(rho.matrix(), sigma.matrix()).real() / rho.purity();
}

Overlap affinity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim());
  const double raw = trace_product(rho.sqrt(), sigma.sqrt()).real();
  return {std::clamp(raw, 0.0, 1.0), raw};
}

double hellinger_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 2.0 - 2.0 * affinity(rho, sigma).value;
}

double bures_angle(double fidelity) {
  if (!(fidelity >= -1e-12 && fidelity <= 1.0 + 1e-12)) {
    throw Error(Errc::OutOfRange, "fidelity " + std::to_string(fidelity) + " outside [0, 1]");
  }
  return std::acos(std::sqrt(std::clamp(fidelity, 0.0, 1.0)));
}

}  // namespace cqsl
