#pragma once

#include <cstdint>
#include <vector>

#include "cqsl/linalg.hpp"
#include "cqsl/states.hpp"

namespace cqsl {

/// Orthonormal reference basis, stored as the columns of a unitary.
class ReferenceBasis {
 public:
  /// Throws InvalidState unless the Gram matrix is the identity within 1e-10.
  explicit ReferenceBasis(ComplexMatrix columns);
  explicit ReferenceBasis(const Spectrum& spectrum) : ReferenceBasis(spectrum.eigenvectors) {}

  static ReferenceBasis computational(std::size_t dim);
  /// Deterministic eigenbasis of a Hermitian operator.
  static ReferenceBasis eigenbasis(const ComplexMatrix& h) { return ReferenceBasis(hermitian_eig(h)); }

  std::size_t dim() const noexcept { return vectors_.dim(); }
  const ComplexMatrix& vectors() const noexcept { return vectors_; }
  ComplexVector vector(std::size_t n) const { return vectors_.column(n); }

  /// Matrix elements <m|op|n>.
  ComplexMatrix represent(const ComplexMatrix& op) const;
  /// sum_n values[n] |n><n|
  ComplexMatrix diagonal_operator(std::span<const double> values) const;

 private:
  ComplexMatrix vectors_;
};

/// Density matrix diagonal in a reference basis.
class IncoherentState {
 public:
  /// Weights must be non-negative and sum to 1 within 1e-10.
  IncoherentState(std::vector<double> weights, ReferenceBasis basis);

  const std::vector<double>& weights() const noexcept { return weights_; }
  const ReferenceBasis& basis() const noexcept { return basis_; }
  ComplexMatrix matrix() const;
  ComplexMatrix sqrt_matrix() const;
  DensityMatrix density_matrix() const;

 private:
  std::vector<double> weights_;
  ReferenceBasis basis_;
};

/// Settings for the simplex search behind C_1, C_p and C~_p.
struct CoherenceOptions {
  int restarts = 8;
  double tolerance = 1e-9;
  int max_iterations = 2000;
  std::uint64_t seed = 0x5eed'c0de'2024ULL;
};

/// weights_n = <n|rho|n>
IncoherentState dephase(const DensityMatrix& rho, const ReferenceBasis& basis);

/// ||rho - dephase(rho)||_2, the exact minimum over incoherent states.
double coherence_c2(const DensityMatrix& rho, const ReferenceBasis& basis);

/// min over incoherent sigma of ||rho - sigma||_1.
double coherence_c1(const DensityMatrix& rho, const ReferenceBasis& basis,
                    const CoherenceOptions& options = {});

/// min over incoherent sigma of ||rho - sigma||_p. p == 2 uses the closed form.
double coherence_cp(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                    const CoherenceOptions& options = {});

/// Always runs the simplex search, including for p == 2.
double coherence_cp_optimized(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                              const CoherenceOptions& options = {});

/// lambda_n = <n|sqrt(rho)|n>^2 / sum_m <m|sqrt(rho)|m>^2
IncoherentState hellinger_optimal_state(const DensityMatrix& rho, const ReferenceBasis& basis);

/// 2 - 2 sqrt(sum_n <n|sqrt(rho)|n>^2)
double coherence_hellinger(const DensityMatrix& rho, const ReferenceBasis& basis);

/// min over incoherent sigma of ||sqrt(rho) - sqrt(sigma)||_p. p == 2 uses
/// sqrt(coherence_hellinger).
double coherence_tilde_p(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                         const CoherenceOptions& options = {});

double coherence_tilde_p_optimized(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                                   const CoherenceOptions& options = {});

/// Wigner-Yanase skew information 1/2 ||[H, sqrt(rho)]||_2^2.
double wysi(const DensityMatrix& rho, const ComplexMatrix& h);

/// Tr(rho H^2) - Tr(rho H)^2, clamped at zero.
double energy_variance(const DensityMatrix& rho, const ComplexMatrix& h);

}  // namespace cqsl
