#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace cqsl {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Sentinel for the operator norm in Schatten-norm calls.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Maximum |H - H^dagger| tolerated by routines that require Hermitian input.
inline constexpr double kHermitianTolerance = 1e-10;

/// Eigenvalues down to this value are clipped to zero before taking roots.
inline constexpr double kPsdClip = -1e-10;

/// Non-negative eigenvalues below this (relative to the largest) are treated
/// as exact zeros when taking square roots.
inline constexpr double kPsdNoiseFloor = 1e-13;

/// Dense square complex matrix with row-major storage.
class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension; dim must be >= 1.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of dim*dim row-major entries.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  /// |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
  /// Matrix whose k-th column is columns[k].
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexVector column(std::size_t col) const;
  ComplexMatrix adjoint() const;
  Complex trace() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; eigenvectors
/// are the columns of `eigenvectors`, each phase-fixed so that its first
/// non-negligible component is real and positive.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  ComplexVector eigenvector(std::size_t k) const { return eigenvectors.column(k); }
  /// V f(diag(lambda)) V^dagger
  template <class F>
  ComplexMatrix apply(F&& f) const;
  ComplexMatrix reconstruct() const;
};

double max_abs(const ComplexMatrix& m) noexcept;
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |M - M^dagger|
double hermiticity_defect(const ComplexMatrix& m) noexcept;
double frobenius_norm(const ComplexMatrix& m) noexcept;
/// Tr(AB) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// <a|b>
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

/// Cyclic complex Jacobi. Throws NonHermitian or NoConvergence.
Spectrum hermitian_eig(const ComplexMatrix& h);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

/// (sum_k s_k^p)^(1/p); p == kInfinity gives the largest singular value.
double schatten_norm(const ComplexMatrix& m, double p);

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

/// exp(-i H dt)
ComplexMatrix unitary_step(const ComplexMatrix& h, double dt);

/// AB - BA
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

template <class F>
ComplexMatrix Spectrum::apply(F&& f) const {
  const std::size_t n = dim();
  ComplexMatrix out(n);
  std::vector<Complex> fl(n);
  for (std::size_t k = 0; k < n; ++k) fl[k] = Complex(f(eigenvalues[k]));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) {
        acc += eigenvectors(i, k) * fl[k] * std::conj(eigenvectors(j, k));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace cqsl
