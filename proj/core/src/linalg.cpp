#include "cqsl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cqsl/error.hpp"

namespace cqsl {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::DimMismatch,
                "matrix dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) acc += std::norm(a(i, j));
    }
  }
  return std::sqrt(acc);
}

// Zeroes a(p,q) by A <- J^dagger A J, V <- V J, where J = diag(1, e^{-i phi}) R
// and R is the real Jacobi rotation of the phase-stripped 2x2 block.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex b = a(p, q);
  const double mag = std::abs(b);
  if (mag == 0.0) return;
  const Complex phase = std::conj(b) / mag;  // e^{-i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex j00 = c;
  const Complex j01 = s;
  const Complex j10 = -s * phase;
  const Complex j11 = c * phase;

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * j00 + akq * j10;
    a(k, q) = akp * j01 + akq * j11;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
    a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * j00 + vkq * j10;
    v(k, q) = vkp * j01 + vkq * j11;
  }
}

void fix_phase(ComplexVector& vec) {
  for (const Complex& x : vec) {
    const double mag = std::abs(x);
    if (mag > 1e-12) {
      const Complex rot = std::conj(x) / mag;
      for (Complex& y : vec) y *= rot;
      return;
    }
  }
}

bool lexicographic_less(const ComplexVector& a, const ComplexVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw Error(Errc::DimMismatch, "matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw Error(Errc::DimMismatch, "matrix dimension must be >= 1");
  if (data_.size() != dim * dim) {
    throw Error(Errc::DimMismatch, "expected " + std::to_string(dim * dim) + " entries, got " +
                                       std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(Errc::DimMismatch, "outer product of unequal vectors");
  ComplexMatrix m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns) {
  const std::size_t n = columns.size();
  ComplexMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (columns[k].size() != n) throw Error(Errc::DimMismatch, "column length != column count");
    for (std::size_t i = 0; i < n; ++i) m(i, k) = columns[k][i];
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t col) const {
  ComplexVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, col);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex acc{};
  for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
  return acc;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (Complex& x : data_) x *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (v.size() != a.dim()) throw Error(Errc::DimMismatch, "matrix-vector dims differ");
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.dim(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix Spectrum::reconstruct() const {
  return apply([](double x) { return x; });
}

double max_abs(const ComplexMatrix& m) noexcept {
  double best = 0.0;
  for (const Complex& x : m.entries()) best = std::max(best, std::abs(x));
  return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double best = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) best = std::max(best, std::abs(ea[i] - eb[i]));
  return best;
}

double hermiticity_defect(const ComplexMatrix& m) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return best;
}

double frobenius_norm(const ComplexMatrix& m) noexcept {
  double acc = 0.0;
  for (const Complex& x : m.entries()) acc += std::norm(x);
  return std::sqrt(acc);
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  Complex acc{};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < a.dim(); ++k) acc += a(i, k) * b(k, i);
  }
  return acc;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(Errc::DimMismatch, "inner product of unequal vectors");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

Spectrum hermitian_eig(const ComplexMatrix& h) {
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTolerance)) {
    throw Error(Errc::NonHermitian, "max |H - H^dagger| = " + std::to_string(defect));
  }
  const std::size_t n = h.dim();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex sym = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = sym;
      a(j, i) = std::conj(sym);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Absolute threshold for unit-scale operators, relative beyond that.
  const double threshold = kOffDiagonalTolerance * std::max(1.0, frobenius_norm(a));
  bool converged = off_diagonal_norm(a) < threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    converged = off_diagonal_norm(a) < threshold;
  }
  if (!converged) {
    throw Error(Errc::NoConvergence, "Jacobi sweeps exhausted at dim " + std::to_string(n));
  }

  std::vector<ComplexVector> vecs(n);
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) {
    vals[k] = a(k, k).real();
    vecs[k] = v.column(k);
    fix_phase(vecs[k]);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return vals[x] < vals[y]; });
  // Within numerically degenerate groups, order by phase-fixed entries.
  for (std::size_t start = 0; start < n;) {
    std::size_t stop = start + 1;
    while (stop < n && vals[order[stop]] - vals[order[start]] <=
                           1e-10 * std::max(1.0, std::abs(vals[order[start]]))) {
      ++stop;
    }
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
              order.begin() + static_cast<std::ptrdiff_t>(stop),
              [&](std::size_t x, std::size_t y) { return lexicographic_less(vecs[x], vecs[y]); });
    start = stop;
  }

  Spectrum out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = vals[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = vecs[order[k]][i];
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const double scale = std::max(1.0, max_abs(m));
  std::vector<double> sv;
  sv.reserve(m.dim());
  if (hermiticity_defect(m) <= 1e-14 * scale) {
    for (double x : hermitian_eig(m).eigenvalues) sv.push_back(std::abs(x));
  } else if (hermiticity_defect(Complex(0.0, 1.0) * m) <= 1e-14 * scale) {
    // Anti-Hermitian input (e.g. a commutator of Hermitian operators).
    for (double x : hermitian_eig(Complex(0.0, 1.0) * m).eigenvalues) sv.push_back(std::abs(x));
  } else {
    for (double x : hermitian_eig(m.adjoint() * m).eigenvalues) {
      sv.push_back(std::sqrt(std::max(x, 0.0)));
    }
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (std::isnan(p) || p < 1.0) throw Error(Errc::InvalidP, "Schatten p = " + std::to_string(p));
  if (p == 2.0) return frobenius_norm(m);
  const std::vector<double> sv = singular_values(m);
  const double largest = sv.front();
  if (std::isinf(p)) return largest;
  if (largest == 0.0) return 0.0;
  if (p == 1.0) return std::accumulate(sv.begin(), sv.end(), 0.0);
  double acc = 0.0;
  for (double s : sv) acc += std::pow(s / largest, p);
  return largest * std::pow(acc, 1.0 / p);
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  const Spectrum spec = hermitian_eig(m);
  if (spec.eigenvalues.front() < kPsdClip) {
    throw Error(Errc::NotPSD, "smallest eigenvalue " + std::to_string(spec.eigenvalues.front()));
  }
  // Eigenvalues this close to zero are roundoff; rooting them would leak
  // O(sqrt(eps)) weight into the null space.
  const double floor = kPsdNoiseFloor * std::max(1.0, spec.eigenvalues.back());
  return spec.apply([floor](double x) { return x < floor ? 0.0 : std::sqrt(x); });
}

ComplexMatrix unitary_step(const ComplexMatrix& h, double dt) {
  const Spectrum spec = hermitian_eig(h);
  return spec.apply([dt](double x) { return std::polar(1.0, -x * dt); });
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return a * b - b * a;
}

}  // namespace cqsl
