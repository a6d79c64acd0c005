#include "cqsl/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cqsl/error.hpp"
#include "cqsl/optimize.hpp"
#include "cqsl/random.hpp"

namespace cqsl {

namespace {

constexpr double kGramTolerance = 1e-10;
constexpr double kWeightTolerance = 1e-10;

void require_dims(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(Errc::DimMismatch, "dims " + std::to_string(a) + " and " + std::to_string(b));
  }
}

void require_hermitian(const ComplexMatrix& h) {
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTolerance)) {
    throw Error(Errc::NonHermitian, "max |H - H^dagger| = " + std::to_string(defect));
  }
}

void require_p(double p) {
  if (std::isnan(p) || p < 1.0) throw Error(Errc::InvalidP, "p = " + std::to_string(p));
}

std::vector<double> real_diagonal(const ComplexMatrix& m) {
  std::vector<double> d(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) d[i] = m(i, i).real();
  return d;
}

// Minimizes ||target - diag(f(w))||_p over the weight simplex, where target is
// already expressed in the reference basis. `seed_weights` are evaluated
// exactly and also start the first restart.
double simplex_search(const ComplexMatrix& target, double p, bool root_weights,
                      std::span<const std::vector<double>> seed_weights,
                      const CoherenceOptions& options) {
  const std::size_t n = target.dim();
  const auto distance = [&](std::span<const double> w) {
    ComplexMatrix diff = target;
    for (std::size_t i = 0; i < n; ++i) diff(i, i) -= root_weights ? std::sqrt(w[i]) : w[i];
    return schatten_norm(diff, p);
  };

  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : seed_weights) best = std::min(best, distance(w));
  if (n == 1) return best;

  const Objective objective = [&](std::span<const double> logits) {
    return distance(softmax_weights(logits));
  };
  NelderMeadOptions nm;
  nm.tolerance = options.tolerance;
  nm.max_iterations = options.max_iterations;

  SplitMix64 rng(options.seed);
  bool any_converged = false;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<double> start;
    if (r < static_cast<int>(seed_weights.size())) {
      start = weights_to_logits(seed_weights[static_cast<std::size_t>(r)]);
    } else {
      start.resize(n - 1);
      for (double& x : start) x = 1.5 * rng.normal();
    }
    const NelderMeadResult res = nelder_mead(objective, std::move(start), nm);
    any_converged = any_converged || res.converged;
    best = std::min(best, res.value);
  }
  if (!any_converged && options.restarts > 0) {
    throw Error(Errc::OptimizerFailure, "no simplex restart met tolerance");
  }
  return best;
}

}  // namespace

ReferenceBasis::ReferenceBasis(ComplexMatrix columns) : vectors_(std::move(columns)) {
  const ComplexMatrix gram = vectors_.adjoint() * vectors_;
  const double defect = max_abs_diff(gram, ComplexMatrix::identity(dim()));
  if (!(defect <= kGramTolerance)) {
    throw Error(Errc::InvalidState, "basis not orthonormal (Gram defect " + std::to_string(defect) + ")");
  }
}

ReferenceBasis ReferenceBasis::computational(std::size_t dim) {
  return ReferenceBasis(ComplexMatrix::identity(dim));
}

ComplexMatrix ReferenceBasis::represent(const ComplexMatrix& op) const {
  require_dims(op.dim(), dim());
  return vectors_.adjoint() * op * vectors_;
}

ComplexMatrix ReferenceBasis::diagonal_operator(std::span<const double> values) const {
  require_dims(values.size(), dim());
  return vectors_ * ComplexMatrix::diagonal(values) * vectors_.adjoint();
}

IncoherentState::IncoherentState(std::vector<double> weights, ReferenceBasis basis)
    : weights_(std::move(weights)), basis_(std::move(basis)) {
  require_dims(weights_.size(), basis_.dim());
  for (double w : weights_) {
    if (!(w >= 0.0)) throw Error(Errc::InvalidState, "negative incoherent weight");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(std::abs(total - 1.0) <= kWeightTolerance)) {
    throw Error(Errc::InvalidState, "incoherent weights sum to " + std::to_string(total));
  }
}

ComplexMatrix IncoherentState::matrix() const { return basis_.diagonal_operator(weights_); }

ComplexMatrix IncoherentState::sqrt_matrix() const {
  std::vector<double> roots(weights_.size());
  std::transform(weights_.begin(), weights_.end(), roots.begin(),
                 [](double w) { return std::sqrt(w); });
  return basis_.diagonal_operator(roots);
}

DensityMatrix IncoherentState::density_matrix() const { return DensityMatrix(matrix()); }

IncoherentState dephase(const DensityMatrix& rho, const ReferenceBasis& basis) {
  require_dims(rho.dim(), basis.dim());
  std::vector<double> w = real_diagonal(basis.represent(rho.matrix()));
  for (double& x : w) x = std::max(x, 0.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return IncoherentState(std::move(w), basis);
}

double coherence_c2(const DensityMatrix& rho, const ReferenceBasis& basis) {
  require_dims(rho.dim(), basis.dim());
  const ComplexMatrix r = basis.represent(rho.matrix());
  double acc = 0.0;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    for (std::size_t j = 0; j < r.dim(); ++j) {
      if (i != j) acc += std::norm(r(i, j));
    }
  }
  return std::sqrt(acc);
}

double coherence_c1(const DensityMatrix& rho, const ReferenceBasis& basis,
                    const CoherenceOptions& options) {
  return coherence_cp_optimized(rho, basis, 1.0, options);
}

double coherence_cp(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                    const CoherenceOptions& options) {
  require_p(p);
  if (p == 2.0) return coherence_c2(rho, basis);
  return coherence_cp_optimized(rho, basis, p, options);
}

double coherence_cp_optimized(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                              const CoherenceOptions& options) {
  require_p(p);
  require_dims(rho.dim(), basis.dim());
  const std::vector<std::vector<double>> seeds{dephase(rho, basis).weights()};
  return simplex_search(basis.represent(rho.matrix()), p, false, seeds, options);
}

IncoherentState hellinger_optimal_state(const DensityMatrix& rho, const ReferenceBasis& basis) {
  require_dims(rho.dim(), basis.dim());
  std::vector<double> d = real_diagonal(basis.represent(rho.sqrt()));
  double total = 0.0;
  for (double& x : d) {
    x = x * x;
    total += x;
  }
  for (double& x : d) x /= total;
  return IncoherentState(std::move(d), basis);
}

double coherence_hellinger(const DensityMatrix& rho, const ReferenceBasis& basis) {
  require_dims(rho.dim(), basis.dim());
  const std::vector<double> d = real_diagonal(basis.represent(rho.sqrt()));
  double total = 0.0;
  for (double x : d) total += x * x;
  return std::clamp(2.0 - 2.0 * std::sqrt(total), 0.0, 2.0);
}

double coherence_tilde_p(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                         const CoherenceOptions& options) {
  require_p(p);
  if (p == 2.0) return std::sqrt(coherence_hellinger(rho, basis));
  return coherence_tilde_p_optimized(rho, basis, p, options);
}

double coherence_tilde_p_optimized(const DensityMatrix& rho, const ReferenceBasis& basis, double p,
                                   const CoherenceOptions& options) {
  require_p(p);
  require_dims(rho.dim(), basis.dim());
  const std::vector<std::vector<double>> seeds{hellinger_optimal_state(rho, basis).weights(),
                                               dephase(rho, basis).weights()};
  return simplex_search(basis.represent(rho.sqrt()), p, true, seeds, options);
}

double wysi(const DensityMatrix& rho, const ComplexMatrix& h) {
  require_dims(rho.dim(), h.dim());
  require_hermitian(h);
  const double f = frobenius_norm(commutator(h, rho.sqrt()));
  return std::max(0.5 * f * f, 0.0);
}

double energy_variance(const DensityMatrix& rho, const ComplexMatrix& h) {
  require_dims(rho.dim(), h.dim());
  require_hermitian(h);
  const ComplexMatrix rh = rho.matrix() * h;
  const double mean = rh.trace().real();
  const double second = trace_product(rh, h).real();
  return std::max(second - mean * mean, 0.0);
}

}  // namespace cqsl
