#include "cqsl/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "cqsl/error.hpp"
#include "cqsl/random.hpp"
#include "density_access.hpp"

namespace cqsl {

namespace {

constexpr double kPurityDriftTolerance = 1e-8;
constexpr double kSqrtSquareTolerance = 1e-8;
constexpr double kSqrtConsistencyTolerance = 1e-7;

// Gauss-Legendre nodes and exponent weights of the two-exponential
// commutator-free Magnus scheme.
const double kNodeEarly = 0.5 - std::numbers::sqrt3 / 6.0;
const double kNodeLate = 0.5 + std::numbers::sqrt3 / 6.0;
const double kWeightSmall = (3.0 - 2.0 * std::numbers::sqrt3) / 12.0;
const double kWeightLarge = (3.0 + 2.0 * std::numbers::sqrt3) / 12.0;

void require_hermitian(const ComplexMatrix& h, const char* name) {
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTolerance)) {
    throw Error(Errc::NonHermitian, std::string(name) + " defect " + std::to_string(defect));
  }
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& x) { return u * x * u.adjoint(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

Protocol Protocol::constant(ComplexMatrix h) {
  require_hermitian(h, "H");
  return Protocol(StaticProtocol{std::move(h)});
}

Protocol Protocol::rqa(ComplexMatrix initial, ComplexMatrix transverse, ComplexMatrix target, double tau) {
  require_hermitian(initial, "H_i");
  require_hermitian(transverse, "H_x");
  require_hermitian(target, "H_p");
  if (initial.dim() != transverse.dim() || initial.dim() != target.dim()) {
    throw Error(Errc::DimMismatch, "RQA operators must share one dimension");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(Errc::OutOfRange, "RQA tau must be positive, got " + std::to_string(tau));
  }
  return Protocol(RqaProtocol{std::move(initial), std::move(transverse), std::move(target), tau});
}

std::size_t Protocol::dim() const noexcept {
  return std::visit(
      [](const auto& k) {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, StaticProtocol>) {
          return k.hamiltonian.dim();
        } else {
          return k.initial.dim();
        }
      },
      kind_);
}

double Protocol::horizon() const noexcept {
  if (const auto* r = std::get_if<RqaProtocol>(&kind_)) return r->tau;
  return std::numeric_limits<double>::infinity();
}

Schedules rqa_schedules(double t, double tau) {
  if (!(tau > 0.0)) throw Error(Errc::OutOfRange, "tau must be positive");
  const double slack = 1e-12 * tau;
  if (!(t >= -slack && t <= tau + slack)) {
    throw Error(Errc::OutOfRange, "t = " + std::to_string(t) + " outside [0, tau]");
  }
  const double half = std::numbers::pi * t / (2.0 * tau);
  const double full = std::numbers::pi * t / tau;
  const double c = std::cos(half);
  const double s = std::sin(half);
  const double sx = std::sin(full);
  return {c * c, sx * sx, s * s};
}

ComplexMatrix hamiltonian_at(const Protocol& protocol, double t) {
  if (const auto* s = std::get_if<StaticProtocol>(&protocol.kind())) {
    if (!(t >= 0.0)) throw Error(Errc::OutOfRange, "t = " + std::to_string(t) + " < 0");
    return s->hamiltonian;
  }
  const auto& r = std::get<RqaProtocol>(protocol.kind());
  const Schedules sch = rqa_schedules(t, r.tau);
  return r.initial * Complex(sch.initial) + r.transverse * Complex(sch.transverse) +
         r.target * Complex(sch.target);
}

Trajectory propagate(const DensityMatrix& rho0, const Protocol& protocol, double horizon,
                     std::size_t steps) {
  if (steps < 1) throw Error(Errc::OutOfRange, "steps must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(Errc::OutOfRange, "horizon must be positive and finite");
  }
  if (horizon > protocol.horizon() * (1.0 + 1e-12)) {
    throw Error(Errc::OutOfRange, "horizon exceeds protocol duration");
  }
  if (rho0.dim() != protocol.dim()) throw Error(Errc::DimMismatch, "state and protocol dims differ");

  const double dt = horizon / static_cast<double>(steps);
  const double purity0 = rho0.purity();

  Trajectory traj{protocol, {}, {}, {}, {}, {}, steps};
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.sqrt_states.reserve(steps + 1);
  traj.hams.reserve(steps + 1);
  traj.spectra.reserve(steps + 1);

  const auto time_at = [&](std::size_t k) {
    return k == steps ? horizon : dt * static_cast<double>(k);
  };

  const bool is_static = protocol.is_static();
  std::optional<Spectrum> static_spectrum;
  if (is_static) static_spectrum = hermitian_eig(std::get<StaticProtocol>(protocol.kind()).hamiltonian);

  const auto record = [&](std::size_t k, ComplexMatrix rho, ComplexMatrix root) {
    const double t = time_at(k);
    traj.times.push_back(t);
    traj.hams.push_back(hamiltonian_at(protocol, t));
    traj.spectra.push_back(is_static ? *static_spectrum : hermitian_eig(traj.hams.back()));
    traj.sqrt_states.push_back(root);
    traj.states.push_back(detail::DensityMatrixAccess::unchecked(std::move(rho), std::move(root)));
  };

  const auto revalidate = [&](std::size_t k) {
    const ComplexMatrix& rho = traj.states[k].matrix();
    const ComplexMatrix& root = traj.sqrt_states[k];
    if (auto why = density_matrix_violation(rho)) {
      throw Error(Errc::ValidationFailure, "step " + std::to_string(k) + ": " + *why);
    }
    const double drift = std::abs(trace_product(rho, rho).real() - purity0);
    const double square_defect = max_abs_diff(root * root, rho);
    const double root_defect = max_abs_diff(matrix_sqrt_psd(rho), root);
    traj.max_purity_drift = std::max(traj.max_purity_drift, drift);
    traj.max_sqrt_defect = std::max(traj.max_sqrt_defect, root_defect);
    if (drift > kPurityDriftTolerance || square_defect > kSqrtSquareTolerance ||
        root_defect > kSqrtConsistencyTolerance) {
      throw Error(Errc::ValidationFailure,
                  "step " + std::to_string(k) + ": purity drift " + sci(drift) + ", sqrt square defect " +
                      sci(square_defect) + ", re-rooted sqrt defect " + sci(root_defect));
    }
  };

  record(0, rho0.matrix(), rho0.sqrt());
  for (std::size_t k = 0; k < steps; ++k) {
    if (is_static) {
      // Exact propagator from t = 0 each sample, so per-step rounding in a
      // repeated exp(-iH dt) cannot compound.
      const double t = time_at(k + 1);
      const ComplexMatrix u = static_spectrum->apply([t](double e) { return std::polar(1.0, -e * t); });
      record(k + 1, conjugate(u, rho0.matrix()), conjugate(u, rho0.sqrt()));
    } else {
      const double t = time_at(k);
      const ComplexMatrix h_early = hamiltonian_at(protocol, t + kNodeEarly * dt);
      const ComplexMatrix h_late = hamiltonian_at(protocol, t + kNodeLate * dt);
      const ComplexMatrix first = unitary_step(h_early * kWeightLarge + h_late * kWeightSmall, dt);
      const ComplexMatrix second = unitary_step(h_early * kWeightSmall + h_late * kWeightLarge, dt);
      const ComplexMatrix u = second * first;
      record(k + 1, conjugate(u, traj.states[k].matrix()), conjugate(u, traj.sqrt_states[k]));
    }
    if ((k + 1) % kRevalidateEvery == 0 || k + 1 == steps) revalidate(k + 1);
  }
  return traj;
}

ComplexMatrix haar_random_hamiltonian(std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw Error(Errc::OutOfRange, "random Hamiltonian needs dim >= 2");
  ComplexMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      SplitMix64 rng(split_seed(seed, i * dim + j));
      const double re = rng.normal();
      const double im = rng.normal();
      a(i, j) = Complex(re, im) / std::numbers::sqrt2;
    }
  }
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  }
  return h;
}

PureState eigenstate_prep(const ComplexMatrix& h, std::size_t k) {
  if (k >= h.dim()) {
    throw Error(Errc::IndexOutOfRange, "eigenstate " + std::to_string(k) + " of dim " + std::to_string(h.dim()));
  }
  return PureState::normalized(hermitian_eig(h).eigenvector(k));
}

}  // namespace cqsl
