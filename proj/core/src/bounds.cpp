#include "cqsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "cqsl/error.hpp"

namespace cqsl {

namespace {

constexpr double kPurityTolerance = 1e-8;
constexpr double kRangeTolerance = 1e-9;

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_exponent(double x) { return std::isinf(x) ? "inf" : format_number(x); }

void require_pure(const Trajectory& traj) {
  const double purity = traj.initial().purity();
  if (!(purity > 1.0 - kPurityTolerance)) {
    throw Error(Errc::NotPure, "initial purity " + format_number(purity));
  }
}

void require_static(const Trajectory& traj) {
  if (!traj.protocol.is_static()) throw Error(Errc::NotStatic, "bound needs a time-independent Hamiltonian");
}

void require_conjugate(double p, double q) {
  if (!conjugate_exponents(p, q)) {
    throw Error(Errc::ConjugateMismatch, "1/p + 1/q != 1 for p = " + format_exponent(p) +
                                             ", q = " + format_exponent(q));
  }
}

// Range-checks an overlap that must lie in [lo, 1] and clamps roundoff.
double clamp_overlap(double raw, double lo, const char* name) {
  if (!(raw >= lo - kRangeTolerance && raw <= 1.0 + kRangeTolerance)) {
    throw Error(Errc::OutOfRange, std::string(name) + " = " + format_number(raw));
  }
  return std::clamp(raw, lo, 1.0);
}

BoundReport start_report(BoundKind kind, const Trajectory& traj) {
  BoundReport r{kind, std::nullopt, std::nullopt, 0.0, 0.0, 0.0, {}, {}};
  r.metadata["horizon"] = format_number(traj.horizon());
  r.metadata["steps"] = std::to_string(traj.step_count);
  r.metadata["protocol"] = traj.protocol.is_static() ? "static" : "rqa";
  return r;
}

void finish(BoundReport& r) {
  if (!(r.mean_denominator >= kDegenerateDenominator)) {
    throw Error(Errc::DegenerateDenominator,
                std::string(to_string(r.kind)) + " denominator " + format_number(r.mean_denominator));
  }
  r.value = r.numerator / r.mean_denominator;
}

template <class F>
void integrate(BoundReport& r, const Trajectory& traj, F&& sample) {
  std::vector<double> values(traj.times.size());
  r.integrand.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = sample(k);
    r.integrand.emplace_back(traj.times[k], values[k]);
  }
  r.mean_denominator = trapezoid(traj.times, values) / traj.horizon();
}

ReferenceBasis energy_basis(const Trajectory& traj, std::size_t k) { return ReferenceBasis(traj.spectra[k]); }

double pure_fidelity(const Trajectory& traj, BoundReport& r) {
  const double raw = trace_product(traj.initial().matrix(), traj.final().matrix()).real();
  r.metadata["fidelity_raw"] = format_number(raw);
  return clamp_overlap(raw, 0.0, "fidelity");
}

double spread(const DensityMatrix& rho, const ComplexMatrix& h) { return std::sqrt(energy_variance(rho, h)); }

void set_case(BoundReport& r, PureCase which) {
  r.p = which == PureCase::P1Inf ? 1.0 : 2.0;
  r.q = which == PureCase::P1Inf ? kInfinity : 2.0;
}

}  // namespace

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::SchattenFamily: return "T_S";
    case BoundKind::SchattenPure: return "T_S_PURE";
    case BoundKind::SchattenStaticPure: return "T_S_TILDE";
    case BoundKind::HellingerFamily: return "T_H";
    case BoundKind::Hellinger22: return "T_H_22";
    case BoundKind::AnandanAharonov: return "T_AA";
    case BoundKind::RelativePurityPure: return "T_RP_PURE";
    case BoundKind::RelativePurity: return "T_RP";
    case BoundKind::WignerYanase: return "T_WY";
    case BoundKind::MandelstamTammMargolusLevitin: return "T_MTML";
  }
  return "?";
}

bool conjugate_exponents(double p, double q) noexcept {
  if (std::isnan(p) || std::isnan(q) || p < 1.0 || q < 1.0) return false;
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  return std::abs(ip + iq - 1.0) <= 1e-9;
}

double trapezoid(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw Error(Errc::DimMismatch, "quadrature sample count mismatch");
  double acc = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    acc += 0.5 * (times[k] - times[k - 1]) * (values[k] + values[k - 1]);
  }
  return acc;
}

BoundReport bound_T_S(const Trajectory& traj, double p, double q, const CoherenceOptions& options) {
  require_conjugate(p, q);
  BoundReport r = start_report(BoundKind::SchattenFamily, traj);
  r.p = p;
  r.q = q;
  const DensityMatrix& rho0 = traj.initial();
  const double raw = relative_purity(rho0, traj.final());
  r.metadata["relative_purity_raw"] = format_number(raw);
  const double f_rp = clamp_overlap(raw, 0.0, "relative purity");
  r.numerator = (1.0 - f_rp) * rho0.purity();
  integrate(r, traj, [&](std::size_t k) {
    const double c = coherence_cp(traj.states[k], energy_basis(traj, k), p, options);
    return c * schatten_norm(commutator(traj.hams[k], rho0.matrix()), q);
  });
  finish(r);
  return r;
}

BoundReport bound_T_S_pure(const Trajectory& traj, PureCase which, const CoherenceOptions& options) {
  require_pure(traj);
  BoundReport r = start_report(BoundKind::SchattenPure, traj);
  set_case(r, which);
  r.numerator = 1.0 - pure_fidelity(traj, r);
  const DensityMatrix& rho0 = traj.initial();
  integrate(r, traj, [&](std::size_t k) {
    const ReferenceBasis basis = energy_basis(traj, k);
    const double dh = spread(rho0, traj.hams[k]);
    if (which == PureCase::P1Inf) return coherence_c1(traj.states[k], basis, options) * dh;
    return std::numbers::sqrt2 * coherence_c2(traj.states[k], basis) * dh;
  });
  finish(r);
  return r;
}

BoundReport bound_T_S_static_pure(const Trajectory& traj, PureCase which, const CoherenceOptions& options) {
  require_static(traj);
  require_pure(traj);
  BoundReport r = start_report(BoundKind::SchattenStaticPure, traj);
  set_case(r, which);
  r.numerator = 1.0 - pure_fidelity(traj, r);
  const DensityMatrix& rho0 = traj.initial();
  const ReferenceBasis basis = energy_basis(traj, 0);
  const double dh = spread(rho0, traj.hams.front());
  const double speed = which == PureCase::P1Inf
                           ? coherence_c1(rho0, basis, options) * dh
                           : std::numbers::sqrt2 * coherence_c2(rho0, basis) * dh;
  r.integrand.emplace_back(0.0, speed);
  r.mean_denominator = speed;
  finish(r);
  return r;
}

BoundReport bound_T_H(const Trajectory& traj, double p, double q, const CoherenceOptions& options) {
  require_conjugate(p, q);
  BoundReport r = start_report(BoundKind::HellingerFamily, traj);
  r.p = p;
  r.q = q;
  const DensityMatrix& rho0 = traj.initial();
  const Overlap fa = affinity(rho0, traj.final());
  r.metadata["affinity_raw"] = format_number(fa.raw);
  r.numerator = 1.0 - fa.value;
  integrate(r, traj, [&](std::size_t k) {
    const double c = coherence_tilde_p(traj.states[k], energy_basis(traj, k), p, options);
    return c * schatten_norm(commutator(traj.hams[k], rho0.sqrt()), q);
  });
  finish(r);
  return r;
}

BoundReport bound_T_H_22(const Trajectory& traj) {
  BoundReport r = start_report(BoundKind::Hellinger22, traj);
  r.p = 2.0;
  r.q = 2.0;
  const DensityMatrix& rho0 = traj.initial();
  const Overlap fa = affinity(rho0, traj.final());
  r.metadata["affinity_raw"] = format_number(fa.raw);
  r.numerator = 1.0 - fa.value;
  integrate(r, traj, [&](std::size_t k) {
    const double ch = coherence_hellinger(traj.states[k], energy_basis(traj, k));
    return std::numbers::sqrt2 * std::sqrt(ch) * std::sqrt(wysi(rho0, traj.hams[k]));
  });
  finish(r);
  return r;
}

BoundReport bound_T_AA(const Trajectory& traj) {
  require_static(traj);
  require_pure(traj);
  BoundReport r = start_report(BoundKind::AnandanAharonov, traj);
  r.numerator = bures_angle(pure_fidelity(traj, r));
  const double dh = spread(traj.initial(), traj.hams.front());
  r.integrand.emplace_back(0.0, dh);
  r.mean_denominator = dh;
  finish(r);
  return r;
}

BoundReport bound_T_RP(const Trajectory& traj, bool pure_variant) {
  if (pure_variant) require_pure(traj);
  BoundReport r = start_report(pure_variant ? BoundKind::RelativePurityPure : BoundKind::RelativePurity, traj);
  if (pure_variant) {
    r.numerator = bures_angle(pure_fidelity(traj, r));
    integrate(r, traj, [&](std::size_t k) { return spread(traj.states[k], traj.hams[k]); });
  } else {
    const double raw = relative_purity(traj.initial(), traj.final());
    r.metadata["relative_purity_raw"] = format_number(raw);
    r.numerator = std::acos(std::sqrt(clamp_overlap(raw, 0.0, "relative purity")));
    integrate(r, traj, [&](std::size_t k) {
      const ComplexMatrix& rho = traj.states[k].matrix();
      const ComplexMatrix& h = traj.hams[k];
      const ComplexMatrix rh = rho * h;
      const ComplexMatrix rr = rho * rho;
      const ComplexMatrix hh = h * h;
      const double num = trace_product(rr, hh).real() - trace_product(rh, rh).real();
      return std::sqrt(std::max(num, 0.0) / traj.states[k].purity());
    });
  }
  finish(r);
  return r;
}

BoundReport bound_T_WY(const Trajectory& traj) {
  BoundReport r = start_report(BoundKind::WignerYanase, traj);
  const Overlap fa = affinity(traj.initial(), traj.final());
  r.metadata["affinity_raw"] = format_number(fa.raw);
  r.numerator = std::acos(clamp_overlap(fa.raw, -1.0, "affinity"));
  integrate(r, traj, [&](std::size_t k) {
    return std::numbers::sqrt2 * std::sqrt(wysi(traj.states[k], traj.hams[k]));
  });
  finish(r);
  return r;
}

BoundReport bound_MT_ML(const ComplexMatrix& h, const PureState& psi0) {
  if (h.dim() != psi0.dim()) throw Error(Errc::DimMismatch, "Hamiltonian and state dims differ");
  const DensityMatrix rho0 = DensityMatrix::from_pure(psi0);
  const double variance = energy_variance(rho0, h);
  const double mean = trace_product(rho0.matrix(), h).real();
  const double ground = hermitian_eig(h).eigenvalues.front();
  const double excess = mean - ground;

  BoundReport r{BoundKind::MandelstamTammMargolusLevitin, std::nullopt, std::nullopt, 0.0, 0.0, 0.0, {}, {}};
  r.numerator = std::numbers::pi / 2.0;
  double slowest = kInfinity;
  if (variance >= kDegenerateDenominator) {
    slowest = std::min(slowest, std::sqrt(variance));
    r.metadata["mt_term"] = format_number(r.numerator / std::sqrt(variance));
  }
  if (excess >= kDegenerateDenominator) {
    slowest = std::min(slowest, excess);
    r.metadata["ml_term"] = format_number(r.numerator / excess);
  }
  r.mean_denominator = std::isinf(slowest) ? 0.0 : slowest;
  r.integrand.emplace_back(0.0, r.mean_denominator);
  finish(r);
  return r;
}

BoundReport bound_MT_ML(const Trajectory& traj) {
  require_static(traj);
  require_pure(traj);
  const Spectrum spec = hermitian_eig(traj.initial().matrix());
  BoundReport r = bound_MT_ML(traj.hams.front(), PureState::normalized(spec.eigenvector(spec.dim() - 1)));
  r.metadata["horizon"] = format_number(traj.horizon());
  return r;
}

}  // namespace cqsl
