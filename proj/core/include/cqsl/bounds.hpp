#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqsl/coherence.hpp"
#include "cqsl/dynamics.hpp"

namespace cqsl {

enum class BoundKind {
  SchattenFamily,      // T_S(p,q)
  SchattenPure,        // T_S,Pure(p,q), (1,inf) or (2,2)
  SchattenStaticPure,  // time-independent T~_S,Pure
  HellingerFamily,     // T_H(p,q)
  Hellinger22,         // T_H(2,2) via C_H and WYSI
  AnandanAharonov,     // T_AA
  RelativePurityPure,  // T_RP,Pure
  RelativePurity,      // T_RP
  WignerYanase,        // T_WY
  MandelstamTammMargolusLevitin,
};

std::string_view to_string(BoundKind kind) noexcept;

enum class PureCase { P1Inf, P2_2 };

struct BoundReport {
  BoundKind kind;
  std::optional<double> p;
  std::optional<double> q;
  double value = 0.0;
  double numerator = 0.0;
  double mean_denominator = 0.0;
  /// (t, integrand) samples whose time average is mean_denominator.
  std::vector<std::pair<double, double>> integrand;
  std::map<std::string, std::string> metadata;
};

/// Below this time-averaged speed a scenario counts as non-evolving.
inline constexpr double kDegenerateDenominator = 1e-14;

/// Composite trapezoid rule over (possibly non-uniform) sample times.
double trapezoid(std::span<const double> times, std::span<const double> values);

/// [1 - F_RP(rho_0, rho_T)] Tr(rho_0^2) / <C_p(rho_t) ||[H_t, rho_0]||_q>_T
BoundReport bound_T_S(const Trajectory& traj, double p, double q, const CoherenceOptions& options = {});

/// Pure-state reduction with F = |<psi_0|psi_T>|^2 and Delta H_t(psi_0).
BoundReport bound_T_S_pure(const Trajectory& traj, PureCase which, const CoherenceOptions& options = {});

/// Static-Hamiltonian pure-state form; coherence and spread taken at t = 0.
BoundReport bound_T_S_static_pure(const Trajectory& traj, PureCase which,
                                  const CoherenceOptions& options = {});

/// [1 - F_A(rho_0, rho_T)] / <C~_p(rho_t) ||[H_t, sqrt(rho_0)]||_q>_T
BoundReport bound_T_H(const Trajectory& traj, double p, double q, const CoherenceOptions& options = {});

/// [1 - F_A] / <sqrt(2) sqrt(C_H(rho_t)) sqrt(I(rho_0, H_t))>_T
BoundReport bound_T_H_22(const Trajectory& traj);

BoundReport bound_T_AA(const Trajectory& traj);
BoundReport bound_T_RP(const Trajectory& traj, bool pure_variant);
BoundReport bound_T_WY(const Trajectory& traj);

/// max{pi / (2 Delta H), pi / (2 (<H> - E_g))}; vanishing terms are dropped.
BoundReport bound_MT_ML(const ComplexMatrix& h, const PureState& psi0);
/// Same, for the Hamiltonian and initial state of a static pure trajectory.
BoundReport bound_MT_ML(const Trajectory& traj);

/// 1/p + 1/q == 1 within 1e-9, with 1/inf == 0.
bool conjugate_exponents(double p, double q) noexcept;

}  // namespace cqsl
