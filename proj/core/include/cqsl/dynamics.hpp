#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cqsl/linalg.hpp"
#include "cqsl/states.hpp"

namespace cqsl {

/// Time-independent Hamiltonian.
struct StaticProtocol {
  ComplexMatrix hamiltonian;
};

/// Reverse-annealing interpolation s_i(t) H_i + s_x(t) H_x + s_p(t) H_p over [0, tau].
struct RqaProtocol {
  ComplexMatrix initial;
  ComplexMatrix transverse;
  ComplexMatrix target;
  double tau;
};

class Protocol {
 public:
  static Protocol constant(ComplexMatrix h);
  static Protocol rqa(ComplexMatrix initial, ComplexMatrix transverse, ComplexMatrix target, double tau);

  bool is_static() const noexcept { return std::holds_alternative<StaticProtocol>(kind_); }
  std::size_t dim() const noexcept;
  const std::variant<StaticProtocol, RqaProtocol>& kind() const noexcept { return kind_; }
  /// Latest admissible time: tau for RQA, unbounded for static protocols.
  double horizon() const noexcept;

 private:
  explicit Protocol(std::variant<StaticProtocol, RqaProtocol> kind) : kind_(std::move(kind)) {}
  std::variant<StaticProtocol, RqaProtocol> kind_;
};

struct Schedules {
  double initial;
  double transverse;
  double target;
};

/// cos^2(pi t / 2 tau), sin^2(pi t / tau), sin^2(pi t / 2 tau)
Schedules rqa_schedules(double t, double tau);

ComplexMatrix hamiltonian_at(const Protocol& protocol, double t);

/// Sampled unitary evolution on a uniform grid. Sample k carries the state,
/// its conjugation-evolved square root, and the Hamiltonian with its spectrum.
struct Trajectory {
  Protocol protocol;
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<ComplexMatrix> sqrt_states;
  std::vector<ComplexMatrix> hams;
  std::vector<Spectrum> spectra;
  std::size_t step_count = 0;

  /// Worst deviations seen at re-validation checkpoints.
  double max_purity_drift = 0.0;
  double max_sqrt_defect = 0.0;

  double horizon() const { return times.back(); }
  const DensityMatrix& initial() const { return states.front(); }
  const DensityMatrix& final() const { return states.back(); }
};

inline constexpr std::size_t kDefaultSteps = 4096;
inline constexpr std::size_t kRevalidateEvery = 16;

/// Fourth-order commutator-free exponential stepping for RQA; static
/// protocols use exp(-iH t_k) from t = 0 at every sample. Re-validates every
/// kRevalidateEvery steps and at the end.
Trajectory propagate(const DensityMatrix& rho0, const Protocol& protocol, double horizon,
                     std::size_t steps = kDefaultSteps);

/// (A + A^dagger) / 2 with A_ij iid complex Gaussians of unit variance (GUE).
ComplexMatrix haar_random_hamiltonian(std::size_t dim, std::uint64_t seed);

/// k-th eigenvector of h in ascending eigenvalue order.
PureState eigenstate_prep(const ComplexMatrix& h, std::size_t k);

}  // namespace cqsl
