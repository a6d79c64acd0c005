#include <benchmark/benchmark.h>

#include "cqsl/bounds.hpp"
#include "cqsl/coherence.hpp"
#include "cqsl/dynamics.hpp"

using namespace cqsl;

namespace {

DensityMatrix uniform_superposition(std::size_t dim) {
  ComplexVector amp(dim, Complex(1.0));
  return DensityMatrix::from_pure(PureState::normalized(std::move(amp)));
}

void BM_HermitianEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix h = haar_random_hamiltonian(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_SchattenNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = haar_random_hamiltonian(n, 11) * haar_random_hamiltonian(n, 13);
  for (auto _ : state) benchmark::DoNotOptimize(schatten_norm(a, 1.0));
}
BENCHMARK(BM_SchattenNorm)->Arg(2)->Arg(4)->Arg(8);

void BM_PropagateStatic(benchmark::State& state) {
  const ComplexMatrix h = haar_random_hamiltonian(2, 3);
  const DensityMatrix rho = uniform_superposition(2);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(rho, Protocol::constant(h), 1.0, steps));
}
BENCHMARK(BM_PropagateStatic)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_PropagateRqa(benchmark::State& state) {
  const ComplexMatrix hi = haar_random_hamiltonian(4, 17);
  const ComplexMatrix hx = haar_random_hamiltonian(4, 19);
  const ComplexMatrix hp = haar_random_hamiltonian(4, 23);
  const DensityMatrix rho = DensityMatrix::from_pure(eigenstate_prep(hi, 0));
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(rho, Protocol::rqa(hi, hx, hp, 5.0), 5.0, steps));
}
BENCHMARK(BM_PropagateRqa)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_CoherenceC1(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix h = haar_random_hamiltonian(n, 29);
  const DensityMatrix rho = DensityMatrix::from_pure(eigenstate_prep(h, 0));
  const ReferenceBasis basis = ReferenceBasis::computational(n);
  for (auto _ : state) benchmark::DoNotOptimize(coherence_c1(rho, basis));
}
BENCHMARK(BM_CoherenceC1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_Bounds(benchmark::State& state) {
  const ComplexMatrix h = haar_random_hamiltonian(2, 31);
  const Trajectory traj = propagate(uniform_superposition(2), Protocol::constant(h), 1.0, 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bound_T_AA(traj));
    benchmark::DoNotOptimize(bound_T_RP(traj, false));
    benchmark::DoNotOptimize(bound_T_H_22(traj));
  }
}
BENCHMARK(BM_Bounds)->Unit(benchmark::kMillisecond);

void BM_BoundTS11(benchmark::State& state) {
  const ComplexMatrix h = haar_random_hamiltonian(2, 37);
  const Trajectory traj = propagate(uniform_superposition(2), Protocol::constant(h), 1.0, 64);
  for (auto _ : state) benchmark::DoNotOptimize(bound_T_S(traj, 1.0, kInfinity));
}
BENCHMARK(BM_BoundTS11)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
