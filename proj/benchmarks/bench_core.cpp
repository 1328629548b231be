#include <benchmark/benchmark.h>

#include "qkrylov/krylov.hpp"
#include "qkrylov/lattice.hpp"
#include "qkrylov/moments.hpp"

namespace {

using namespace qkrylov;

void BM_apply_sum(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const PauliSum h = build_j1j2({side, side, 1.0, 0.5, Boundary::open});
  const StateVec v = StateVec::random_state(side * side, 1);
  Eigen::VectorXcd out(v.dim());
  for (auto _ : state) {
    apply_sum_into(h, v.amps(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(h.size()) *
                          v.dim());
}
BENCHMARK(BM_apply_sum)->Arg(2)->Arg(3)->Arg(4);

void BM_compute_moments(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PauliSum h = build_j1j2({3, 3, 1.0, 0.5, Boundary::open});
  const StateVec psi0 = antiferro_state(3, 3);
  for (auto _ : state) {
    const MomentSeq m = compute_moments(h, psi0, d);
    benchmark::DoNotOptimize(m.mu().data());
  }
}
BENCHMARK(BM_compute_moments)->Arg(10)->Arg(25)->Arg(50);

void BM_solve_thresholded(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PauliSum h = build_j1j2({2, 3, 1.0, 0.5, Boundary::open});
  const MomentSeq noiseless = compute_moments(h, antiferro_state(2, 3), d);
  const KrylovPair kp = assemble(add_noise(noiseless, 1e-4, 9));
  for (auto _ : state) {
    const ThresholdReport report = solve_thresholded(kp, 3e-3, h.scale());
    benchmark::DoNotOptimize(report.energy_physical);
  }
}
BENCHMARK(BM_solve_thresholded)->Arg(10)->Arg(20)->Arg(40);

void BM_noisy_trial(benchmark::State& state) {
  const PauliSum h = build_j1j2({2, 3, 1.0, 0.5, Boundary::open});
  const MomentSeq noiseless = compute_moments(h, antiferro_state(2, 3), 40);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    const MomentSeq noisy = add_noise(noiseless, 1e-3, ++trial);
    const ThresholdReport report =
        solve_thresholded(assemble(noisy), 3e-2, h.scale());
    benchmark::DoNotOptimize(report.energy_physical);
  }
}
BENCHMARK(BM_noisy_trial);

}  // namespace

BENCHMARK_MAIN();
