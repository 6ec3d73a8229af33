// Microbenchmarks for the hot paths: the 16-dim damping channel, one full
// deterministic correction round, and a single trajectory shot.

#include "qecmag/channels.hpp"
#include "qecmag/code.hpp"
#include "qecmag/experiments.hpp"

#include <benchmark/benchmark.h>

using namespace qecmag;

namespace {

DensityMatrix damped_plus(double p) {
  const PureState psi = encode(Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0));
  return apply(amplitude_damping_p(p, 4), dm_from_pure(psi));
}

void BM_damping_channel(benchmark::State& state) {
  const KrausChannel ch = amplitude_damping_p(0.05, 4);
  const DensityMatrix rho = dm_from_pure(encode(Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0)));
  for (auto _ : state) {
    DensityMatrix out = apply(ch, rho);
    benchmark::DoNotOptimize(out.op.data());
  }
}
BENCHMARK(BM_damping_channel);

void BM_correction_round(benchmark::State& state) {
  const double p = 0.05;
  const DensityMatrix rho = damped_plus(p);
  FullCorrectionOptions opt;
  opt.p_gate = 1e-4;
  for (auto _ : state) {
    FullCorrectionResult res = full_correction(rho, p, opt);
    benchmark::DoNotOptimize(res.post_state.op.data());
  }
}
BENCHMARK(BM_correction_round);

void BM_recovery_analysis(benchmark::State& state) {
  const KrausChannel ch = amplitude_damping_p(0.05, 4);
  for (auto _ : state) {
    RecoveryAnalysis an = recovery_analysis(ch, CodeSpec::instance());
    benchmark::DoNotOptimize(an.fidelity_bound);
  }
}
BENCHMARK(BM_recovery_analysis);

void BM_trajectory_shot(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.gamma = 1.0;
  cfg.tau_ec = 0.05;
  cfg.p_gate = 1e-4;
  cfg.total_time = 1.0;
  cfg.mode = RunMode::trajectory;
  std::uint64_t shot = 0;
  for (auto _ : state) {
    detail::TrajectoryEstimates est;
    detail::run_trajectory_shots(cfg, Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0), false,
                                 shot, shot + 1, est);
    ++shot;
    benchmark::DoNotOptimize(est.sum.data());
  }
}
BENCHMARK(BM_trajectory_shot);

}  // namespace

BENCHMARK_MAIN();
