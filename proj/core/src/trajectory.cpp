#include "qecmag/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

// Pure-state unravelling of the deterministic cycle. Every stochastic element
// (damping, gate faults, parity reads, the filter meter, the reset of the
// collapsed partner, the ancilla trace-out) is sampled so that the shot
// average reproduces the density-matrix evolution exactly. Shots are split
// into a fixed number of blocks with per-shot RNG streams, so the reduction
// order, and therefore the result, does not depend on the worker count.

namespace qecmag {
namespace detail {

namespace {

constexpr int kReg = 5;
constexpr int kAncilla = 4;
constexpr int kDim16 = 16;
constexpr int kDim32 = 32;
constexpr int kBlocks = 64;

struct ShotContext {
  // gates
  ComplexOperator cn, cs, csd, x, h;
  ComplexOperator ry_xi, ry_delta2_m, ry_delta2_p, ry_phi_m, ry_phi_p;
  ComplexOperator pauli[3];
  ComplexOperator u_sub;  // 16-dim signal step, unused when the signal is off
  // observables
  Eigen::VectorXcd psi0, zero_l, one_l;
  // run parameters
  double p_round = 0.0;
  double p_sub = 0.0;
  double p_gate = 0.0;
  int substeps = 1;
  int rounds = 0;
  double tau_ec = 0.0;
  bool signal_on = false;
  bool discard_aborts = false;

  static ShotContext make(const ExperimentConfig& config, Complex alpha, Complex beta,
                          bool signal_on) {
    ShotContext c;
    c.cn = cnot_gate();
    c.cs = cs_gate();
    c.csd = cs_dagger_gate();
    c.x = sigma_x();
    c.h = hadamard();
    const CorrectionAngles ang = correction_angles(config.p());
    c.ry_xi = ry_gate(2.0 * ang.xi);
    c.ry_delta2_m = ry_gate(-ang.delta2);
    c.ry_delta2_p = ry_gate(ang.delta2);
    c.ry_phi_m = ry_gate(-ang.phi);
    c.ry_phi_p = ry_gate(ang.phi);
    c.pauli[0] = sigma_x();
    c.pauli[1] = sigma_y();
    c.pauli[2] = sigma_z();

    const CodeSpec& code = CodeSpec::instance();
    c.psi0 = encode(alpha, beta).amp;
    c.zero_l = code.zero_l.amp;
    c.one_l = code.one_l.amp;

    c.signal_on = signal_on;
    c.substeps = signal_on ? config.substeps : 1;
    c.p_round = config.p();
    c.p_sub = 1.0 - std::pow(1.0 - c.p_round, 1.0 / c.substeps);
    c.p_gate = config.p_gate;
    c.rounds = config.n_rounds();
    c.tau_ec = config.tau_ec;
    c.discard_aborts = config.abort_policy == AbortPolicy::discard_shot;

    if (signal_on) {
      ComplexOperator hsig;
      if (config.coupler) {
        CouplerParams params = *config.coupler;
        if (!std::isnan(config.g_s)) params.g_s = config.g_s;
        hsig = signal_hamiltonian(params, false);
      } else {
        if (std::isnan(config.g_s))
          throw std::invalid_argument("signal requested but g_s is not set");
        hsig = config.g_s * embed(kron(sigma_z(), sigma_z()), {0, 2}, 4);
      }
      Eigen::SelfAdjointEigenSolver<ComplexOperator> es(hsig);
      const double dt = config.tau_ec / c.substeps;
      Eigen::VectorXcd phases(hsig.rows());
      for (Eigen::Index i = 0; i < hsig.rows(); ++i)
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * dt));
      c.u_sub = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    }
    return c;
  }
};

struct ShotEngine {
  const ShotContext& ctx;
  Eigen::VectorXcd psi;  // 32-dim during a correction round
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unif{0.0, 1.0};

  ShotEngine(const ShotContext& c, std::uint64_t seed) : ctx(c), rng(seed) {}

  double draw() { return unif(rng); }

  // Uniformly random non-identity Pauli with probability p_gate.
  void fault(const std::vector<int>& targets) {
    if (ctx.p_gate <= 0.0) return;
    if (draw() >= ctx.p_gate) return;
    const int n_paulis = targets.size() == 1 ? 3 : 15;
    int r = 1 + std::min(n_paulis - 1, static_cast<int>(draw() * n_paulis));
    for (std::size_t t = targets.size(); t-- > 0;) {
      const int digit = r & 3;
      r >>= 2;
      if (digit != 0)
        apply_local_unitary(psi, ctx.pauli[digit - 1], {targets[t]}, kReg);
    }
  }

  void g1(const ComplexOperator& u, int q) {
    apply_local_unitary(psi, u, {q}, kReg);
    fault({q});
  }
  void g2(const ComplexOperator& u, int a, int b) {
    apply_local_unitary(psi, u, {a, b}, kReg);
    fault({a, b});
  }
  void silent1(const ComplexOperator& u, int q) { apply_local_unitary(psi, u, {q}, kReg); }

  int measure(int q) {
    const double p1 = qubit_population(psi, q, 1, kReg);
    const int bit = draw() < p1 ? 1 : 0;
    project_qubit(psi, q, bit, kReg);
    psi /= psi.norm();
    return bit;
  }

  // trace-out-and-replace-with-|0>, unravelled as measure + conditional flip
  void reset(int q) {
    if (measure(q) == 1) silent1(ctx.x, q);
  }
};

// One correction round on the lifted register. Returns false when the shot
// aborted and the discard policy removes it from the ensemble.
bool correction_round(ShotEngine& e) {
  const ShotContext& c = e.ctx;
  e.g2(c.cn, 0, 1);  // pair parities onto the meters
  e.g2(c.cn, 2, 3);
  e.fault({1});  // every measurement carries one single-qubit fault
  e.fault({3});
  const int b1 = e.measure(1);
  const int b2 = e.measure(3);

  if (b1 == 0 && b2 == 0) {
    e.g1(c.ry_xi, kAncilla);
    e.g2(c.cs, kAncilla, 2);
    e.g2(c.cn, 0, kAncilla);
    e.g2(c.csd, kAncilla, 2);
    e.g2(c.cn, 0, kAncilla);
    e.g2(c.cs, 0, 2);
    e.g1(c.h, kAncilla);
    e.fault({kAncilla});
    if (e.measure(kAncilla) == 0) {
      e.g2(c.cn, 0, 2);
      e.g1(c.x, 2);
      e.g2(c.cn, 2, 0);
      e.g1(c.ry_delta2_m, 0);
      e.g2(c.cn, 2, 0);
      e.g1(c.ry_delta2_p, 0);
      e.g1(c.x, 2);
      e.g2(c.cn, 0, 2);
    } else {
      e.silent1(c.x, kAncilla);  // post-measurement reset
    }
    e.g2(c.cn, 0, 1);  // re-expand reps onto the |0> meters
    e.g2(c.cn, 2, 3);
    return true;
  }

  if (b1 != b2) {
    const int side = b1 == 1 ? 12 : 34;
    const int rep = side == 12 ? 2 : 0;
    const int met = side == 12 ? 3 : 1;
    const int other_met = side == 12 ? 1 : 3;
    const int partner = side == 12 ? 0 : 2;

    e.g1(c.x, rep);
    e.g1(c.x, met);
    e.g2(c.cn, rep, met);
    e.g1(c.ry_phi_m, met);
    e.g2(c.cn, rep, met);
    e.g1(c.ry_phi_p, met);
    e.fault({met});  // filter measurement fault
    if (e.measure(met) == 0) {  // filter abort
      return !c.discard_aborts;
    }
    e.g1(c.x, met);
    e.g1(c.x, other_met);
    e.reset(partner);
    e.fault({partner});

    if (side == 12) {
      e.g1(c.h, 0);
      e.g2(c.cn, 0, 1);
      e.g2(c.cn, 1, kAncilla);
      e.g2(c.cn, kAncilla, 2);
      e.g2(c.cn, 2, 3);
      e.g2(c.cn, 1, kAncilla);
    } else {
      e.g1(c.h, 3);
      e.g2(c.cn, 3, 2);
      e.g2(c.cn, 2, kAncilla);
      e.g2(c.cn, kAncilla, 1);
      e.g2(c.cn, 1, 0);
      e.g2(c.cn, kAncilla, 1);
      e.g2(c.cn, 2, kAncilla);
      e.g2(c.cn, 0, 1);
    }
    return true;
  }

  // (1,1): both pairs flagged a decay; nothing recoverable remains
  return true;
}

void damp_qubit16(Eigen::VectorXcd& psi16, int q, double p, ShotEngine& e) {
  const double pop1 = qubit_population(psi16, q, 1, 4);
  ComplexOperator k(2, 2);
  if (e.draw() < p * pop1) {
    k << 0.0, std::sqrt(p), 0.0, 0.0;
  } else {
    k << 1.0, 0.0, 0.0, std::sqrt(1.0 - p);
  }
  apply_local_unitary(psi16, k, {q}, 4);
  psi16 /= psi16.norm();
}

}  // namespace

std::uint64_t shot_seed(std::uint64_t master_seed, std::uint64_t shot_index) {
  // splitmix64 over master + stride * index
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (shot_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void run_trajectory_shots(const ExperimentConfig& config, Complex alpha, Complex beta,
                          bool signal_on, std::uint64_t first, std::uint64_t last,
                          TrajectoryEstimates& est) {
  const ShotContext ctx = ShotContext::make(config, alpha, beta, signal_on);
  const std::size_t rounds = static_cast<std::size_t>(ctx.rounds);
  if (est.sum.size() != 5 * rounds) {
    est.sum.assign(5 * rounds, 0.0);
    est.sum_sq.assign(5 * rounds, 0.0);
    est.counts.assign(rounds, 0.0);
  }

  for (std::uint64_t shot = first; shot < last; ++shot) {
    ShotEngine e(ctx, shot_seed(config.seed, shot));
    Eigen::VectorXcd psi16 = ctx.psi0;

    for (std::size_t r = 0; r < rounds; ++r) {
      for (int s = 0; s < ctx.substeps; ++s) {
        if (ctx.signal_on) psi16 = ctx.u_sub * psi16;
        for (int q = 0; q < 4; ++q) damp_qubit16(psi16, q, ctx.p_sub, e);
      }

      e.psi = Eigen::VectorXcd::Zero(kDim32);
      for (int i = 0; i < kDim16; ++i) e.psi(2 * i) = psi16(i);
      const bool alive = correction_round(e);
      if (!alive) break;  // the abort round itself is discarded too

      // trace out the ancilla: sample it and keep the matching component
      const double pa = qubit_population(e.psi, kAncilla, 1, kReg);
      const int ab = e.draw() < pa ? 1 : 0;
      for (int i = 0; i < kDim16; ++i) psi16(i) = e.psi(2 * i + ab);
      psi16 /= psi16.norm();

      const Complex c0 = ctx.zero_l.dot(psi16);
      const Complex c1 = ctx.one_l.dot(psi16);
      const double p0 = std::norm(c0);
      const double p1 = std::norm(c1);
      const Complex c01 = c0 * std::conj(c1);
      const double v[5] = {std::norm(ctx.psi0.dot(psi16)), p0,
                           2.0 * c01.real(), p1, 2.0 * c01.imag()};
      for (int k = 0; k < 5; ++k) {
        est.sum[5 * r + k] += v[k];
        est.sum_sq[5 * r + k] += v[k] * v[k];
      }
      est.counts[r] += 1.0;
    }
    ++est.shots;
  }
}

CycleOutput run_trajectory(const ExperimentConfig& config, Complex alpha, Complex beta,
                           bool signal_on) {
  const std::uint64_t shots = static_cast<std::uint64_t>(config.n_runs);
  const std::size_t rounds = static_cast<std::size_t>(config.n_rounds());

  // fixed block decomposition; workers only change who computes a block
  std::vector<TrajectoryEstimates> blocks(kBlocks);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const int b = next.fetch_add(1);
      if (b >= kBlocks) return;
      const std::uint64_t first = shots * static_cast<std::uint64_t>(b) / kBlocks;
      const std::uint64_t last = shots * static_cast<std::uint64_t>(b + 1) / kBlocks;
      if (first == last) continue;
      try {
        run_trajectory_shots(config, alpha, beta, signal_on, first, last, blocks[b]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int n_workers = std::min<int>(config.workers, kBlocks);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // reduce in block order: identical result for any worker count
  TrajectoryEstimates total;
  total.sum.assign(5 * rounds, 0.0);
  total.sum_sq.assign(5 * rounds, 0.0);
  total.counts.assign(rounds, 0.0);
  for (const auto& blk : blocks) {
    if (blk.sum.empty()) continue;
    for (std::size_t i = 0; i < total.sum.size(); ++i) {
      total.sum[i] += blk.sum[i];
      total.sum_sq[i] += blk.sum_sq[i];
    }
    for (std::size_t r = 0; r < rounds; ++r) total.counts[r] += blk.counts[r];
    total.shots += blk.shots;
  }

  CycleOutput out;
  out.fidelity.label = "fidelity";
  out.population.label = "population";
  out.x_envelope.label = "x_envelope";
  out.contrast.label = "contrast";
  out.fine.label = "fidelity_pre_correction";

  auto stat = [&](std::size_t r, int k, double& mean, double& se) {
    const double n = total.counts[r];
    if (n <= 0.0) {
      mean = 0.0;
      se = 0.0;
      return;
    }
    mean = total.sum[5 * r + k] / n;
    if (n > 1.0) {
      const double var =
          std::max(0.0, (total.sum_sq[5 * r + k] / n - mean * mean) * n / (n - 1.0));
      se = std::sqrt(var / n);
    } else {
      se = 0.0;
    }
  };

  for (std::size_t r = 0; r < rounds; ++r) {
    const double t = static_cast<double>(r + 1) * config.tau_ec;
    double mean = 0.0, se = 0.0;
    stat(r, 0, mean, se);
    out.fidelity.times.push_back(t);
    out.fidelity.values.push_back(mean);
    out.fidelity.stderrs.push_back(se);
    stat(r, 2, mean, se);
    out.x_envelope.times.push_back(t);
    out.x_envelope.values.push_back(mean);
    out.x_envelope.stderrs.push_back(se);

    // codespace-conditional readout from the ensemble sums, matching the
    // deterministic engine: population S0/(S0+S1), contrast |(z, y)|/(S0+S1).
    // Stderr uses the delta method with cross terms dropped.
    double m0 = 0.0, s0 = 0.0, m1 = 0.0, s1 = 0.0, my = 0.0, sy = 0.0;
    stat(r, 1, m0, s0);
    stat(r, 3, m1, s1);
    stat(r, 4, my, sy);
    const double mass = m0 + m1;
    const double pop = mass > 0.0 ? m0 / mass : 0.5;
    const double se_pop =
        mass > 0.0 ? std::sqrt(m1 * m1 * s0 * s0 + m0 * m0 * s1 * s1) / (mass * mass) : 0.0;
    out.population.times.push_back(t);
    out.population.values.push_back(pop);
    out.population.stderrs.push_back(se_pop);

    const double mz = m0 - m1;
    const double h = std::hypot(mz, my);
    const double contrast = mass > 0.0 ? h / mass : 0.0;
    double se_c = std::max(s0 + s1, sy);
    if (mass > 0.0 && h > 1e-300) {
      const double d0 = (mz / h * mass - h) / (mass * mass);
      const double d1 = (-mz / h * mass - h) / (mass * mass);
      const double dy = my / (h * mass);
      se_c = std::sqrt(d0 * d0 * s0 * s0 + d1 * d1 * s1 * s1 + dy * dy * sy * sy);
    }
    out.contrast.times.push_back(t);
    out.contrast.values.push_back(contrast);
    out.contrast.stderrs.push_back(se_c);
  }
  return out;
}

}  // namespace detail
}  // namespace qecmag
