#include "qecmag/experiments.hpp"

#include "qecmag/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qecmag {

void ExperimentConfig::validate() const {
  if (gamma < 0.0) throw std::invalid_argument("config: gamma must be >= 0");
  if (tau_ec <= 0.0) throw std::invalid_argument("config: tau_ec must be > 0");
  if (total_time < tau_ec) throw std::invalid_argument("config: total_time must be >= tau_ec");
  if (p_gate < 0.0 || p_gate > 1.0) throw std::invalid_argument("config: p_gate must be in [0,1]");
  if (n_runs < 1) throw std::invalid_argument("config: n_runs must be >= 1");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  if (substeps < 1) throw std::invalid_argument("config: substeps must be >= 1");
  if (coupler) coupler->validate();
}

int ExperimentConfig::n_rounds() const {
  return static_cast<int>(std::floor(total_time / tau_ec + 1e-9));
}

double ExperimentConfig::p() const { return -std::expm1(-gamma * tau_ec); }

void TimeSeries::validate() const {
  if (times.size() != values.size())
    throw std::invalid_argument("time series: times/values length mismatch");
  if (!stderrs.empty() && stderrs.size() != values.size())
    throw std::invalid_argument("time series: stderr length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("time series: times must be strictly increasing");
}

namespace {

ComplexOperator signal_operator(const ExperimentConfig& config) {
  if (config.coupler) {
    CouplerParams params = *config.coupler;
    if (!std::isnan(config.g_s)) params.g_s = config.g_s;  // run-level signal wins
    return signal_hamiltonian(params, false);
  }
  if (std::isnan(config.g_s))
    throw std::invalid_argument("signal requested but g_s is not set");
  return config.g_s * embed(kron(sigma_z(), sigma_z()), {0, 2}, 4);
}

// One damping interval on all four data qubits at per-qubit probability p_sub.
void apply_damping(ComplexOperator& rho16, double p_sub) {
  if (p_sub <= 0.0) return;
  ComplexOperator k0(2, 2), k1(2, 2);
  k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - p_sub);
  k1 << 0.0, std::sqrt(p_sub), 0.0, 0.0;
  for (int q = 0; q < 4; ++q) {
    ComplexOperator survive = rho16;
    apply_local_kraus_pair(survive, k0, {q}, 4);
    ComplexOperator decay = rho16;
    apply_local_kraus_pair(decay, k1, {q}, 4);
    rho16 = survive + decay;
  }
}

struct Observables {
  Eigen::VectorXcd psi0;   // initial encoded state
  Eigen::VectorXcd zero_l;
  Eigen::VectorXcd one_l;

  static Observables make(Complex alpha, Complex beta) {
    const CodeSpec& code = CodeSpec::instance();
    Observables o;
    o.psi0 = encode(alpha, beta).amp;
    o.zero_l = code.zero_l.amp;
    o.one_l = code.one_l.amp;
    return o;
  }

  // (fidelity, p0, x_envelope, p1, y) for an unnormalized rho, all relative to
  // the full trace. x_envelope is the logical coherence 2 Re<0L|rho|1L>: on
  // codespace states it equals <Xbar>, but it excludes the small leaked and
  // aborted component that would otherwise pollute long-horizon envelope fits.
  std::array<double, 5> evaluate(const ComplexOperator& rho) const {
    const double tr = rho.trace().real();
    const double inv = tr > 0.0 ? 1.0 / tr : 0.0;
    const double fid = (psi0.adjoint() * rho * psi0).value().real() * inv;
    const double p0 = (zero_l.adjoint() * rho * zero_l).value().real() * inv;
    const double p1 = (one_l.adjoint() * rho * one_l).value().real() * inv;
    const Complex c01 = (zero_l.adjoint() * rho * one_l).value() * inv;
    return {fid, p0, 2.0 * c01.real(), p1, 2.0 * c01.imag()};
  }
};

// Codespace-conditional logical readout: the population and fringe contrast
// are post-selected on the herald (the state still being inside the
// codespace), matching how a Ramsey readout discards aborted shots. Raw
// populations would pick up a slow bias from the retained abort component.
inline double conditional_population(double p0, double p1) {
  const double mass = p0 + p1;
  return mass > 0.0 ? p0 / mass : 0.5;
}

inline double conditional_contrast(double p0, double p1, double y) {
  const double mass = p0 + p1;
  const double z = p0 - p1;
  return mass > 0.0 ? std::sqrt(z * z + y * y) / mass : 0.0;
}

CycleOutput run_deterministic(const ExperimentConfig& config, Complex alpha, Complex beta,
                              bool signal_on) {
  const Observables obs = Observables::make(alpha, beta);
  ComplexOperator rho = obs.psi0 * obs.psi0.adjoint();

  const int substeps = signal_on ? config.substeps : 1;
  const double p_round = config.p();
  const double p_sub = 1.0 - std::pow(1.0 - p_round, 1.0 / substeps);

  ComplexOperator u_sub;
  if (signal_on) {
    const ComplexOperator h = signal_operator(config);
    Eigen::SelfAdjointEigenSolver<ComplexOperator> es(h);
    const double dt = config.tau_ec / substeps;
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * dt));
    u_sub = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }

  const int rounds = config.n_rounds();
  CycleOutput out;
  out.fidelity.label = "fidelity";
  out.population.label = "population";
  out.x_envelope.label = "x_envelope";
  out.contrast.label = "contrast";
  out.fine.label = "fidelity_pre_correction";

  RoundOptions opt;
  opt.p = p_round;
  opt.p_gate = config.p_gate;
  opt.discard_aborts = config.abort_policy == AbortPolicy::discard_shot;

  for (int r = 1; r <= rounds; ++r) {
    for (int s = 0; s < substeps; ++s) {
      if (signal_on) rho = u_sub * rho * u_sub.adjoint();
      apply_damping(rho, p_sub);
    }
    if (config.fine_sampling) {
      const auto pre = obs.evaluate(rho);
      out.fine.times.push_back(r * config.tau_ec);
      out.fine.values.push_back(pre[0]);
    }
    CorrectionStats stats;
    correction_round_inplace(rho, opt, &stats);
    out.last_round_stats = stats;

    const auto v = obs.evaluate(rho);
    const double t = r * config.tau_ec;
    out.fidelity.times.push_back(t);
    out.fidelity.values.push_back(v[0]);
    out.population.times.push_back(t);
    out.population.values.push_back(conditional_population(v[1], v[3]));
    out.x_envelope.times.push_back(t);
    out.x_envelope.values.push_back(v[2]);
    out.contrast.times.push_back(t);
    out.contrast.values.push_back(conditional_contrast(v[1], v[3], v[4]));
  }
  return out;
}

}  // namespace

CycleOutput run_cycles_full(const ExperimentConfig& config, Complex alpha, Complex beta,
                            bool signal_on) {
  config.validate();
  const double norm = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("run_cycles: logical amplitudes must be normalized");
  if (config.mode == RunMode::deterministic)
    return run_deterministic(config, alpha, beta, signal_on);
  return detail::run_trajectory(config, alpha, beta, signal_on);
}

TimeSeries run_cycles(const ExperimentConfig& config, Complex alpha, Complex beta,
                      bool signal_on) {
  CycleOutput out = run_cycles_full(config, alpha, beta, signal_on);
  return signal_on ? out.population : out.fidelity;
}

TimeSeries unencoded_reference(double gamma, const std::vector<double>& times) {
  if (gamma < 0.0) throw std::invalid_argument("unencoded_reference: gamma must be >= 0");
  TimeSeries s;
  s.label = "unencoded_fidelity";
  s.times = times;
  s.values.reserve(times.size());
  for (double t : times) s.values.push_back(0.5 * (1.0 + std::exp(-0.5 * gamma * t)));
  s.validate();
  return s;
}

TimeSeries ramsey(const ExperimentConfig& config) {
  return run_cycles(config, Complex(1.0, 0.0), Complex(0.0, 0.0), true);
}

FiniteTauResult finite_tau_dephasing(const ExperimentConfig& base,
                                     const std::vector<double>& tau_grid) {
  if (tau_grid.empty()) throw std::invalid_argument("finite_tau_dephasing: empty tau grid");
  FiniteTauResult out;
  out.rates.label = "extra_envelope_rate";
  for (double tau : tau_grid) {
    ExperimentConfig cfg = base;
    cfg.tau_ec = tau;
    cfg.substeps = std::max(base.substeps, 16);
    if (cfg.g_s * tau > 0.5)
      out.warnings.push_back("g_s * tau_ec not small at tau_ec = " + std::to_string(tau));

    CycleOutput on = run_cycles_full(cfg, Complex(1.0, 0.0), Complex(0.0, 0.0), true);
    // Baseline: p_gate = 0, signal off. The correction circuit damps the two
    // quadratures of the logical coherence at slightly different rates and the
    // precessing state samples their average, so the baseline uses a
    // phase-balanced superposition; |0L> alone would undershoot it.
    ExperimentConfig off_cfg = cfg;
    off_cfg.p_gate = 0.0;
    const Complex beta_off = std::polar(M_SQRT1_2, M_PI / 4.0);
    CycleOutput off = run_cycles_full(off_cfg, Complex(M_SQRT1_2, 0.0), beta_off, false);
    const RateFit fit_on = fit_gamma_eff(on.contrast, CoherenceTransform::direct);
    const RateFit fit_off = fit_gamma_eff(off.contrast, CoherenceTransform::direct);
    out.rates.times.push_back(tau);
    out.rates.values.push_back(fit_on.gamma_eff - fit_off.gamma_eff);
    out.baseline_rates.push_back(fit_off.gamma_eff);
    out.signal_rates.push_back(fit_on.gamma_eff);
  }
  out.rates.validate();
  return out;
}

ThresholdMap threshold_map(const ExperimentConfig& base, const std::vector<double>& tau_grid,
                           const std::vector<double>& p_grid) {
  if (tau_grid.empty() || p_grid.empty())
    throw std::invalid_argument("threshold_map: empty grid");
  ThresholdMap map;
  map.tau_grid = tau_grid;
  map.p_grid = p_grid;

  for (double tau : tau_grid) {
    for (double pg : p_grid) {
      ExperimentConfig cfg = base;
      cfg.tau_ec = tau;
      cfg.p_gate = pg;
      // model-guided horizon: enough decay for the fit, capped for runtime
      const double model_rate =
          4.0 * base.gamma * base.gamma * tau + 8.4 * pg / tau + 1e-12;
      const int rounds =
          std::clamp(static_cast<int>(std::ceil(1.5 / (model_rate * tau))), 14, 240);
      cfg.total_time = rounds * tau;

      ThresholdCell cell;
      cell.tau_ec = tau;
      cell.p_gate = pg;
      try {
        CycleOutput run = run_cycles_full(cfg, Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0),
                                          false);
        const RateFit fit = fit_gamma_eff(run.x_envelope, CoherenceTransform::direct);
        cell.gamma_eff = fit.gamma_eff;
        cell.better = fit.gamma_eff < 0.5 * base.gamma;
      } catch (const fit_error&) {
        cell.fit_failed = true;
      }
      map.cells.push_back(cell);
    }
  }

  // boundary p*(tau): first better->worse crossing, log-interpolated in p
  const std::size_t np = p_grid.size();
  for (std::size_t ti = 0; ti < tau_grid.size(); ++ti) {
    double boundary = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t pi = 0; pi + 1 < np; ++pi) {
      const ThresholdCell& lo = map.cells[ti * np + pi];
      const ThresholdCell& hi = map.cells[ti * np + pi + 1];
      if (lo.fit_failed || hi.fit_failed) continue;
      if (lo.better && !hi.better && lo.gamma_eff > 0.0 && hi.gamma_eff > 0.0) {
        const double target = std::log(0.5 * base.gamma);
        const double y0 = std::log(lo.gamma_eff), y1 = std::log(hi.gamma_eff);
        const double x0 = std::log(std::max(lo.p_gate, 1e-12));
        const double x1 = std::log(std::max(hi.p_gate, 1e-12));
        const double frac = y1 != y0 ? (target - y0) / (y1 - y0) : 0.5;
        boundary = std::exp(x0 + frac * (x1 - x0));
        break;
      }
    }
    map.boundary.push_back(boundary);
  }
  return map;
}

}  // namespace qecmag
