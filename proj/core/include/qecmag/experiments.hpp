#pragma once

#include "qecmag/code.hpp"
#include "qecmag/coupler.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

// Protocol harness: repeated evolve -> damp -> correct cycles and the fits
// built on top of them.

namespace qecmag {

enum class RunMode : std::uint8_t { deterministic, trajectory };
enum class AbortPolicy : std::uint8_t { continue_uncorrected, discard_shot };

// Sentinel for "no signal coupling configured"; an explicit g_s = 0 is valid.
inline constexpr double kUnsetSignal = std::numeric_limits<double>::quiet_NaN();

struct ExperimentConfig {
  double gamma = 1.0;      // relaxation rate, 1/us
  double tau_ec = 0.05;    // correction interval, us
  double p_gate = 0.0;
  double g_s = kUnsetSignal;  // signal coupling, rad/us; NaN until set
  std::optional<CouplerParams> coupler;
  int n_runs = 1;
  double total_time = 1.0;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::deterministic;
  AbortPolicy abort_policy = AbortPolicy::continue_uncorrected;
  int workers = 1;
  int substeps = 1;  // damping/evolution interleaving within one interval
  bool fine_sampling = false;

  void validate() const;
  int n_rounds() const;
  double p() const;  // 1 - exp(-gamma tau_ec)
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> stderrs;  // filled in trajectory mode
  std::string label;

  void validate() const;
};

struct fit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RateFit {
  double gamma_eff = 0.0;
  std::array<double, 2> ci{0.0, 0.0};
  std::array<double, 2> window{0.0, 0.0};  // time range actually fitted
  double residual = 0.0;                   // rms log residual
  int points_used = 0;
};

// Everything a single run produces; run_cycles picks fidelity when the signal
// is off and population when it is on.
struct CycleOutput {
  TimeSeries fidelity;    // overlap with the initial encoded state
  TimeSeries population;  // overlap with |0L>
  TimeSeries x_envelope;  // logical coherence 2 Re<0L|rho|1L> (= <Xbar> on the codespace)
  TimeSeries contrast;    // codespace fringe envelope (transverse Bloch length)
  TimeSeries fine;        // within-round samples (deterministic + fine_sampling)
  CorrectionStats last_round_stats;  // filled in deterministic mode only
};

CycleOutput run_cycles_full(const ExperimentConfig& config, Complex alpha, Complex beta,
                            bool signal_on);

TimeSeries run_cycles(const ExperimentConfig& config, Complex alpha, Complex beta,
                      bool signal_on);

// F(t) = (1 + e^{-gamma t/2})/2 for a damped unencoded |+>.
TimeSeries unencoded_reference(double gamma, const std::vector<double>& times);

enum class CoherenceTransform : std::uint8_t {
  auto_from_label,   // "fidelity*" -> two_f_minus_one, otherwise direct
  two_f_minus_one,   // coherence = 2F - 1
  direct,            // values already an envelope/coherence
};

// Least-squares exponential-rate fit on the log envelope. Window drops the
// first two rounds and stops at coherence 0.1; needs >= 10 usable points.
RateFit fit_gamma_eff(const TimeSeries& series,
                      CoherenceTransform transform = CoherenceTransform::auto_from_label);

struct XiSweepPoint {
  double tau_ec = 0.0;
  double p_gate = 0.0;
  double gamma_eff = 0.0;
};

struct XiFit {
  double xi = 0.0;
  std::array<double, 2> ci{0.0, 0.0};
  double intercept = 0.0;
  double residual = 0.0;
  std::string warning;  // set on structured residuals
};

// Fits Gamma_eff - 4 gamma^2 tau_ec against p_gate/tau_ec.
XiFit fit_xi(const std::vector<XiSweepPoint>& sweep, double gamma);

// Population series of a Ramsey run: initial |0L>, signal on.
TimeSeries ramsey(const ExperimentConfig& config);

struct FiniteTauResult {
  TimeSeries rates;  // times = tau_ec grid, values = extra envelope rate
  std::vector<double> baseline_rates;
  std::vector<double> signal_rates;
  std::vector<std::string> warnings;
};

// Extra envelope decay caused by precession within a finite correction
// interval, beyond the p_gate = 0 signal-off baseline at the same tau_ec.
FiniteTauResult finite_tau_dephasing(const ExperimentConfig& base,
                                     const std::vector<double>& tau_grid);

struct ThresholdCell {
  double tau_ec = 0.0;
  double p_gate = 0.0;
  double gamma_eff = 0.0;
  bool better = false;  // gamma_eff < gamma/2
  bool fit_failed = false;
};

struct ThresholdMap {
  std::vector<double> tau_grid;
  std::vector<double> p_grid;
  std::vector<ThresholdCell> cells;  // row-major over (tau, p)
  std::vector<double> boundary;      // p*(tau), log-interpolated; NaN if outside grid
};

ThresholdMap threshold_map(const ExperimentConfig& base, const std::vector<double>& tau_grid,
                           const std::vector<double>& p_grid);

// --- internals shared with the trajectory engine ----------------------------

namespace detail {

// Deterministic per-shot stream seeding (splitmix64 over the master seed).
std::uint64_t shot_seed(std::uint64_t master_seed, std::uint64_t shot_index);

struct TrajectoryEstimates {
  // per-round sums over live shots: fidelity, p0, x_envelope, p1, y
  std::vector<double> sum;     // 5 * n_rounds
  std::vector<double> sum_sq;  // 5 * n_rounds (for stderr of linear estimators)
  std::vector<double> counts;  // live shots per round (discard policy shrinks it)
  std::uint64_t shots = 0;
};

// Runs [first, last) shots of the trajectory ensemble, accumulating into est.
void run_trajectory_shots(const ExperimentConfig& config, Complex alpha, Complex beta,
                          bool signal_on, std::uint64_t first, std::uint64_t last,
                          TrajectoryEstimates& est);

CycleOutput run_trajectory(const ExperimentConfig& config, Complex alpha, Complex beta,
                           bool signal_on);

}  // namespace detail

}  // namespace qecmag
