#include "qecmag/sensing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qecmag {

void SensitivityInputs::validate() const {
  if (gamma_eff <= 0.0) throw std::invalid_argument("sensitivity: gamma_eff must be > 0");
  if (responsivity < 0.0) throw std::invalid_argument("sensitivity: responsivity must be >= 0");
  if (total_time <= 0.0) throw std::invalid_argument("sensitivity: total_time must be > 0");
}

SensitivityResult sensitivity(const SensitivityInputs& inputs) {
  inputs.validate();
  SensitivityResult out;
  const double noise = std::sqrt(2.0 * M_E * inputs.gamma_eff / inputs.total_time);
  if (inputs.responsivity == 0.0) {
    out.infinite = true;
    out.delta_b = std::numeric_limits<double>::infinity();
    out.delta_b_h_normalized = out.delta_b;
    return out;
  }
  const double responsivity_si = inputs.responsivity * 1e6;  // rad/s per T
  out.delta_b = noise / responsivity_si;
  out.delta_b_h_normalized = noise / (responsivity_si / (2.0 * M_PI));
  return out;
}

double ramsey_resolution(double t, double gamma_eff, double responsivity, double total_time) {
  if (t <= 0.0) throw std::invalid_argument("ramsey_resolution: t must be > 0");
  if (responsivity <= 0.0 || total_time <= 0.0)
    throw std::invalid_argument("ramsey_resolution: responsivity and total_time must be > 0");
  const double responsivity_si = responsivity * 1e6;
  return std::exp(gamma_eff * t) / (2.0 * responsivity_si * std::sqrt(t * total_time));
}

OptimalTime optimal_time(double gamma_eff) {
  if (gamma_eff <= 0.0) throw std::invalid_argument("optimal_time: gamma_eff must be > 0");
  OptimalTime out;
  out.t_star = 1.0 / (2.0 * gamma_eff);
  // grid argmin of e^{Gamma t}/sqrt(t); responsivity/total_time scale out
  const int n = 10000;
  const double lo = std::log(0.01 / gamma_eff);
  const double hi = std::log(10.0 / gamma_eff);
  double best_t = out.t_star, best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double t = std::exp(lo + (hi - lo) * i / n);
    const double f = std::exp(gamma_eff * t) / std::sqrt(t);
    if (f < best_f) {
      best_f = f;
      best_t = t;
    }
  }
  out.t_star_numeric = best_t;
  return out;
}

void TimingModel::validate() const {
  if (t_cphase_ns < 0.0 || t_measurement_ns < 0.0 || swap_overhead < 0.0 ||
      single_qubit_ns < 0.0)
    throw std::invalid_argument("timing model: all entries must be >= 0");
}

ScheduleCost schedule_cost(const CircuitSchedule& circuit, const TimingModel& timing) {
  timing.validate();
  ScheduleCost cost;
  double ns = 0.0;
  for (const ScheduledOp& op : circuit.ops) {
    switch (op.kind) {
      case ScheduledKind::one_qubit:
        ++cost.one_qubit_gates;
        ns += timing.single_qubit_ns;
        break;
      case ScheduledKind::two_qubit:
        ++cost.two_qubit_gates;
        ns += timing.t_cphase_ns;
        break;
      case ScheduledKind::swap:
        ++cost.swaps;
        cost.two_qubit_gates += static_cast<int>(std::lround(timing.swap_overhead));
        ns += timing.swap_overhead * timing.t_cphase_ns;
        break;
      case ScheduledKind::measurement:
        ++cost.measurements;
        ns += timing.t_measurement_ns;
        break;
    }
  }
  cost.duration_us = ns * 1e-3;
  return cost;
}

double correction_duration(const CircuitSchedule& circuit, const TimingModel& timing) {
  return schedule_cost(circuit, timing).duration_us;
}

}  // namespace qecmag
