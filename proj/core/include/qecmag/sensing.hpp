#pragma once

#include "qecmag/circuits.hpp"

// Sensitivity arithmetic and physical timing of the correction schedules.

namespace qecmag {

struct SensitivityInputs {
  double gamma_eff = 0.0;     // 1/s
  double responsivity = 0.0;  // |dg_s/dB|, MHz/T (angular convention)
  double total_time = 0.0;    // s

  void validate() const;
};

struct SensitivityResult {
  double delta_b = 0.0;               // T Hz^{1/2}
  double delta_b_h_normalized = 0.0;  // responsivity read as cyclic frequency
  bool infinite = false;              // zero responsivity
};

// delta_B = (1/|dg_s/dB|) sqrt(2 e Gamma_eff / T), e = Euler's number.
SensitivityResult sensitivity(const SensitivityInputs& inputs);

// Shot-noise-limited resolution after interrogation time t at the fringe
// quadrature point: deltaB(t) = e^{Gamma t} / (2 R sqrt(t T)).
double ramsey_resolution(double t, double gamma_eff, double responsivity, double total_time);

struct OptimalTime {
  double t_star = 0.0;          // 1/(2 Gamma_eff)
  double t_star_numeric = 0.0;  // grid argmin of ramsey_resolution
};

OptimalTime optimal_time(double gamma_eff);

struct TimingModel {
  double t_cphase_ns = 40.0;
  double t_measurement_ns = 200.0;
  double swap_overhead = 3.0;  // CPhase equivalents per SWAP
  double single_qubit_ns = 10.0;

  void validate() const;
};

struct ScheduleCost {
  double duration_us = 0.0;
  int two_qubit_gates = 0;  // SWAPs counted at swap_overhead equivalents
  int one_qubit_gates = 0;
  int measurements = 0;
  int swaps = 0;
};

ScheduleCost schedule_cost(const CircuitSchedule& circuit, const TimingModel& timing);
double correction_duration(const CircuitSchedule& circuit, const TimingModel& timing);

}  // namespace qecmag
