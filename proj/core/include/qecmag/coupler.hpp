#pragma once

#include "qecmag/qstate.hpp"

#include <array>

// Tunable-coupler physics. Unit convention: couplings and detunings are
// angular frequencies in rad/us ("angular MHz"), times in us, hbar = 1.
// The coupler links data qubits 0 and 2 (main-text labels 1 and 3).

namespace qecmag {

inline constexpr double flux_quantum_wb = 2.067833848e-15;  // Wb

struct GammaRates {
  double down = 0.0;  // gamma_down
  double zero = 0.0;  // gamma_0 (dephasing-type)
  double up = 0.0;    // gamma_up
};

struct CouplerParams {
  double g_prime = 0.0;       // transverse coupling g'
  double delta = 0.0;         // qubit detuning
  double alpha = 0.0;         // anharmonicity
  double g_s = 0.0;           // diagonal (signal) coupling
  double dgs_dphi = 0.0;      // |dg_s/dPhi_signal|, MHz per flux quantum
  double area_um2 = 0.0;      // coupler loop area, um^2
  GammaRates gamma_rates;
  double hybridization_ratio = 10.0;  // required |alpha +- delta| / g' margin

  void validate() const;
};

struct DressedAnalysis {
  double eta = 0.0;                 // mixing parameter, in [0,1)
  std::array<double, 2> energies;   // (lambda_plus, lambda_minus), lambda_plus <= lambda_minus
  double zz_correction = 0.0;       // g'^2/delta single-qubit term coefficient
  double dephasing_weight = 0.0;    // eta^2
  double excitation_weight = 0.0;   // eta^4
};

// Dispersive ZZ strength from the level-repulsion formula
// 4 g'^2 alpha / (alpha^2 - delta^2); refuses near the hybridization poles.
double effective_zz(const CouplerParams& params);

// Exact diagonalization of (delta/2) sigma_z + g' sigma_x and the derived
// mixing parameter eta = g' / (sqrt((delta/2)^2 + g'^2) + delta/2).
DressedAnalysis dressed_states(const CouplerParams& params);

// (eta^2 gamma_0, eta^4 gamma_up) from the dressed-frame master equation.
std::array<double, 2> induced_dephasing_rate(const DressedAnalysis& analysis,
                                             const GammaRates& rates);

// H = g_s Z0 Z2 (+ (g'^2/delta)(Z0 - Z2) when with_correction), 16-dim.
ComplexOperator signal_hamiltonian(const CouplerParams& params, bool with_correction = false);

// |dg_s/dB| in MHz per tesla: dgs_dphi * area / Phi0. The field argument is
// the linearization point; the leading-order model is field-independent.
double flux_responsivity(const CouplerParams& params, double field_tesla = 0.0);

}  // namespace qecmag
