#include "qecmag/coupler.hpp"

#include <cmath>
#include <stdexcept>

namespace qecmag {

void CouplerParams::validate() const {
  if (g_prime < 0.0) throw std::invalid_argument("coupler: g_prime must be >= 0");
  if (area_um2 < 0.0) throw std::invalid_argument("coupler: area must be >= 0");
  if (gamma_rates.down < 0.0 || gamma_rates.zero < 0.0 || gamma_rates.up < 0.0)
    throw std::invalid_argument("coupler: gamma rates must be >= 0");
  if (hybridization_ratio <= 0.0)
    throw std::invalid_argument("coupler: hybridization_ratio must be > 0");
}

double effective_zz(const CouplerParams& params) {
  params.validate();
  if (params.g_prime == 0.0) return 0.0;
  const double margin = params.hybridization_ratio * params.g_prime;
  if (std::abs(params.alpha + params.delta) <= margin ||
      std::abs(params.alpha - params.delta) <= margin)
    throw std::domain_error(
        "effective_zz: |alpha +- delta| too close to g'; strong hybridization regime");
  const double g2 = 2.0 * params.g_prime * params.g_prime;  // (sqrt(2) g')^2
  return g2 / (params.alpha + params.delta) + g2 / (params.alpha - params.delta);
}

DressedAnalysis dressed_states(const CouplerParams& params) {
  params.validate();
  if (params.delta < 0.0) throw std::invalid_argument("dressed_states: delta must be >= 0");
  const double half = 0.5 * params.delta;
  const double root = std::hypot(half, params.g_prime);
  DressedAnalysis out;
  out.energies = {-root, root};  // exact eigenvalues of (delta/2) Z + g' X
  out.eta = root + half > 0.0 ? params.g_prime / (root + half) : 0.0;
  out.zz_correction =
      params.delta != 0.0 ? params.g_prime * params.g_prime / params.delta : 0.0;
  out.dephasing_weight = out.eta * out.eta;
  out.excitation_weight = out.dephasing_weight * out.dephasing_weight;
  return out;
}

std::array<double, 2> induced_dephasing_rate(const DressedAnalysis& analysis,
                                             const GammaRates& rates) {
  if (rates.down < 0.0 || rates.zero < 0.0 || rates.up < 0.0)
    throw std::invalid_argument("induced_dephasing_rate: rates must be >= 0");
  return {analysis.dephasing_weight * rates.zero, analysis.excitation_weight * rates.up};
}

ComplexOperator signal_hamiltonian(const CouplerParams& params, bool with_correction) {
  params.validate();
  const ComplexOperator sz = sigma_z();
  ComplexOperator h = params.g_s * embed(kron(sz, sz), {0, 2}, 4);
  if (with_correction && params.delta != 0.0) {
    const double c = params.g_prime * params.g_prime / params.delta;
    h += c * (embed(sz, {0}, 4) - embed(sz, {2}, 4));
  }
  return h;
}

double flux_responsivity(const CouplerParams& params, double /*field_tesla*/) {
  params.validate();
  if (params.area_um2 <= 0.0)
    throw std::invalid_argument("flux_responsivity: area must be > 0");
  const double area_m2 = params.area_um2 * 1e-12;
  return params.dgs_dphi * area_m2 / flux_quantum_wb;
}

}  // namespace qecmag
