#pragma once

#include "qecmag/qstate.hpp"

#include <string>
#include <vector>

namespace qecmag {

enum class ChannelKind { generic, amplitude_damping, depolarizing };

struct KrausChannel {
  std::vector<ComplexOperator> operators;
  std::string label;
  bool trace_preserving = true;  // false: selective, sum K^dag K <= I
  ChannelKind kind = ChannelKind::generic;
  int n_qubits = 0;

  // Checks sum K^dag K = I (trace-preserving) or <= I (selective).
  void validate(double tol = default_property_tol) const;
};

struct DampingParams {
  double gamma = 0.0;   // decay rate, 1/time
  double tau_ec = 0.0;  // correction interval, time

  double p() const;  // 1 - exp(-gamma * tau_ec)
  void validate() const;
};

// Per-qubit decay probability p directly (the internal workhorse).
KrausChannel amplitude_damping_p(double p, int n);

// All 2^n product Kraus operators K_s built from the single-qubit pair
// K0 = |0><0| + sqrt(1-p)|1><1|, K1 = sqrt(p) sigma_minus, p = 1-exp(-gamma tau_ec).
// Operator order: s runs 0..2^n-1, bit (n-1-q) of s marks decay on qubit q,
// so s's binary digits read left to right follow the ket labels.
KrausChannel amplitude_damping(const DampingParams& params, int n);

// The 5 operators of Hamming weight <= 1 from a 4-qubit damping channel;
// selective (trace-decreasing). Requires a channel built by amplitude_damping
// with n = 4.
KrausChannel first_order_operators(const KrausChannel& channel);

// Depolarizing gate noise: identity with probability 1-p_gate, else a
// uniformly chosen non-identity Pauli on the targets (3 or 15 choices).
KrausChannel depolarizing(double p_gate, const std::vector<int>& targets, int n);

// Sum_K K rho K^dag. Output tagged unnormalized for selective channels.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

// Sequential composition: first `first`, then `second`.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

// Column-major superoperator matrix, vec(K rho K^dag) = S vec(rho);
// used for channel-equality tests.
ComplexOperator superoperator_matrix(const KrausChannel& channel);

}  // namespace qecmag
