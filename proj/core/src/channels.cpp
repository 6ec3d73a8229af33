#include "qecmag/channels.hpp"

#include <cmath>

namespace qecmag {

void KrausChannel::validate(double tol) const {
  if (operators.empty()) throw std::invalid_argument("channel has no operators");
  Eigen::Index dim = operators.front().rows();
  ComplexOperator sum = ComplexOperator::Zero(dim, dim);
  for (const auto& k : operators) {
    if (k.rows() != dim || k.cols() != dim) throw std::invalid_argument("Kraus dim mismatch");
    if (!all_finite(k)) throw std::invalid_argument("Kraus operator has non-finite entries");
    sum += k.adjoint() * k;
  }
  ComplexOperator defect = ComplexOperator::Identity(dim, dim) - sum;
  if (trace_preserving) {
    if (defect.cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("channel labeled trace-preserving but sum K^dag K != I");
    }
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexOperator> es(defect, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
      throw std::invalid_argument("selective channel with sum K^dag K > I");
    }
  }
}

double DampingParams::p() const {
  return 1.0 - std::exp(-gamma * tau_ec);
}

void DampingParams::validate() const {
  if (gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  if (tau_ec <= 0) throw std::invalid_argument("tau_ec must be > 0");
}

KrausChannel amplitude_damping_p(double p, int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("qubit count must be 1..5");
  if (p < 0 || p >= 1.0 + 1e-15) throw std::invalid_argument("p must be in [0,1]");
  p = std::min(p, 1.0);

  ComplexOperator k0 = ComplexOperator::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  ComplexOperator k1 = std::sqrt(p) * sigma_minus();

  KrausChannel ch;
  ch.label = "amplitude_damping(p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")";
  ch.kind = ChannelKind::amplitude_damping;
  ch.n_qubits = n;
  if (p == 0.0) {  // trivial channel: keep the single identity operator
    ch.operators.push_back(ComplexOperator::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n));
    return ch;
  }
  Eigen::Index count = Eigen::Index{1} << n;
  ch.operators.reserve(count);
  for (Eigen::Index s = 0; s < count; ++s) {
    ComplexOperator op = ComplexOperator::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      bool decayed = (s >> (n - 1 - q)) & 1;
      op = kron(op, decayed ? k1 : k0);
    }
    ch.operators.push_back(std::move(op));
  }
  return ch;
}

KrausChannel amplitude_damping(const DampingParams& params, int n) {
  params.validate();
  return amplitude_damping_p(params.p(), n);
}

KrausChannel first_order_operators(const KrausChannel& channel) {
  if (channel.kind != ChannelKind::amplitude_damping || channel.n_qubits != 4 ||
      channel.operators.size() != 16) {
    throw std::invalid_argument("first_order_operators requires a 4-qubit damping channel");
  }
  KrausChannel out;
  out.label = channel.label + " [weight<=1]";
  out.trace_preserving = false;
  out.kind = ChannelKind::amplitude_damping;
  out.n_qubits = 4;
  for (Eigen::Index s : {0, 8, 4, 2, 1}) {  // K_0000, K_1000, K_0100, K_0010, K_0001
    out.operators.push_back(channel.operators[s]);
  }
  return out;
}

KrausChannel depolarizing(double p_gate, const std::vector<int>& targets, int n) {
  if (p_gate < 0 || p_gate > 1) throw std::invalid_argument("p_gate must be in [0,1]");
  if (targets.size() != 1 && targets.size() != 2) {
    throw std::invalid_argument("depolarizing acts on 1 or 2 qubits");
  }
  Eigen::Index dim = Eigen::Index{1} << n;

  std::vector<ComplexOperator> paulis = {identity_op(2), sigma_x(), sigma_y(), sigma_z()};
  KrausChannel ch;
  ch.label = "depolarizing(p=" + std::to_string(p_gate) + ")";
  ch.kind = ChannelKind::depolarizing;
  ch.n_qubits = n;
  ch.operators.push_back(std::sqrt(1.0 - p_gate) * ComplexOperator::Identity(dim, dim));
  if (targets.size() == 1) {
    double w = std::sqrt(p_gate / 3.0);
    for (int a = 1; a < 4; ++a) ch.operators.push_back(w * embed(paulis[a], targets, n));
  } else {
    double w = std::sqrt(p_gate / 15.0);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        if (a == 0 && b == 0) continue;
        ch.operators.push_back(w * embed(kron(paulis[a], paulis[b]), targets, n));
      }
    }
  }
  return ch;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.operators.empty()) throw std::invalid_argument("channel has no operators");
  if (channel.operators.front().rows() != rho.op.rows()) {
    throw std::invalid_argument("channel/state dimension mismatch");
  }
  ComplexOperator out = ComplexOperator::Zero(rho.op.rows(), rho.op.cols());
  for (const auto& k : channel.operators) out += k * rho.op * k.adjoint();
  bool unnorm = rho.unnormalized_branch || !channel.trace_preserving;
  return DensityMatrix::unchecked(std::move(out), unnorm);
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (first.operators.front().rows() != second.operators.front().rows()) {
    throw std::invalid_argument("composition dimension mismatch");
  }
  KrausChannel out;
  out.label = second.label + " o " + first.label;
  out.trace_preserving = first.trace_preserving && second.trace_preserving;
  out.n_qubits = first.n_qubits;
  for (const auto& k2 : second.operators) {
    for (const auto& k1 : first.operators) out.operators.push_back(k2 * k1);
  }
  return out;
}

ComplexOperator superoperator_matrix(const KrausChannel& channel) {
  Eigen::Index d = channel.operators.front().rows();
  ComplexOperator s = ComplexOperator::Zero(d * d, d * d);
  for (const auto& k : channel.operators) {
    // vec(K rho K^dag) = conj(K) (x) K vec(rho) with column-major vec.
    s += kron(k.conjugate(), k);
  }
  return s;
}

}  // namespace qecmag
