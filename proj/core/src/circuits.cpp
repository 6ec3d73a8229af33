#include "qecmag/circuits.hpp"

#include <cmath>

namespace qecmag {

ComplexOperator hadamard() {
  ComplexOperator m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

ComplexOperator ry_gate(double theta) {
  ComplexOperator m(2, 2);
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}

ComplexOperator rz_gate(double theta) {
  ComplexOperator m = ComplexOperator::Zero(2, 2);
  m(0, 0) = std::exp(Complex(0, -theta / 2));
  m(1, 1) = std::exp(Complex(0, theta / 2));
  return m;
}

ComplexOperator cnot_gate() {
  ComplexOperator m = ComplexOperator::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

ComplexOperator cz_gate() {
  return cphase_gate(M_PI);
}

ComplexOperator cphase_gate(double phi) {
  ComplexOperator m = ComplexOperator::Identity(4, 4);
  m(3, 3) = std::exp(Complex(0, phi));
  return m;
}

ComplexOperator cs_gate() {
  return cphase_gate(M_PI / 2);
}

ComplexOperator cs_dagger_gate() {
  return cphase_gate(-M_PI / 2);
}

namespace {

// Index helpers shared by the local-application kernels. For targets
// (t0,...,t_{k-1}) the small-operator index has t0 as its most significant
// bit, matching embed().
struct LocalIndexer {
  Eigen::Index dim;
  Eigen::Index block;            // 2^k
  std::vector<Eigen::Index> sub; // full-register index offset for each small index
  std::vector<Eigen::Index> rest;

  LocalIndexer(const std::vector<int>& targets, int n) {
    dim = Eigen::Index{1} << n;
    int k = static_cast<int>(targets.size());
    block = Eigen::Index{1} << k;
    Eigen::Index target_mask = 0;
    std::vector<Eigen::Index> bitpos(k);
    for (int j = 0; j < k; ++j) {
      if (targets[j] < 0 || targets[j] >= n) throw std::invalid_argument("target out of range");
      bitpos[j] = Eigen::Index{1} << (n - 1 - targets[j]);
      if (target_mask & bitpos[j]) throw std::invalid_argument("duplicate target qubit");
      target_mask |= bitpos[j];
    }
    sub.resize(block);
    for (Eigen::Index s = 0; s < block; ++s) {
      Eigen::Index idx = 0;
      for (int j = 0; j < k; ++j) {
        if (s & (Eigen::Index{1} << (k - 1 - j))) idx |= bitpos[j];
      }
      sub[s] = idx;
    }
    rest.reserve(dim / block);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & target_mask) == 0) rest.push_back(i);
    }
  }
};

}  // namespace

void apply_local_unitary(ComplexOperator& m, const ComplexOperator& u,
                         const std::vector<int>& targets, int n) {
  apply_local_kraus_pair(m, u, targets, n);
}

void apply_local_kraus_pair(ComplexOperator& m, const ComplexOperator& k,
                            const std::vector<int>& targets, int n) {
  LocalIndexer ix(targets, n);
  if (k.rows() != ix.block || k.cols() != ix.block) {
    throw std::invalid_argument("local operator dimension mismatch");
  }
  if (m.rows() != ix.dim || m.cols() != ix.dim) throw std::invalid_argument("state dim mismatch");

  Eigen::MatrixXcd buf(ix.block, ix.dim);
  // Left multiply: rows grouped by non-target bits.
  for (Eigen::Index r : ix.rest) {
    for (Eigen::Index s = 0; s < ix.block; ++s) buf.row(s) = m.row(r + ix.sub[s]);
    buf = k * buf;
    for (Eigen::Index s = 0; s < ix.block; ++s) m.row(r + ix.sub[s]) = buf.row(s);
  }
  // Right multiply by k^dag: columns grouped likewise.
  Eigen::MatrixXcd bufc(ix.dim, ix.block);
  for (Eigen::Index c : ix.rest) {
    for (Eigen::Index s = 0; s < ix.block; ++s) bufc.col(s) = m.col(c + ix.sub[s]);
    bufc = bufc * k.adjoint();
    for (Eigen::Index s = 0; s < ix.block; ++s) m.col(c + ix.sub[s]) = bufc.col(s);
  }
}

void apply_local_unitary(Eigen::VectorXcd& psi, const ComplexOperator& u,
                         const std::vector<int>& targets, int n) {
  LocalIndexer ix(targets, n);
  if (u.rows() != ix.block || u.cols() != ix.block) {
    throw std::invalid_argument("local operator dimension mismatch");
  }
  if (psi.size() != ix.dim) throw std::invalid_argument("state dim mismatch");
  Eigen::VectorXcd buf(ix.block);
  for (Eigen::Index r : ix.rest) {
    for (Eigen::Index s = 0; s < ix.block; ++s) buf(s) = psi(r + ix.sub[s]);
    buf = u * buf;
    for (Eigen::Index s = 0; s < ix.block; ++s) psi(r + ix.sub[s]) = buf(s);
  }
}

void project_qubit(ComplexOperator& m, int q, int bit, int n) {
  Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
  Eigen::Index want = bit ? mask : 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    if ((r & mask) != want) {
      m.row(r).setZero();
      m.col(r).setZero();
    }
  }
}

void project_qubit(Eigen::VectorXcd& psi, int q, int bit, int n) {
  Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
  Eigen::Index want = bit ? mask : 0;
  for (Eigen::Index r = 0; r < psi.size(); ++r) {
    if ((r & mask) != want) psi(r) = 0;
  }
}

void reset_qubit(ComplexOperator& m, int q, int n) {
  Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
  // rho -> |0><0| rho |0><0| + |0><1| rho |1><0|
  ComplexOperator out = ComplexOperator::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    Eigen::Index r0 = r & ~mask;
    for (Eigen::Index c = 0; c < dim; ++c) {
      if ((r & mask) == (c & mask)) out(r0, c & ~mask) += m(r, c);
    }
  }
  m = std::move(out);
}

double qubit_population(const ComplexOperator& m, int q, int bit, int n) {
  Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
  Eigen::Index want = bit ? mask : 0;
  double acc = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    if ((r & mask) == want) acc += m(r, r).real();
  }
  return acc;
}

double qubit_population(const Eigen::VectorXcd& psi, int q, int bit, int n) {
  Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
  Eigen::Index want = bit ? mask : 0;
  double acc = 0;
  for (Eigen::Index r = 0; r < psi.size(); ++r) {
    if ((r & mask) == want) acc += std::norm(psi(r));
  }
  return acc;
}

void CircuitSchedule::add_1q(int pos, std::string name) {
  ops.push_back({ScheduledKind::one_qubit, pos, -1, std::move(name)});
}

void CircuitSchedule::add_2q(int pos_a, int pos_b, std::string name) {
  if (std::abs(pos_a - pos_b) != 1) {
    throw std::invalid_argument("scheduled two-qubit gate on non-neighbor chain positions");
  }
  ops.push_back({ScheduledKind::two_qubit, pos_a, pos_b, std::move(name)});
}

void CircuitSchedule::add_swap(int pos_a, int pos_b) {
  if (std::abs(pos_a - pos_b) != 1) {
    throw std::invalid_argument("SWAP on non-neighbor chain positions");
  }
  ops.push_back({ScheduledKind::swap, pos_a, pos_b, "swap"});
}

void CircuitSchedule::add_measurement(int pos, std::string name) {
  ops.push_back({ScheduledKind::measurement, pos, -1, std::move(name)});
}

void CircuitSchedule::append(const CircuitSchedule& other) {
  ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

}  // namespace qecmag
