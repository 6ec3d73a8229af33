#include "qecmag/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qecmag {

namespace {
constexpr Complex I_UNIT{0.0, 1.0};

double matrix_scale(const ComplexOperator& m) {
  double s = m.cwiseAbs().maxCoeff();
  return s > 1.0 ? s : 1.0;
}
}  // namespace

int qubit_count_for_dim(Eigen::Index dim) {
  for (int n = 1; n <= 5; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw std::invalid_argument("dimension must be 2^n with n in 1..5, got " + std::to_string(dim));
}

bool all_finite(const ComplexOperator& m) {
  return m.allFinite();
}

bool is_hermitian(const ComplexOperator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * matrix_scale(m);
}

PureState::PureState(Eigen::VectorXcd a, double tol) : amp(std::move(a)), tolerance(tol) {
  qubit_count_for_dim(amp.size());
  if (!amp.allFinite()) throw std::invalid_argument("pure state has non-finite amplitudes");
  double n = amp.norm();
  if (std::abs(n - 1.0) > tolerance) {
    throw std::invalid_argument("pure state not normalized, |norm - 1| = " +
                                std::to_string(std::abs(n - 1.0)));
  }
}

DensityMatrix::DensityMatrix(ComplexOperator m, double tol, bool unnormalized)
    : op(std::move(m)), tolerance(tol), unnormalized_branch(unnormalized) {
  qubit_count_for_dim(op.rows());
  if (op.rows() != op.cols()) throw std::invalid_argument("density matrix must be square");
  if (!all_finite(op)) throw std::invalid_argument("density matrix has non-finite entries");
  if (!is_hermitian(op, tolerance)) throw std::invalid_argument("density matrix not Hermitian");
  if (!unnormalized_branch && std::abs(op.trace().real() - 1.0) > tolerance) {
    throw std::invalid_argument("density matrix trace differs from 1 by " +
                                std::to_string(std::abs(op.trace().real() - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(op, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numerical_error("eigensolver failed on density matrix");
  if (es.eigenvalues().minCoeff() < -tolerance * matrix_scale(op)) {
    throw std::invalid_argument("density matrix has eigenvalue below -tolerance: " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::unchecked(ComplexOperator m, bool unnormalized) {
  DensityMatrix d;
  d.op = std::move(m);
  d.unnormalized_branch = unnormalized;
  return d;
}

DensityMatrix dm_from_pure(const PureState& psi) {
  return DensityMatrix::unchecked(psi.amp * psi.amp.adjoint());
}

ComplexOperator sigma_x() {
  ComplexOperator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexOperator sigma_y() {
  ComplexOperator m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexOperator sigma_z() {
  ComplexOperator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexOperator sigma_plus() {
  ComplexOperator m = ComplexOperator::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

ComplexOperator sigma_minus() {
  ComplexOperator m = ComplexOperator::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

ComplexOperator identity_op(Eigen::Index dim) {
  return ComplexOperator::Identity(dim, dim);
}

PureState basis_state(int n, Eigen::Index index) {
  Eigen::Index dim = Eigen::Index{1} << n;
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b) {
  ComplexOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexOperator embed(const ComplexOperator& op, const std::vector<int>& targets, int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("register size must be 1..5");
  int k = static_cast<int>(targets.size());
  if (k < 1 || k > n) throw std::invalid_argument("target count must be 1..n");
  if (op.rows() != op.cols() || op.rows() != (Eigen::Index{1} << k)) {
    throw std::invalid_argument("operator dimension does not match target count");
  }
  for (int t : targets) {
    if (t < 0 || t >= n) throw std::invalid_argument("target qubit out of range");
  }
  for (size_t i = 0; i < targets.size(); ++i)
    for (size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j]) throw std::invalid_argument("duplicate target qubit");

  Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::Index rest_mask = dim - 1;
  std::vector<Eigen::Index> bitpos(targets.size());
  for (size_t j = 0; j < targets.size(); ++j) {
    bitpos[j] = Eigen::Index{1} << (n - 1 - targets[j]);
    rest_mask &= ~bitpos[j];
  }
  auto small_index = [&](Eigen::Index full) {
    Eigen::Index s = 0;
    for (size_t j = 0; j < bitpos.size(); ++j) {
      s = (s << 1) | ((full & bitpos[j]) ? 1 : 0);
    }
    return s;
  };

  ComplexOperator out = ComplexOperator::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    Eigen::Index r_rest = r & rest_mask;
    Eigen::Index r_small = small_index(r);
    for (Eigen::Index c = 0; c < dim; ++c) {
      if ((c & rest_mask) != r_rest) continue;
      out(r, c) = op(r_small, small_index(c));
    }
  }
  return out;
}

namespace {
ComplexOperator propagator(const ComplexOperator& h, double t, double tol) {
  if (!is_hermitian(h, tol)) throw std::invalid_argument("Hamiltonian must be Hermitian");
  if (t < 0) throw std::invalid_argument("evolution time must be nonnegative");
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(h);
  if (es.info() != Eigen::Success) throw numerical_error("eigensolver failed on Hamiltonian");
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(-I_UNIT * es.eigenvalues()(i) * t);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace

DensityMatrix evolve_hamiltonian(const DensityMatrix& rho, const ComplexOperator& h, double t) {
  if (h.rows() != rho.op.rows()) throw std::invalid_argument("dimension mismatch");
  ComplexOperator u = propagator(h, t, rho.tolerance);
  return DensityMatrix::unchecked(u * rho.op * u.adjoint(), rho.unnormalized_branch);
}

PureState evolve_hamiltonian(const PureState& psi, const ComplexOperator& h, double t) {
  if (h.rows() != psi.amp.size()) throw std::invalid_argument("dimension mismatch");
  ComplexOperator u = propagator(h, t, psi.tolerance);
  PureState out;
  out.amp = u * psi.amp;
  out.tolerance = psi.tolerance;
  return out;
}

std::vector<MeasurementBranch> measure_projective(const DensityMatrix& rho,
                                                  const std::vector<ComplexOperator>& projectors) {
  if (projectors.empty()) throw std::invalid_argument("projector set is empty");
  Eigen::Index dim = rho.op.rows();
  double tol = default_property_tol;
  ComplexOperator sum = ComplexOperator::Zero(dim, dim);
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) throw std::invalid_argument("projector dim mismatch");
    if (!is_hermitian(p, tol)) throw std::invalid_argument("projector not Hermitian");
    if ((p * p - p).cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("projector not idempotent");
    sum += p;
  }
  if ((sum - ComplexOperator::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("projectors do not sum to identity");
  }
  for (size_t i = 0; i < projectors.size(); ++i) {
    for (size_t j = i + 1; j < projectors.size(); ++j) {
      if ((projectors[i] * projectors[j]).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("projectors not mutually orthogonal");
      }
    }
  }

  std::vector<MeasurementBranch> out;
  out.reserve(projectors.size());
  for (const auto& p : projectors) {
    ComplexOperator cond = p * rho.op * p;
    double prob = cond.trace().real();
    MeasurementBranch b;
    b.probability = std::clamp(prob, 0.0, 1.0);
    if (prob <= tol) {
      b.zero_probability = true;
      b.probability = std::max(prob, 0.0);
      b.state = DensityMatrix::unchecked(ComplexOperator::Zero(dim, dim), true);
    } else {
      b.state = DensityMatrix::unchecked(cond / prob);
    }
    out.push_back(std::move(b));
  }
  return out;
}

double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.op.rows() != psi.amp.size()) throw std::invalid_argument("dimension mismatch");
  double f = (psi.amp.adjoint() * rho.op * psi.amp)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

double expectation(const DensityMatrix& rho, const ComplexOperator& obs) {
  if (obs.rows() != rho.op.rows()) throw std::invalid_argument("dimension mismatch");
  if (!is_hermitian(obs, default_property_tol)) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  return (obs * rho.op).trace().real();
}

ComplexOperator partial_trace(const ComplexOperator& rho, const std::vector<int>& drop, int n) {
  if (rho.rows() != (Eigen::Index{1} << n)) throw std::invalid_argument("dimension mismatch");
  for (int q : drop) {
    if (q < 0 || q >= n) throw std::invalid_argument("traced qubit out of range");
  }
  std::vector<int> keep;
  for (int q = 0; q < n; ++q) {
    if (std::find(drop.begin(), drop.end(), q) == drop.end()) keep.push_back(q);
  }
  int m = static_cast<int>(keep.size());
  if (m == 0) throw std::invalid_argument("cannot trace out every qubit");
  Eigen::Index dim_out = Eigen::Index{1} << m;
  Eigen::Index dim_drop = Eigen::Index{1} << (n - m);

  auto full_index = [&](Eigen::Index kept_bits, Eigen::Index dropped_bits) {
    Eigen::Index idx = 0;
    for (int j = 0; j < m; ++j) {
      if (kept_bits & (Eigen::Index{1} << (m - 1 - j))) idx |= Eigen::Index{1} << (n - 1 - keep[j]);
    }
    for (size_t j = 0; j < drop.size(); ++j) {
      if (dropped_bits & (Eigen::Index{1} << (Eigen::Index(drop.size()) - 1 - Eigen::Index(j))))
        idx |= Eigen::Index{1} << (n - 1 - drop[j]);
    }
    return idx;
  };

  ComplexOperator out = ComplexOperator::Zero(dim_out, dim_out);
  for (Eigen::Index r = 0; r < dim_out; ++r) {
    for (Eigen::Index c = 0; c < dim_out; ++c) {
      Complex acc = 0;
      for (Eigen::Index d = 0; d < dim_drop; ++d) {
        acc += rho(full_index(r, d), full_index(c, d));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace qecmag
