#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

// Dense complex linear algebra for registers of 1..5 qubits.
//
// Qubit ordering convention (used everywhere in this library):
// qubit 0 is the leftmost ket label, i.e. the most significant bit of the
// computational basis index. |q0 q1 ... q_{n-1}> has index
// sum_k q_k * 2^(n-1-k).

namespace qecmag {

using Complex = std::complex<double>;
using ComplexOperator = Eigen::MatrixXcd;

inline constexpr double default_construction_tol = 1e-10;
inline constexpr double default_property_tol = 1e-9;

// Thrown when a numerical procedure (not an argument check) fails.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int qubit_count_for_dim(Eigen::Index dim);  // throws unless dim = 2^n, n in 1..5
bool all_finite(const ComplexOperator& m);
bool is_hermitian(const ComplexOperator& m, double tol = default_construction_tol);

struct PureState {
  Eigen::VectorXcd amp;
  double tolerance = default_construction_tol;

  PureState() = default;
  explicit PureState(Eigen::VectorXcd a, double tol = default_construction_tol);

  int n_qubits() const { return qubit_count_for_dim(amp.size()); }
  Eigen::Index dim() const { return amp.size(); }
};

struct DensityMatrix {
  ComplexOperator op;
  double tolerance = default_construction_tol;
  // Unnormalized branches (selective channels, measurement branches kept
  // unnormalized) skip the trace-one check but keep Hermiticity/PSD.
  bool unnormalized_branch = false;

  DensityMatrix() = default;
  explicit DensityMatrix(ComplexOperator m, double tol = default_construction_tol,
                         bool unnormalized = false);

  // Skips all validation; for hot paths whose invariants are maintained by
  // construction. Same layout, no checks.
  static DensityMatrix unchecked(ComplexOperator m, bool unnormalized = false);

  int n_qubits() const { return qubit_count_for_dim(op.rows()); }
  Eigen::Index dim() const { return op.rows(); }
  double trace_real() const { return op.trace().real(); }
};

DensityMatrix dm_from_pure(const PureState& psi);

// Pauli and ladder operators (2x2).
ComplexOperator sigma_x();
ComplexOperator sigma_y();
ComplexOperator sigma_z();
ComplexOperator sigma_plus();   // |1><0|
ComplexOperator sigma_minus();  // |0><1|
ComplexOperator identity_op(Eigen::Index dim);

// Computational basis vector |index> in an n-qubit register.
PureState basis_state(int n, Eigen::Index index);

// Tensor product, left factor owns the most significant bits.
ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b);
Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Lifts a k-qubit operator to an n-qubit register. targets[j] is the register
// qubit carrying bit j of the small operator's index (targets[0] = most
// significant). Targets must be distinct and < n.
ComplexOperator embed(const ComplexOperator& op, const std::vector<int>& targets, int n);

// exp(-iHt) rho exp(+iHt) by Hermitian eigendecomposition. H must be
// Hermitian and t >= 0.
DensityMatrix evolve_hamiltonian(const DensityMatrix& rho, const ComplexOperator& h, double t);
PureState evolve_hamiltonian(const PureState& psi, const ComplexOperator& h, double t);

struct MeasurementBranch {
  double probability = 0.0;
  DensityMatrix state;            // renormalized unless zero_probability
  bool zero_probability = false;  // flagged instead of dividing by ~0
};

// Projective measurement over a complete set of orthogonal projectors.
std::vector<MeasurementBranch> measure_projective(const DensityMatrix& rho,
                                                  const std::vector<ComplexOperator>& projectors);

// <psi|rho|psi>, clamped to [0,1].
double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi);

// Real part of tr(obs * rho); obs must be Hermitian.
double expectation(const DensityMatrix& rho, const ComplexOperator& obs);

// Traces out the qubits listed in `drop` (register order of the survivors
// is preserved).
ComplexOperator partial_trace(const ComplexOperator& rho, const std::vector<int>& drop, int n);

}  // namespace qecmag
