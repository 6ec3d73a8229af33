#pragma once

#include "qecmag/qstate.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qecmag {

// Standard gate matrices.
ComplexOperator hadamard();
ComplexOperator ry_gate(double theta);              // exp(-i theta Y/2)
ComplexOperator rz_gate(double theta);              // exp(-i theta Z/2)
ComplexOperator cnot_gate();                        // control = first (most significant) qubit
ComplexOperator cz_gate();
ComplexOperator cphase_gate(double phi);            // diag(1,1,1,e^{i phi})
ComplexOperator cs_gate();                          // cphase(pi/2)
ComplexOperator cs_dagger_gate();

// In-place local application on a general complex matrix:
// m -> U_loc m U_loc^dag, with U acting on `targets` of an n-qubit register.
// Works on non-Hermitian matrices too (superoperator compilation relies on
// linearity over arbitrary complex matrices).
void apply_local_unitary(ComplexOperator& m, const ComplexOperator& u,
                         const std::vector<int>& targets, int n);

// Pure-state version: psi -> U_loc psi.
void apply_local_unitary(Eigen::VectorXcd& psi, const ComplexOperator& u,
                         const std::vector<int>& targets, int n);

// Left application of a (possibly non-unitary) local operator: m -> K_loc m K_loc^dag.
void apply_local_kraus_pair(ComplexOperator& m, const ComplexOperator& k,
                            const std::vector<int>& targets, int n);

// Projects qubit q onto |bit>, without renormalizing: m -> P m P.
void project_qubit(ComplexOperator& m, int q, int bit, int n);
void project_qubit(Eigen::VectorXcd& psi, int q, int bit, int n);

// Trace-out-and-replace-with-|0> on qubit q.
void reset_qubit(ComplexOperator& m, int q, int n);

// Probability that qubit q reads `bit` (trace of the projected matrix /
// squared norm for vectors).
double qubit_population(const ComplexOperator& m, int q, int bit, int n);
double qubit_population(const Eigen::VectorXcd& psi, int q, int bit, int n);

// --- schedule / timing description -----------------------------------------
//
// A flat record of the physical operations in one correction branch, used by
// the duration/gate-count accountant. Two-qubit entries are already routed:
// the builder emits explicit SWAPs for non-neighbor pairs on the linear chain
// [q0, q1, ancilla, q2, q3].

enum class ScheduledKind : std::uint8_t { one_qubit, two_qubit, swap, measurement };

struct ScheduledOp {
  ScheduledKind kind;
  int a = -1;  // chain position(s) involved
  int b = -1;
  std::string name;
};

struct CircuitSchedule {
  std::vector<ScheduledOp> ops;
  std::string label;

  void add_1q(int pos, std::string name);
  void add_2q(int pos_a, int pos_b, std::string name);
  void add_swap(int pos_a, int pos_b);
  void add_measurement(int pos, std::string name);
  void append(const CircuitSchedule& other);
};

}  // namespace qecmag
