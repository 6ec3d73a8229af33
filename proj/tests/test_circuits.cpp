#include "doctest.h"

#include <qecmag/circuits.hpp>

#include <cmath>

using namespace qecmag;

namespace {

double op_dist(const ComplexOperator& a, const ComplexOperator& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("gate matrices") {
  CHECK(op_dist(hadamard() * hadamard(), identity_op(2)) < 1e-15);
  CHECK(op_dist(ry_gate(M_PI) * basis_state(1, 0).amp, basis_state(1, 1).amp) < 1e-15);
  CHECK(op_dist(rz_gate(0.7).adjoint() * rz_gate(0.7), identity_op(2)) < 1e-15);

  // cnot: control is the first (most significant) qubit
  CHECK(op_dist(cnot_gate() * basis_state(2, 2).amp, basis_state(2, 3).amp) < 1e-15);
  CHECK(op_dist(cnot_gate() * basis_state(2, 1).amp, basis_state(2, 1).amp) < 1e-15);

  CHECK(op_dist(cphase_gate(M_PI), cz_gate()) < 1e-15);
  CHECK(op_dist(cs_gate() * cs_gate(), cz_gate()) < 1e-15);
  CHECK(op_dist(cs_dagger_gate() * cs_gate(), identity_op(4)) < 1e-15);

  // ry is exp(-i theta Y / 2)
  const double theta = 0.83;
  ComplexOperator expected(2, 2);
  expected << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2),
      std::cos(theta / 2);
  CHECK(op_dist(ry_gate(theta), expected) < 1e-15);
}

TEST_CASE("five two-qubit gates compose a CCZ") {
  // CS(1,2) CN(0,1) CS'(1,2) CN(0,1) CS(0,2) applied in that order
  ComplexOperator u = embed(cs_gate(), {1, 2}, 3);
  u = embed(cnot_gate(), {0, 1}, 3) * u;
  u = embed(cs_dagger_gate(), {1, 2}, 3) * u;
  u = embed(cnot_gate(), {0, 1}, 3) * u;
  u = embed(cs_gate(), {0, 2}, 3) * u;

  ComplexOperator ccz = ComplexOperator::Identity(8, 8);
  ccz(7, 7) = -1.0;
  CHECK(op_dist(u, ccz) < 1e-14);
}

TEST_CASE("apply_local_unitary matches the embedded product") {
  ComplexOperator m = ComplexOperator::Zero(8, 8);
  for (Eigen::Index i = 0; i < 8; ++i)
    for (Eigen::Index j = 0; j < 8; ++j)
      m(i, j) = Complex(std::sin(1.0 + 3.0 * i + j), std::cos(2.0 * i - j));

  ComplexOperator u = ry_gate(0.3);
  ComplexOperator lifted = embed(u, {1}, 3);
  ComplexOperator expected = lifted * m * lifted.adjoint();
  ComplexOperator got = m;
  apply_local_unitary(got, u, {1}, 3);
  CHECK(op_dist(got, expected) < 1e-13);

  // two-qubit placement, non-adjacent targets
  ComplexOperator cn = cnot_gate();
  ComplexOperator lifted2 = embed(cn, {2, 0}, 3);
  ComplexOperator expected2 = lifted2 * m * lifted2.adjoint();
  ComplexOperator got2 = m;
  apply_local_unitary(got2, cn, {2, 0}, 3);
  CHECK(op_dist(got2, expected2) < 1e-13);

  // vector form
  Eigen::VectorXcd psi = basis_state(3, 5).amp;
  Eigen::VectorXcd expected_psi = lifted * psi;
  apply_local_unitary(psi, u, {1}, 3);
  CHECK(op_dist(psi, expected_psi) < 1e-14);
}

TEST_CASE("kraus pair application is one-sided conjugation") {
  ComplexOperator m = ComplexOperator::Identity(4, 4);
  ComplexOperator k = 0.3 * sigma_minus();
  ComplexOperator lifted = embed(k, {1}, 2);
  ComplexOperator expected = lifted * m * lifted.adjoint();
  apply_local_kraus_pair(m, k, {1}, 2);
  CHECK(op_dist(m, expected) < 1e-14);
}

TEST_CASE("project, reset, and population") {
  // |psi> = sqrt(0.3)|00> + sqrt(0.7)|11>
  Eigen::VectorXcd psi(4);
  psi << std::sqrt(0.3), 0.0, 0.0, std::sqrt(0.7);
  CHECK(qubit_population(psi, 0, 1, 2) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(qubit_population(psi, 1, 0, 2) == doctest::Approx(0.3).epsilon(1e-12));

  ComplexOperator rho = psi * psi.adjoint();
  CHECK(qubit_population(rho, 0, 1, 2) == doctest::Approx(0.7).epsilon(1e-12));

  ComplexOperator projected = rho;
  project_qubit(projected, 0, 1, 2);
  CHECK(projected.trace().real() == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(projected(3, 3).real() == doctest::Approx(0.7).epsilon(1e-12));

  Eigen::VectorXcd vec = psi;
  project_qubit(vec, 0, 0, 2);
  CHECK(vec.squaredNorm() == doctest::Approx(0.3).epsilon(1e-12));

  // reset traces the qubit out and reloads |0>
  ComplexOperator reset = rho;
  reset_qubit(reset, 0, 2);
  CHECK(reset.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qubit_population(reset, 0, 0, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qubit_population(reset, 1, 1, 2) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("schedules accumulate ops") {
  CircuitSchedule s;
  s.add_1q(0, "ry");
  s.add_2q(0, 1, "cnot");
  s.add_swap(1, 2);
  s.add_measurement(2, "parity");
  CHECK(s.ops.size() == 4);
  CHECK(s.ops[1].kind == ScheduledKind::two_qubit);
  CHECK(s.ops[2].kind == ScheduledKind::swap);

  CircuitSchedule t;
  t.add_1q(3, "rz");
  t.append(s);
  CHECK(t.ops.size() == 5);
  CHECK(t.ops[0].name == "rz");
  CHECK(t.ops[4].name == "parity");
}
