#include "doctest.h"

#include <qecmag/qstate.hpp>

#include <cmath>

using namespace qecmag;

namespace {

double op_dist(const ComplexOperator& a, const ComplexOperator& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("basis index convention: qubit 0 is the most significant bit") {
  // |10> = qubit0=1, qubit1=0 -> index 2
  PureState s = basis_state(2, 2);
  CHECK(s.amp(2) == Complex(1.0, 0.0));
  CHECK(s.amp(0) == Complex(0.0, 0.0));

  // kron_vec: left factor owns the most significant bits
  Eigen::VectorXcd v = kron_vec(basis_state(1, 1).amp, basis_state(1, 0).amp);
  CHECK(v(2) == Complex(1.0, 0.0));

  CHECK(qubit_count_for_dim(32) == 5);
  CHECK_THROWS_AS(qubit_count_for_dim(3), std::invalid_argument);
  CHECK_THROWS_AS(qubit_count_for_dim(64), std::invalid_argument);
  CHECK_THROWS_AS(basis_state(2, 4), std::invalid_argument);
}

TEST_CASE("embed places targets with targets[0] most significant") {
  CHECK(op_dist(embed(sigma_x(), {0}, 2), kron(sigma_x(), identity_op(2))) < 1e-15);
  CHECK(op_dist(embed(sigma_x(), {1}, 2), kron(identity_op(2), sigma_x())) < 1e-15);

  // swapped targets exchange the roles of control and target
  ComplexOperator cnot = ComplexOperator::Zero(4, 4);
  cnot << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  ComplexOperator rev = embed(cnot, {1, 0}, 2);
  // |01> (q1 = control = 1) -> |11>
  CHECK(op_dist(rev.col(1), Eigen::MatrixXcd(basis_state(2, 3).amp)) < 1e-15);
  // |10> unchanged (control q1 = 0)
  CHECK(op_dist(rev.col(2), Eigen::MatrixXcd(basis_state(2, 2).amp)) < 1e-15);

  CHECK_THROWS_AS(embed(sigma_x(), {2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(embed(cnot, {0, 0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed(sigma_x(), {0, 1}, 3), std::invalid_argument);
}

TEST_CASE("embed of disjoint factors composes like a tensor product") {
  ComplexOperator a(2, 2), b(2, 2);
  a << Complex(0.2, 0.1), Complex(1.0, 0.0), Complex(0.0, -0.4), Complex(0.7, 0.0);
  b << Complex(0.9, 0.0), Complex(0.0, 0.3), Complex(0.5, 0.0), Complex(-0.2, 0.6);
  ComplexOperator lhs = embed(a, {0}, 3) * embed(b, {2}, 3);
  ComplexOperator rhs = embed(kron(a, b), {0, 2}, 3);
  CHECK(op_dist(lhs, rhs) < 1e-14);
}

TEST_CASE("hamiltonian evolution rotates a qubit at the expected frequency") {
  const double omega = 2.3;
  ComplexOperator h = 0.5 * omega * sigma_z();
  Eigen::VectorXcd plus(2);
  plus << M_SQRT1_2, M_SQRT1_2;
  DensityMatrix rho = dm_from_pure(PureState(plus));

  for (double t : {0.0, 0.37, 1.1}) {
    DensityMatrix evolved = evolve_hamiltonian(rho, h, t);
    CHECK(expectation(evolved, sigma_x()) == doctest::Approx(std::cos(omega * t)).epsilon(1e-12));
    // pure-state path agrees with the density-matrix path
    PureState psi = evolve_hamiltonian(PureState(plus), h, t);
    CHECK(op_dist(evolved.op, dm_from_pure(psi).op) < 1e-12);
  }

  // semigroup property
  DensityMatrix two_step = evolve_hamiltonian(evolve_hamiltonian(rho, h, 0.4), h, 0.6);
  DensityMatrix one_step = evolve_hamiltonian(rho, h, 1.0);
  CHECK(op_dist(two_step.op, one_step.op) < 1e-12);

  CHECK_THROWS_AS(evolve_hamiltonian(rho, h, -0.1), std::invalid_argument);
  ComplexOperator not_hermitian = ComplexOperator::Zero(2, 2);
  not_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(evolve_hamiltonian(rho, not_hermitian, 0.1), std::invalid_argument);
}

TEST_CASE("projective measurement branches") {
  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.3), std::sqrt(0.7);
  DensityMatrix rho = dm_from_pure(PureState(amp));
  ComplexOperator p0 = basis_state(1, 0).amp * basis_state(1, 0).amp.adjoint();
  ComplexOperator p1 = basis_state(1, 1).amp * basis_state(1, 1).amp.adjoint();

  auto branches = measure_projective(rho, {p0, p1});
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].probability == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(branches[1].probability == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(branches[0].probability + branches[1].probability == doctest::Approx(1.0));
  // post states renormalized
  CHECK(branches[0].state.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity_with_pure(branches[0].state, basis_state(1, 0)) == doctest::Approx(1.0));

  // impossible outcome flagged instead of dividing by ~0
  auto sure = measure_projective(dm_from_pure(basis_state(1, 0)), {p0, p1});
  CHECK(sure[1].zero_probability);
  CHECK(sure[1].probability == doctest::Approx(0.0));

  ComplexOperator tilted = 0.5 * (p0 + p1 + ComplexOperator::Identity(2, 2));
  CHECK_THROWS_AS(measure_projective(rho, {tilted, p1}), std::invalid_argument);
}

TEST_CASE("fidelity and expectation guards") {
  DensityMatrix rho = dm_from_pure(basis_state(1, 0));
  CHECK(fidelity_with_pure(rho, basis_state(1, 0)) == doctest::Approx(1.0));
  CHECK(fidelity_with_pure(rho, basis_state(1, 1)) == doctest::Approx(0.0));
  CHECK(expectation(rho, sigma_z()) == doctest::Approx(1.0));

  ComplexOperator not_hermitian = ComplexOperator::Zero(2, 2);
  not_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(expectation(rho, not_hermitian), std::invalid_argument);
}

TEST_CASE("partial trace keeps the survivors in register order") {
  Eigen::VectorXcd a(2), b(2);
  a << std::sqrt(0.2), std::sqrt(0.8);
  b << M_SQRT1_2, Complex(0.0, -M_SQRT1_2);
  ComplexOperator rho_a = a * a.adjoint();
  ComplexOperator rho_b = b * b.adjoint();
  ComplexOperator joint = kron(rho_a, rho_b);

  CHECK(op_dist(partial_trace(joint, {1}, 2), rho_a) < 1e-14);
  CHECK(op_dist(partial_trace(joint, {0}, 2), rho_b) < 1e-14);
  CHECK(partial_trace(joint, {0}, 2).trace().real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(partial_trace(joint, {0, 1}, 2), std::invalid_argument);
}

TEST_CASE("state construction validation") {
  Eigen::VectorXcd unnorm(2);
  unnorm << 1.0, 1.0;
  CHECK_THROWS_AS(PureState{unnorm}, std::invalid_argument);

  ComplexOperator skew = ComplexOperator::Zero(2, 2);
  skew(0, 1) = 0.5;
  skew(0, 0) = 1.0;
  CHECK_THROWS_AS(DensityMatrix{skew}, std::invalid_argument);

  ComplexOperator neg = ComplexOperator::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, std::invalid_argument);

  // unchecked skips validation by contract
  DensityMatrix raw = DensityMatrix::unchecked(neg);
  CHECK(raw.trace_real() == doctest::Approx(1.0));
}
