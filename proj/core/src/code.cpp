#include "qecmag/code.hpp"

#include "qecmag/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qecmag {

namespace {

constexpr int kReg = 5;      // data qubits 0..3 plus ancilla
constexpr int kAncilla = 4;  // register index (least significant bit)
constexpr int kDim16 = 16;
constexpr int kDim32 = 32;

ComplexOperator lift_with_ancilla(const ComplexOperator& rho16) {
  ComplexOperator m = ComplexOperator::Zero(kDim32, kDim32);
  for (int i = 0; i < kDim16; ++i)
    for (int j = 0; j < kDim16; ++j) m(2 * i, 2 * j) = rho16(i, j);
  return m;
}

void accumulate_without_ancilla(const ComplexOperator& m32, ComplexOperator& out16) {
  for (int i = 0; i < kDim16; ++i)
    for (int j = 0; j < kDim16; ++j)
      out16(i, j) += m32(2 * i, 2 * j) + m32(2 * i + 1, 2 * j + 1);
}

// Complete depolarization of the target qubits: diagonal-in-target averaging.
void complete_depolarize(ComplexOperator& m, const std::vector<int>& targets) {
  const int dim = kDim32;
  const int k = static_cast<int>(targets.size());
  const int block = 1 << k;
  int mask = 0;
  std::vector<int> sub(block, 0);
  for (int t = 0; t < k; ++t) mask |= 1 << (kReg - 1 - targets[t]);
  for (int s = 0; s < block; ++s)
    for (int t = 0; t < k; ++t)
      if ((s >> (k - 1 - t)) & 1) sub[s] |= 1 << (kReg - 1 - targets[t]);

  ComplexOperator out = ComplexOperator::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (r & mask) continue;
    for (int c = 0; c < dim; ++c) {
      if (c & mask) continue;
      Complex acc = 0;
      for (int s = 0; s < block; ++s) acc += m(r + sub[s], c + sub[s]);
      acc /= static_cast<double>(block);
      for (int s = 0; s < block; ++s) out(r + sub[s], c + sub[s]) = acc;
    }
  }
  m.swap(out);
}

// Uniform depolarizing fault: with probability p replace by a uniformly random
// non-identity Pauli on the targets. Expressed through the complete twirl,
// out = (1-c) m + c D(m) with c = p 4^k/(4^k - 1).
void depolarizing_fault(ComplexOperator& m, const std::vector<int>& targets, double p) {
  if (p <= 0.0) return;
  const double dsq = std::pow(4.0, static_cast<double>(targets.size()));
  const double c = p * dsq / (dsq - 1.0);
  ComplexOperator d = m;
  complete_depolarize(d, targets);
  m = (1.0 - c) * m + c * d;
}

struct RoundEngine {
  ComplexOperator m;  // 32x32, unnormalized branch weight in the trace
  double p_gate = 0.0;

  void g1(const ComplexOperator& u, int q) {
    apply_local_unitary(m, u, {q}, kReg);
    depolarizing_fault(m, {q}, p_gate);
  }
  void g2(const ComplexOperator& u, int a, int b) {
    apply_local_unitary(m, u, {a, b}, kReg);
    depolarizing_fault(m, {a, b}, p_gate);
  }
  void fault1(int q) { depolarizing_fault(m, {q}, p_gate); }
  void project(int q, int bit) { project_qubit(m, q, bit, kReg); }
  void reset_with_fault(int q) {
    reset_qubit(m, q, kReg);
    fault1(q);
  }
  double weight() const { return m.trace().real(); }
};

struct BranchAccumulator {
  ComplexOperator out16 = ComplexOperator::Zero(kDim16, kDim16);
  CorrectionStats stats;
  bool discard_aborts = false;
  // optional captures for the single-branch entry points
  ComplexOperator* success16 = nullptr;
  ComplexOperator* abort16 = nullptr;
};

// (0,0): ancilla kickback gadget. Ancilla measured in the X basis; the |+>
// outcome leaves a (1, a^8) imbalance repaired by a conditioned RY.
void run_gadget_branch(const RoundEngine& in, const CorrectionAngles& ang,
                       BranchAccumulator& acc) {
  const ComplexOperator cn = cnot_gate();
  const ComplexOperator cs = cs_gate();
  const ComplexOperator csd = cs_dagger_gate();
  const ComplexOperator x = sigma_x();

  RoundEngine e = in;
  e.g1(ry_gate(2.0 * ang.xi), kAncilla);
  // CCZ on (q0, q2, ancilla), CS-decomposition, time order
  e.g2(cs, kAncilla, 2);
  e.g2(cn, 0, kAncilla);
  e.g2(csd, kAncilla, 2);
  e.g2(cn, 0, kAncilla);
  e.g2(cs, 0, 2);
  e.g1(hadamard(), kAncilla);
  e.fault1(kAncilla);  // ancilla measurement fault

  for (int outcome : {0, 1}) {
    RoundEngine s = e;
    s.project(kAncilla, outcome);
    if (outcome == 0) {
      acc.stats.repair_weight += s.weight();
      // repair rotation in the {|00>,|11>} plane of (q0,q2)
      s.g2(cn, 0, 2);
      s.g1(x, 2);
      s.g2(cn, 2, 0);
      s.g1(ry_gate(-ang.delta2), 0);
      s.g2(cn, 2, 0);
      s.g1(ry_gate(ang.delta2), 0);
      s.g1(x, 2);
      s.g2(cn, 0, 2);
    }
    // deterministic post-measurement ancilla reset, folded into the
    // measurement step (prep and measurement each already carry one fault)
    reset_qubit(s.m, kAncilla, kReg);
    s.g2(cn, 0, 1);  // re-expand reps onto the |0> meters
    s.g2(cn, 2, 3);
    accumulate_without_ancilla(s.m, acc.out16);
  }
}

// (1,0) / (0,1): the decayed pair collapsed to a parity flag and the logical
// content sits on the other pair's representative with a (B, A a^2) tilt.
// Swap the components, damp the heavy one through a meter-qubit filter, then
// rebuild the codeword with a CNOT bus through the ancilla position.
void run_filter_branch(const RoundEngine& in, int side, const CorrectionAngles& ang,
                       BranchAccumulator& acc) {
  const ComplexOperator cn = cnot_gate();
  const ComplexOperator x = sigma_x();
  const int rep = side == 12 ? 2 : 0;    // representative carrying (A, B)
  const int met = side == 12 ? 3 : 1;    // adjacent just-read meter, reused as filter ancilla
  const int other_met = side == 12 ? 1 : 3;
  const int partner = side == 12 ? 0 : 2;  // collapsed pair member needing reset

  RoundEngine e = in;
  e.g1(x, rep);
  e.g1(x, met);  // meter is |0> after the parity read; prepare |1>
  e.g2(cn, rep, met);
  e.g1(ry_gate(-ang.phi), met);
  e.g2(cn, rep, met);
  e.g1(ry_gate(ang.phi), met);
  e.fault1(met);  // filter measurement fault

  // outcome 1 = success (coefficients a^2-balanced), outcome 0 = abort
  RoundEngine s = e;
  s.project(met, 1);
  RoundEngine a = e;
  a.project(met, 0);

  acc.stats.abort_weight += a.weight();
  if (acc.abort16) accumulate_without_ancilla(a.m, *acc.abort16);
  if (acc.discard_aborts) {
    acc.stats.discarded_weight += a.weight();
  } else {
    accumulate_without_ancilla(a.m, acc.out16);
  }

  s.g1(x, met);        // meter reset
  s.g1(x, other_met);  // other pair's meter read 1; reset
  s.reset_with_fault(partner);

  if (side == 12) {
    s.g1(hadamard(), 0);
    s.g2(cn, 0, 1);
    s.g2(cn, 1, kAncilla);
    s.g2(cn, kAncilla, 2);
    s.g2(cn, 2, 3);
    s.g2(cn, 1, kAncilla);
  } else {
    s.g1(hadamard(), 3);
    s.g2(cn, 3, 2);
    s.g2(cn, 2, kAncilla);
    s.g2(cn, kAncilla, 1);
    s.g2(cn, 1, 0);
    s.g2(cn, kAncilla, 1);
    s.g2(cn, 2, kAncilla);
    s.g2(cn, 0, 1);
  }
  if (acc.success16) accumulate_without_ancilla(s.m, *acc.success16);
  accumulate_without_ancilla(s.m, acc.out16);
}

void run_uncorrectable_branch(const RoundEngine& in, BranchAccumulator& acc) {
  accumulate_without_ancilla(in.m, acc.out16);
}

void run_round(ComplexOperator& rho16, const RoundOptions& opt, BranchAccumulator& acc,
               int only_b1 = -1, int only_b2 = -1) {
  const double p_eff = std::clamp(opt.p + opt.delta_p, 0.0, 1.0 - 1e-12);
  const CorrectionAngles ang = correction_angles(p_eff);
  const ComplexOperator cn = cnot_gate();

  RoundEngine base{lift_with_ancilla(rho16), opt.p_gate};
  base.g2(cn, 0, 1);  // pair parities onto the meters
  base.g2(cn, 2, 3);
  base.fault1(1);  // every measurement carries one single-qubit fault
  base.fault1(3);

  for (int b1 : {0, 1}) {
    for (int b2 : {0, 1}) {
      if (only_b1 >= 0 && (b1 != only_b1 || b2 != only_b2)) continue;
      RoundEngine e = base;
      e.project(1, b1);
      e.project(3, b2);
      acc.stats.syndrome_probability[b1][b2] += e.weight();
      if (b1 == 0 && b2 == 0) {
        run_gadget_branch(e, ang, acc);
      } else if (b1 == 1 && b2 == 0) {
        run_filter_branch(e, 12, ang, acc);
      } else if (b1 == 0 && b2 == 1) {
        run_filter_branch(e, 34, ang, acc);
      } else {
        run_uncorrectable_branch(e, acc);
      }
    }
  }
  rho16 = acc.out16;
}

double branch_weight(const ComplexOperator& rho16, int b1, int b2) {
  ComplexOperator m = lift_with_ancilla(rho16);
  apply_local_unitary(m, cnot_gate(), {0, 1}, kReg);
  apply_local_unitary(m, cnot_gate(), {2, 3}, kReg);
  project_qubit(m, 1, b1, kReg);
  project_qubit(m, 3, b2, kReg);
  return m.trace().real();
}

void require_branch_support(const DensityMatrix& rho, int b1, int b2, const char* what) {
  const double tr = rho.op.trace().real();
  const double w = branch_weight(rho.op, b1, b2);
  if (std::abs(w - tr) > 1e-7 * std::max(1.0, std::abs(tr)))
    throw std::invalid_argument(std::string(what) +
                                ": input is not supported on the expected syndrome branch");
}

SyndromeOutcome conditioned_syndrome(const DensityMatrix& rho, int b1, int b2) {
  SyndromeOutcome s;
  s.b1 = b1;
  s.b2 = b2;
  s.probability = 1.0;
  s.post_state = rho;
  return s;
}

CircuitSchedule syndrome_prologue() {
  CircuitSchedule c;
  c.add_2q(0, 1, "cnot");
  c.add_2q(3, 4, "cnot");
  c.add_measurement(1, "parity_a");
  c.add_measurement(4, "parity_b");
  return c;
}

double schedule_duration(const CircuitSchedule& c) {
  return correction_duration(c, TimingModel{});
}

}  // namespace

const CodeSpec& CodeSpec::instance() {
  static const CodeSpec spec = [] {
    CodeSpec s;
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(kDim16);
    Eigen::VectorXcd one = Eigen::VectorXcd::Zero(kDim16);
    zero(0b0000) = zero(0b0011) = zero(0b1100) = zero(0b1111) = 0.5;
    one(0b0000) = one(0b1111) = 0.5;
    one(0b0011) = one(0b1100) = -0.5;
    s.zero_l = PureState(zero);
    s.one_l = PureState(one);
    const ComplexOperator sx = sigma_x(), sz = sigma_z(), id = identity_op(2);
    s.s1 = kron(kron(sx, sx), kron(sx, sx));
    s.s2 = kron(kron(sz, sz), kron(id, id));
    s.s3 = kron(kron(id, id), kron(sz, sz));
    s.logical_x = kron(kron(sz, id), kron(sz, id));
    s.logical_z = kron(kron(sx, sx), kron(id, id));
    s.codespace_projector = zero * zero.adjoint() + one * one.adjoint();
    return s;
  }();
  return spec;
}

PureState encode(Complex alpha, Complex beta) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("encode: |alpha|^2 + |beta|^2 must equal 1");
  const CodeSpec& code = CodeSpec::instance();
  return PureState(alpha * code.zero_l.amp + beta * code.one_l.amp);
}

std::vector<SyndromeOutcome> extract_syndrome(const DensityMatrix& rho) {
  if (rho.op.rows() != kDim16)
    throw std::invalid_argument("extract_syndrome: expected a 4-qubit state");
  const ComplexOperator zz01 = embed(kron(sigma_z(), sigma_z()), {0, 1}, 4);
  const ComplexOperator zz23 = embed(kron(sigma_z(), sigma_z()), {2, 3}, 4);
  const ComplexOperator id = identity_op(kDim16);
  std::vector<ComplexOperator> projectors;
  for (int b1 : {0, 1})
    for (int b2 : {0, 1})
      projectors.push_back(0.25 * (id + (b1 ? -1.0 : 1.0) * zz01) *
                           (id + (b2 ? -1.0 : 1.0) * zz23));
  // order (0,0),(0,1),(1,0),(1,1)
  std::vector<ComplexOperator> ordered = {projectors[0], projectors[1], projectors[2],
                                          projectors[3]};
  std::vector<MeasurementBranch> branches = measure_projective(rho, ordered);
  std::vector<SyndromeOutcome> out(4);
  const int bits[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (int k = 0; k < 4; ++k) {
    out[k].b1 = bits[k][0];
    out[k].b2 = bits[k][1];
    out[k].probability = branches[k].probability;
    out[k].post_state = branches[k].state;
    out[k].zero_probability = branches[k].zero_probability;
  }
  return out;
}

const char* to_string(CorrectionBranch b) {
  switch (b) {
    case CorrectionBranch::NoDecay: return "no_decay";
    case CorrectionBranch::DecayQ1orQ2: return "decay_q1_or_q2";
    case CorrectionBranch::DecayQ3orQ4: return "decay_q3_or_q4";
    case CorrectionBranch::Uncorrectable: return "uncorrectable";
    case CorrectionBranch::FilterAbort: return "filter_abort";
  }
  return "unknown";
}

ComplexOperator PauliFrame::as_operator() const {
  ComplexOperator op = ComplexOperator::Identity(1, 1);
  for (int q = 0; q < 4; ++q) {
    ComplexOperator m = identity_op(2);
    if ((x_mask >> (3 - q)) & 1) m = sigma_x() * m;
    if ((z_mask >> (3 - q)) & 1) m = m * sigma_z();
    op = kron(op, m);
  }
  return op;
}

PauliFrame PauliFrame::compose(const PauliFrame& later) const {
  return PauliFrame{static_cast<std::uint8_t>(x_mask ^ later.x_mask),
                    static_cast<std::uint8_t>(z_mask ^ later.z_mask)};
}

CorrectionAngles correction_angles(double p) {
  if (p < 0.0 || p >= 1.0) throw std::invalid_argument("correction_angles: p must be in [0,1)");
  const double a2 = 1.0 - p;  // a^2
  CorrectionAngles ang;
  ang.theta = std::atan(a2 * a2);
  ang.xi = M_PI / 4.0 - ang.theta;
  ang.delta2 = M_PI / 4.0 - std::atan(a2 * a2 * a2 * a2);
  ang.phi = std::acos(a2);
  return ang;
}

DensityMatrix correct_no_decay(const DensityMatrix& rho_branch, double p) {
  require_branch_support(rho_branch, 0, 0, "correct_no_decay");
  BranchAccumulator acc;
  ComplexOperator work = rho_branch.op;
  run_round(work, RoundOptions{p, 0.0, 0.0, false}, acc, 0, 0);
  return DensityMatrix(work, rho_branch.tolerance);
}

CorrectionOutcome correct_single_decay(const DensityMatrix& rho_branch, int side, double p) {
  if (side != 12 && side != 34)
    throw std::invalid_argument("correct_single_decay: side must be 12 or 34");
  const int b1 = side == 12 ? 1 : 0;
  const int b2 = side == 12 ? 0 : 1;
  require_branch_support(rho_branch, b1, b2, "correct_single_decay");

  ComplexOperator success = ComplexOperator::Zero(kDim16, kDim16);
  ComplexOperator abort = ComplexOperator::Zero(kDim16, kDim16);
  BranchAccumulator acc;
  acc.success16 = &success;
  acc.abort16 = &abort;
  ComplexOperator work = rho_branch.op;
  run_round(work, RoundOptions{p, 0.0, 0.0, false}, acc, b1, b2);

  CorrectionOutcome out;
  out.syndrome = conditioned_syndrome(rho_branch, b1, b2);
  out.post_state = DensityMatrix(work, rho_branch.tolerance);
  const double tr = rho_branch.op.trace().real();
  out.abort_probability = acc.stats.abort_weight / tr;
  const double ws = success.trace().real();
  out.branch = ws < 1e-12 * tr ? CorrectionBranch::FilterAbort
               : side == 12    ? CorrectionBranch::DecayQ1orQ2
                               : CorrectionBranch::DecayQ3orQ4;
  if (ws > 1e-12 * tr) out.success_state = DensityMatrix(success / ws, rho_branch.tolerance);
  const double wa = abort.trace().real();
  if (wa > 1e-12 * tr) out.abort_state = DensityMatrix(abort / wa, rho_branch.tolerance);
  out.duration = schedule_duration(correction_branch_schedule(
      side == 12 ? CorrectionBranch::DecayQ1orQ2 : CorrectionBranch::DecayQ3orQ4, false));
  return out;
}

CorrectionOutcome correct_uncorrectable(const DensityMatrix& rho_branch) {
  require_branch_support(rho_branch, 1, 1, "correct_uncorrectable");
  CorrectionOutcome out;
  out.syndrome = conditioned_syndrome(rho_branch, 1, 1);
  out.branch = CorrectionBranch::Uncorrectable;
  out.post_state = rho_branch;
  out.duration = schedule_duration(correction_branch_schedule(CorrectionBranch::Uncorrectable, false));
  return out;
}

DensityMatrix frame_resolve(const CorrectionOutcome& outcome) {
  if (outcome.pauli_frame.is_identity()) return outcome.post_state;
  const ComplexOperator pf = outcome.pauli_frame.as_operator();
  return DensityMatrix(pf * outcome.post_state.op * pf.adjoint(), outcome.post_state.tolerance);
}

FullCorrectionResult full_correction(const DensityMatrix& rho, double p,
                                     const FullCorrectionOptions& options) {
  BranchAccumulator acc;
  acc.discard_aborts = options.discard_aborts;
  ComplexOperator work = rho.op;
  run_round(work, RoundOptions{p, options.p_gate, options.delta_p, options.discard_aborts}, acc);

  const double tr = rho.op.trace().real();
  for (auto& row : acc.stats.syndrome_probability)
    for (auto& w : row) w /= tr;
  acc.stats.abort_weight /= tr;
  acc.stats.discarded_weight /= tr;
  acc.stats.repair_weight /= tr;

  FullCorrectionResult result;
  result.stats = acc.stats;
  if (options.discard_aborts && acc.stats.discarded_weight > 1e-15) {
    result.post_state = DensityMatrix::unchecked(std::move(work), true);
  } else {
    result.post_state = DensityMatrix(work, rho.tolerance);
  }
  return result;
}

void correction_round_inplace(ComplexOperator& rho16, const RoundOptions& options,
                              CorrectionStats* stats) {
  BranchAccumulator acc;
  acc.discard_aborts = options.discard_aborts;
  run_round(rho16, options, acc);
  if (stats) *stats = acc.stats;
}

RecoveryAnalysis recovery_analysis(const KrausChannel& channel, const CodeSpec& code) {
  KrausChannel first = channel;
  if (channel.operators.size() == 16) first = first_order_operators(channel);
  if (first.operators.size() != 5)
    throw std::invalid_argument(
        "recovery_analysis: expected the 4-qubit damping channel or its 5 leading operators");

  Eigen::MatrixXcd basis(kDim16, 2);
  basis.col(0) = code.zero_l.amp;
  basis.col(1) = code.one_l.amp;
  Eigen::JacobiSVD<Eigen::MatrixXcd> basis_svd(basis, Eigen::ComputeFullU);
  const Eigen::MatrixXcd basis_perp = basis_svd.matrixU().rightCols(kDim16 - 2);

  static const char* kNames[5] = {"K_0000", "K_1000", "K_0100", "K_0010", "K_0001"};
  RecoveryAnalysis out;
  for (int s = 0; s < 5; ++s) {
    const ComplexOperator& k = first.operators[static_cast<std::size_t>(s)];
    const Eigen::MatrixXcd kb = k * basis;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(kb, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sing = svd.singularValues();

    OperatorRecovery rec;
    rec.label = kNames[s];
    rec.lambda = sing(1) * sing(1);
    rec.distortion_norm = sing(0) - sing(1);
    rec.degenerate = sing(0) < 1e-12;
    if (rec.degenerate) {
      rec.recovery_unitary = ComplexOperator::Identity(kDim16, kDim16);
      rec.diagnostics = "image vanishes at this order; recovery undefined";
    } else {
      const Eigen::MatrixXcd iso = svd.matrixU().leftCols(2) * svd.matrixV().adjoint();
      const Eigen::MatrixXcd img_perp = svd.matrixU().rightCols(kDim16 - 2);
      rec.recovery_unitary = iso * basis.adjoint() + img_perp * basis_perp.adjoint();
    }
    out.operators.push_back(std::move(rec));
    out.fidelity_bound += out.operators.back().lambda;
  }
  return out;
}

CircuitSchedule correction_branch_schedule(CorrectionBranch branch, bool with_repair) {
  // chain positions: q0=0, q1=1, ancilla=2, q2=3, q3=4
  CircuitSchedule c = syndrome_prologue();
  switch (branch) {
    case CorrectionBranch::NoDecay: {
      c.label = with_repair ? "no_decay_with_repair" : "no_decay";
      c.add_1q(2, "ry_prep");
      c.add_swap(0, 1);  // q0 next to the ancilla
      c.add_2q(2, 3, "cs");
      c.add_2q(1, 2, "cnot");
      c.add_2q(2, 3, "cs_dagger");
      c.add_2q(1, 2, "cnot");
      c.add_swap(1, 2);  // q0 past the ancilla, reps adjacent
      c.add_2q(2, 3, "cs");
      c.add_1q(1, "h");
      c.add_measurement(1, "ancilla_x");
      if (with_repair) {
        c.add_2q(2, 3, "cnot");
        c.add_1q(3, "x");
        c.add_2q(3, 2, "cnot");
        c.add_1q(2, "ry");
        c.add_2q(3, 2, "cnot");
        c.add_1q(2, "ry");
        c.add_1q(3, "x");
        c.add_2q(2, 3, "cnot");
      }
      c.add_swap(1, 2);
      c.add_swap(0, 1);
      c.add_2q(0, 1, "cnot");
      c.add_2q(3, 4, "cnot");
      break;
    }
    case CorrectionBranch::DecayQ1orQ2: {
      c.label = "decay_q1_or_q2";
      c.add_1q(3, "x");
      c.add_1q(4, "x");
      c.add_2q(3, 4, "cnot");
      c.add_1q(4, "ry");
      c.add_2q(3, 4, "cnot");
      c.add_1q(4, "ry");
      c.add_measurement(4, "filter");
      c.add_1q(4, "x");
      c.add_1q(1, "x");
      c.add_measurement(0, "reset");
      c.add_1q(0, "h");
      c.add_2q(0, 1, "cnot");
      c.add_2q(1, 2, "cnot");
      c.add_2q(2, 3, "cnot");
      c.add_2q(3, 4, "cnot");
      c.add_2q(1, 2, "cnot");
      break;
    }
    case CorrectionBranch::DecayQ3orQ4: {
      c.label = "decay_q3_or_q4";
      c.add_1q(0, "x");
      c.add_1q(1, "x");
      c.add_2q(0, 1, "cnot");
      c.add_1q(1, "ry");
      c.add_2q(0, 1, "cnot");
      c.add_1q(1, "ry");
      c.add_measurement(1, "filter");
      c.add_1q(1, "x");
      c.add_1q(4, "x");
      c.add_measurement(3, "reset");
      c.add_1q(4, "h");
      c.add_2q(4, 3, "cnot");
      c.add_2q(3, 2, "cnot");
      c.add_2q(2, 1, "cnot");
      c.add_2q(1, 0, "cnot");
      c.add_2q(2, 1, "cnot");
      c.add_2q(3, 2, "cnot");
      c.add_2q(0, 1, "cnot");
      break;
    }
    case CorrectionBranch::Uncorrectable:
    case CorrectionBranch::FilterAbort:
      c.label = "uncorrectable";
      break;
  }
  return c;
}

CircuitSchedule worst_case_round_schedule() {
  return correction_branch_schedule(CorrectionBranch::NoDecay, true);
}

}  // namespace qecmag
