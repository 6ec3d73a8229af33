#pragma once

#include "qecmag/channels.hpp"
#include "qecmag/circuits.hpp"
#include "qecmag/qstate.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// The four-qubit approximate amplitude-damping code.
//
// Register layout: data qubits 0..3 (qubit 0 = leftmost ket label), plus an
// ancilla at register index 4 when circuits need one. Pair A = (q0,q1),
// pair B = (q2,q3); syndrome bit b1 is the parity of pair A, b2 of pair B.
// Physical chain order for routing/timing is [q0, q1, ancilla, q2, q3].

namespace qecmag {

struct CodeSpec {
  PureState zero_l;  // (|0000>+|0011>+|1100>+|1111>)/2
  PureState one_l;   // (|0000>-|0011>-|1100>+|1111>)/2
  ComplexOperator s1, s2, s3;              // XXXX, ZZII, IIZZ
  ComplexOperator logical_x, logical_z;    // Z0 Z2, X0 X1
  ComplexOperator codespace_projector;     // |0L><0L| + |1L><1L|

  static const CodeSpec& instance();
};

// alpha |0L> + beta |1L>; requires |alpha|^2+|beta|^2 = 1.
PureState encode(Complex alpha, Complex beta);

struct SyndromeOutcome {
  int b1 = 0;
  int b2 = 0;
  double probability = 0.0;
  DensityMatrix post_state;  // renormalized; zero-probability branches flagged
  bool zero_probability = false;
};

// Projective joint parity measurement of (Z0Z1, Z2Z3); four branches ordered
// (0,0),(0,1),(1,0),(1,1).
std::vector<SyndromeOutcome> extract_syndrome(const DensityMatrix& rho);

enum class CorrectionBranch : std::uint8_t {
  NoDecay,
  DecayQ1orQ2,
  DecayQ3orQ4,
  Uncorrectable,
  FilterAbort,
};

const char* to_string(CorrectionBranch b);

// A 4-qubit Pauli record (phase-free): X and Z bit masks, bit (3-q) of each
// mask referring to data qubit q.
struct PauliFrame {
  std::uint8_t x_mask = 0;
  std::uint8_t z_mask = 0;

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  ComplexOperator as_operator() const;  // 16-dim, phase convention X then Z per qubit
  PauliFrame compose(const PauliFrame& later) const;
};

struct CorrectionOutcome {
  SyndromeOutcome syndrome;
  CorrectionBranch branch = CorrectionBranch::NoDecay;
  PauliFrame pauli_frame;
  DensityMatrix post_state;  // branch-summed channel output
  double duration = 0.0;     // scheduled physical duration, us

  // Sub-branch visibility for the filtered branches.
  double abort_probability = 0.0;
  std::optional<DensityMatrix> success_state;  // renormalized
  std::optional<DensityMatrix> abort_state;    // renormalized
};

// Fig.-2(b)-style no-decay correction of the (0,0) syndrome branch with ideal
// gates: ancilla kickback gadget + outcome-conditioned repair rotation.
// Input must be supported on the even/even parity sector.
DensityMatrix correct_no_decay(const DensityMatrix& rho_branch, double p);

// Filter + reset + re-encode for the single-decay branches. side = 12 for the
// (1,0) branch (decay in pair A), 34 for (0,1). Ideal gates.
CorrectionOutcome correct_single_decay(const DensityMatrix& rho_branch, int side, double p);

// (1,1) branch: state passed through unchanged.
CorrectionOutcome correct_uncorrectable(const DensityMatrix& rho_branch);

// Applies the recorded Pauli physically.
DensityMatrix frame_resolve(const CorrectionOutcome& outcome);

struct CorrectionStats {
  // Branch weights keyed by (b1,b2) for the most recent round.
  std::array<std::array<double, 2>, 2> syndrome_probability{};
  double abort_weight = 0.0;      // total FilterAbort weight this round
  double discarded_weight = 0.0;  // weight removed under discard policy
  double repair_weight = 0.0;     // weight of the gadget branch needing repair
};

struct FullCorrectionOptions {
  double p_gate = 0.0;
  double delta_p = 0.0;        // correction angles computed from p + delta_p
  bool discard_aborts = false; // abort policy: discard instead of continue
};

struct FullCorrectionResult {
  DensityMatrix post_state;  // trace < 1 iff discard policy removed weight
  CorrectionStats stats;
};

// One complete correction round (deterministic branch sum) on a 16-dim state:
// fused syndrome extraction + branch correction + re-encode, with optional
// depolarizing gate noise after every elementary gate and single-qubit faults
// on ancilla preparation/measurement and resets.
FullCorrectionResult full_correction(const DensityMatrix& rho, double p,
                                     const FullCorrectionOptions& options = {});

struct OperatorRecovery {
  std::string label;                 // e.g. "K_0000"
  double lambda = 0.0;               // smallest eigenvalue of Pi K^dag K Pi
  double distortion_norm = 0.0;      // operator norm of Q_s
  ComplexOperator recovery_unitary;  // 16x16 unitary extending U_s; U^dag recovers
  bool degenerate = false;           // K_s Pi ~ 0, recovery undefined
  std::string diagnostics;
};

struct RecoveryAnalysis {
  std::vector<OperatorRecovery> operators;
  double fidelity_bound = 0.0;  // sum of lambdas
};

// Polar-decomposition analysis K_s Pi = U_s (sqrt(lambda_s) I + Q_s) Pi for
// the five weight<=1 operators of the 4-qubit damping channel.
RecoveryAnalysis recovery_analysis(const KrausChannel& channel, const CodeSpec& code);

// --- low-level round engine (shared by experiments) -------------------------

struct RoundOptions {
  double p = 0.0;        // per-interval decay probability (sets filter/gadget angles too)
  double p_gate = 0.0;
  double delta_p = 0.0;
  bool discard_aborts = false;
};

// Applies the noisy correction round to an arbitrary complex 16x16 matrix
// (linear map; used on density matrices and, columnwise, anywhere linearity
// is exploited). Damping/evolution are NOT included here.
void correction_round_inplace(ComplexOperator& rho16, const RoundOptions& options,
                              CorrectionStats* stats = nullptr);

// Physical schedule of one correction branch on the linear chain, SWAPs
// included; with_repair selects the costlier gadget outcome for branch (0,0).
CircuitSchedule correction_branch_schedule(CorrectionBranch branch, bool with_repair);

// The costliest branch schedule (gadget + repair).
CircuitSchedule worst_case_round_schedule();

// Correction angles derived from the decay probability.
struct CorrectionAngles {
  double theta = 0.0;   // atan((1-p)^2)
  double xi = 0.0;      // pi/4 - theta (ancilla preparation)
  double delta2 = 0.0;  // pi/4 - atan((1-p)^4) (repair rotation)
  double phi = 0.0;     // acos(1-p) (filter)
};
CorrectionAngles correction_angles(double p);

}  // namespace qecmag
