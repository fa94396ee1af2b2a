#pragma once

// Heralded micro-macro state generation. Mode A is the microscopic mode
// (confined to {|0>, |1>}); mode B is the macroscopic qumode.

#include <array>
#include <string>
#include <utility>

#include "micromacro/fock.hpp"
#include "micromacro/quadrature.hpp"
#include "micromacro/states.hpp"

namespace mm {

/// Normalized joint state with a 2-level micro mode plus the weight of the
/// conditioning that produced it.
class MicroMacroState {
 public:
  /// Compresses mode A to {|0>, |1>}; throws Leakage if anything sits above |1>.
  MicroMacroState(const TwoModeState& joint, double herald_weight = 1.0);

  const TwoModeState& joint() const { return joint_; }
  double herald_weight() const { return herald_weight_; }
  /// Unnormalized macro-mode state attached to micro outcome |j>.
  ModeState branch(int j) const;

 private:
  TwoModeState joint_;
  double herald_weight_;
};

template <class State>
struct HeraldOutcome {
  State state;
  double probability;
  std::string pattern;
};

/// |1> split on a balanced beamsplitter, then S(r) on mode B:
/// (|1>S(r)|0> + |0>S(r)|1>)/sqrt(2).
MicroMacroState scheme_a(double r, int d = numeric_policy().default_dim);

/// Joint subtraction sqrt(T) a_A + sqrt(1-T) a_B on |1>_A (x) input. The
/// probability field is the squared norm of the unnormalized result: a rate
/// relative to the tap reflectivity, which may exceed 1.
HeraldOutcome<MicroMacroState> scheme_c(const ModeState& input, double transmission);

/// <n> / (1 + <n>) for the input state.
double t_balanced(const ModeState& input);

struct MacroComponents {
  ModeState plus;   // conditioned on micro (|0> + |1>)/sqrt(2), normalized
  ModeState minus;  // conditioned on micro (|0> - |1>)/sqrt(2), normalized
  double weight_plus;
  double weight_minus;
};

MacroComponents macro_components(const MicroMacroState& s);

struct PsiPair {
  ModeState plus;
  ModeState minus;
};

/// |Psi_+/-> proportional to (sqrt(T) a^m +/- sqrt(1-T) a^{m+1}) S(r)|0>, normalized.
PsiPair build_psi_pm(int m, double r, double transmission, int d = numeric_policy().default_dim);
/// Same from an already normalized input a^m S(r)|0>.
PsiPair psi_pm_from(const ModeState& input, double transmission);

struct RemoteParams {
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  double eta_a = 1.0;
  double eta_b = 1.0;
};

/// Two TMSV sources, pure-loss channels on the arms sent to the middle, a
/// 50:50 beamsplitter and a single-photon herald in its second output port
/// (vacuum in the first). Returns the conditioned, normalized state of the
/// two kept modes and the herald probability. Re-runs with growing per-mode
/// truncation until two successive runs agree to remote_convergence_tol.
HeraldOutcome<DensityOperator> scheme_b(const RemoteParams& params);
/// One run at a fixed per-mode dimension, no convergence check.
HeraldOutcome<DensityOperator> scheme_b_at(const RemoteParams& params, int dim);

/// Herald probability alone; 0 instead of an impossible-outcome error.
double remote_herald_probability(const RemoteParams& params);

/// sqrt(T) = sqrt(1-T) alpha N_+/N_-, the T that equalizes both micro branches.
double coherent_balanced_T(double alpha);

/// Joint subtraction on |1>_A (x) even cat. Output sqrt(T)|0>|+> +
/// sqrt(1-T) alpha N_+/N_- |1>|->, normalized, with the rate as herald weight.
MicroMacroState coherent_scheme(double alpha, double transmission, int d = numeric_policy().default_dim);

MicroMacroState hadamard_micro(const MicroMacroState& s);
MicroMacroState bit_flip_micro(const MicroMacroState& s);

enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

struct TeleportResult {
  HeraldOutcome<ModeState> output;          // PhiPlus branch, normalized
  std::array<double, 4> outcome_probability;  // indexed by BellOutcome
};

/// Projects (signal qubit c0|0> + c1|1>) (x) micro mode onto
/// (|00> + |11>)/sqrt(2); the macro mode is left in c0|phi_1> + c1|phi_2>
/// where phi_j is the resource branch on micro |j>. The other three Bell
/// outcomes only report probabilities.
TeleportResult teleport(Complex c0, Complex c1, const MicroMacroState& resource);

std::string_view to_string(BellOutcome outcome);

/// Schmidt entropy of the joint state, in bits.
double entanglement_of(const MicroMacroState& s);

}  // namespace mm
