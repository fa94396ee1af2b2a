#include "micromacro/protocols.hpp"

#include <cmath>
#include <numbers>

namespace mm {

namespace {

void check_transmission(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "transmission must lie in [0, 1]");
}

TwoModeState micro_confined(const TwoModeState& joint) {
  require_normalized(joint.squared_norm(), "micro-macro state");
  return resized(joint, 2, joint.dim_b());
}

ModeState shifted_down(const ModeState& s) {
  CVector v = CVector::Zero(s.dim());
  for (int n = 0; n + 1 < s.dim(); ++n) v[n] = std::sqrt(n + 1.0) * s[n + 1];
  return ModeState(std::move(v));
}

MicroMacroState apply_micro(const CMatrix& gate, const MicroMacroState& s) {
  const MatrixOperator op(gate, {2}, OperatorKind::Unitary);
  return MicroMacroState(apply(op, s.joint(), Mode::A), s.herald_weight());
}

struct RemoteRun {
  CMatrix rho;  // unnormalized, kept modes (A, B), each of dimension dim
  double probability;
  int dim;
};

// Modes: 0 Alice kept, 1 Alice sent, 2 Bob kept, 3 Bob sent, 4/5 loss ancillas.
RemoteRun simulate_remote(const RemoteParams& p, int dim) {
  const MultiModeState sources = tensor(as_multimode(tmsv(p.lambda_a, dim)), as_multimode(tmsv(p.lambda_b, dim)));
  MultiModeState s = tensor(sources, MultiModeState::vacuum({dim, dim}));
  s = apply(beamsplitter(p.eta_a, dim, dim), s, 1, 4);
  s = apply(beamsplitter(p.eta_b, dim, dim), s, 3, 5);
  s = apply(beamsplitter(0.5, dim, dim), s, 1, 3);
  s = project(s, 1, 0);  // first output port dark
  s = project(s, 2, 1);  // second output port (old mode 3) clicks
  const std::array<int, 2> keep{0, 1};
  const DensityOperator rho = reduced_density(s, keep);
  return {rho.matrix(), s.squared_norm(), dim};
}

// Embeds a (d x d)-mode density matrix into the (d+1 x d+1) layout.
CMatrix embed(const CMatrix& rho, int d) {
  const int e = d + 1;
  CMatrix out = CMatrix::Zero(e * e, e * e);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int a2 = 0; a2 < d; ++a2)
        for (int b2 = 0; b2 < d; ++b2) out(a * e + b, a2 * e + b2) = rho(a * d + b, a2 * d + b2);
  return out;
}

void check_remote(const RemoteParams& p) {
  auto lambda_ok = [](double l) { return l >= 0.0 && l < 1.0; };
  auto eta_ok = [](double e) { return e > 0.0 && e <= 1.0; };
  if (!lambda_ok(p.lambda_a) || !lambda_ok(p.lambda_b))
    throw Error(ErrorKind::InvalidArgument, "TMSV parameters must lie in [0, 1)");
  if (!eta_ok(p.eta_a) || !eta_ok(p.eta_b))
    throw Error(ErrorKind::InvalidArgument, "channel transmissivities must lie in (0, 1]");
}

}  // namespace

MicroMacroState::MicroMacroState(const TwoModeState& joint, double herald_weight)
    : joint_(micro_confined(joint)), herald_weight_(herald_weight) {
  if (!(herald_weight > 0.0) || !std::isfinite(herald_weight))
    throw Error(ErrorKind::InvalidArgument, "herald weight must be positive");
}

ModeState MicroMacroState::branch(int j) const {
  if (j < 0 || j > 1) throw Error(ErrorKind::InvalidArgument, "micro outcome must be 0 or 1");
  return ModeState(joint_.coeffs().row(j).transpose());
}

MicroMacroState scheme_a(double r, int d) {
  const TwoModeState photon = tensor(ModeState::basis(1, 2), ModeState::basis(0, 2));
  const TwoModeState path_entangled = apply(beamsplitter(0.5, 2, 2), photon);
  const MatrixOperator squeeze = adaptive_squeezing_operator(r, 1, d);
  return MicroMacroState(apply(squeeze, resized(path_entangled, 2, squeeze.size()), Mode::B));
}

HeraldOutcome<MicroMacroState> scheme_c(const ModeState& input, double transmission) {
  require_normalized(input.squared_norm(), "scheme_c");
  check_transmission(transmission);
  const TwoModeState joint = tensor(ModeState::basis(1, 2), input);
  const TwoModeState sub_a = apply(ladder(2), joint, Mode::A);
  const CMatrix sub_b = tensor(ModeState::basis(1, 2), shifted_down(input)).coeffs();
  const TwoModeState out(std::sqrt(transmission) * sub_a.coeffs() + std::sqrt(1.0 - transmission) * sub_b);
  const auto [state, weight] = normalize(out);
  const double rate = weight * weight;
  return {MicroMacroState(state, rate), rate, "joint-subtraction"};
}

double t_balanced(const ModeState& input) {
  const double n = mean_photon(input);
  return n / (1.0 + n);
}

MacroComponents macro_components(const MicroMacroState& s) {
  const CVector r0 = s.joint().coeffs().row(0).transpose();
  const CVector r1 = s.joint().coeffs().row(1).transpose();
  const ModeState plus((r0 + r1) / std::numbers::sqrt2);
  const ModeState minus((r0 - r1) / std::numbers::sqrt2);
  return {normalize(plus).state, normalize(minus).state, plus.squared_norm(), minus.squared_norm()};
}

PsiPair psi_pm_from(const ModeState& input, double transmission) {
  require_normalized(input.squared_norm(), "psi_pm_from");
  check_transmission(transmission);
  const double st = std::sqrt(transmission);
  const double sr = std::sqrt(1.0 - transmission);
  const CVector& v = input.amplitudes();
  const CVector av = shifted_down(input).amplitudes();
  return {normalize(ModeState(st * v + sr * av)).state, normalize(ModeState(st * v - sr * av)).state};
}

PsiPair build_psi_pm(int m, double r, double transmission, int d) {
  check_transmission(transmission);
  return psi_pm_from(photon_subtracted_squeezed(m, r, d).state, transmission);
}

HeraldOutcome<DensityOperator> scheme_b(const RemoteParams& params) {
  check_remote(params);
  const NumericPolicy& policy = numeric_policy();
  RemoteRun prev = simulate_remote(params, policy.remote_dim);
  if (prev.probability < policy.impossible_probability)
    throw Error(ErrorKind::ImpossibleOutcome, "herald probability " + std::to_string(prev.probability) + " is zero");
  for (int dim = policy.remote_dim + 1; dim <= policy.remote_max_dim; ++dim) {
    RemoteRun cur = simulate_remote(params, dim);
    const double dp = std::abs(cur.probability - prev.probability) / cur.probability;
    const double drho = (cur.rho / cur.probability - embed(prev.rho / prev.probability, prev.dim)).cwiseAbs().maxCoeff();
    if (dp <= policy.remote_convergence_tol && drho <= policy.remote_convergence_tol) {
      return {DensityOperator(cur.rho / cur.probability, {dim, dim}), cur.probability, "dark,click"};
    }
    prev = std::move(cur);
  }
  throw Error(ErrorKind::Convergence, "remote preparation not converged below remote_max_dim");
}

HeraldOutcome<DensityOperator> scheme_b_at(const RemoteParams& params, int dim) {
  check_remote(params);
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "remote simulation needs dimension >= 2");
  const RemoteRun run = simulate_remote(params, dim);
  if (run.probability < numeric_policy().impossible_probability)
    throw Error(ErrorKind::ImpossibleOutcome, "herald probability " + std::to_string(run.probability) + " is zero");
  return {DensityOperator(run.rho / run.probability, {dim, dim}), run.probability, "dark,click"};
}

double remote_herald_probability(const RemoteParams& params) {
  check_remote(params);
  try {
    return scheme_b(params).probability;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ImpossibleOutcome) return 0.0;
    throw;
  }
}

double coherent_balanced_T(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "cat amplitude must be > 0");
  const double ratio = alpha * CatParam{alpha, Parity::Even}.norm_constant() / CatParam{alpha, Parity::Odd}.norm_constant();
  return ratio * ratio / (1.0 + ratio * ratio);
}

MicroMacroState coherent_scheme(double alpha, double transmission, int d) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "cat amplitude must be > 0");
  return scheme_c(cat(alpha, Parity::Even, d), transmission).state;
}

MicroMacroState hadamard_micro(const MicroMacroState& s) {
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return apply_micro(h / std::numbers::sqrt2, s);
}

MicroMacroState bit_flip_micro(const MicroMacroState& s) {
  CMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  return apply_micro(x, s);
}

std::string_view to_string(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::PhiPlus: return "phi+";
    case BellOutcome::PhiMinus: return "phi-";
    case BellOutcome::PsiPlus: return "psi+";
    case BellOutcome::PsiMinus: return "psi-";
  }
  return "unknown";
}

TeleportResult teleport(Complex c0, Complex c1, const MicroMacroState& resource) {
  if (std::abs(std::norm(c0) + std::norm(c1) - 1.0) > numeric_policy().normalization_tol)
    throw Error(ErrorKind::InvalidArgument, "input qubit must be normalized");
  const CVector chi0 = resource.branch(0).amplitudes();
  const CVector chi1 = resource.branch(1).amplitudes();
  const double h = 1.0 / std::numbers::sqrt2;
  const std::array<CVector, 4> conditioned = {
      h * (c0 * chi0 + c1 * chi1),  // (|00> + |11>)
      h * (c0 * chi0 - c1 * chi1),  // (|00> - |11>)
      h * (c0 * chi1 + c1 * chi0),  // (|01> + |10>)
      h * (c0 * chi1 - c1 * chi0),  // (|01> - |10>)
  };
  TeleportResult result{{ModeState::vacuum(chi0.size()), 0.0, std::string(to_string(BellOutcome::PhiPlus))}, {}};
  for (std::size_t k = 0; k < conditioned.size(); ++k) result.outcome_probability[k] = conditioned[k].squaredNorm();
  const double p = result.outcome_probability[0];
  if (p < numeric_policy().impossible_probability)
    throw Error(ErrorKind::ImpossibleOutcome, "Bell projection has vanishing probability");
  result.output.state = ModeState(conditioned[0] / std::sqrt(p));
  result.output.probability = p;
  return result;
}

double entanglement_of(const MicroMacroState& s) { return schmidt_entropy(s.joint(), Mode::A); }

}  // namespace mm
