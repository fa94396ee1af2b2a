#include "micromacro/states.hpp"

#include <cmath>
#include <numbers>

namespace mm {

namespace {

const double kDbPerNeper = 20.0 * std::log10(std::numbers::e);

void check_squeeze(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "squeezing parameter must be finite and >= 0");
}

bool column_converged(const CMatrix& m, int column) {
  const int d = static_cast<int>(m.rows());
  const int w = std::min(4, d / 4);
  const double total = m.col(column).squaredNorm();
  const double tail = w == 0 ? 0.0 : m.col(column).tail(w).squaredNorm();
  return total > 0.0 && tail / total < numeric_policy().adaptive_tail_tol;
}

bool vector_converged(const CVector& v) {
  const int d = static_cast<int>(v.size());
  const int w = std::min(4, d / 4);
  const double total = v.squaredNorm();
  const double tail = w == 0 ? 0.0 : v.tail(w).squaredNorm();
  return total > 0.0 && tail / total < numeric_policy().adaptive_tail_tol;
}

struct AdaptiveSqueeze {
  MatrixOperator op;
  int dim;
};

AdaptiveSqueeze adaptive_squeezing(double r, int n_max, int d) {
  check_squeeze(r);
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "squeezing needs d >= 2");
  if (n_max >= d) throw Error(ErrorKind::InvalidArgument, "Fock input outside truncation");
  for (int dim = d; dim <= numeric_policy().max_dim; dim *= 2) {
    MatrixOperator s = squeezing_operator(r, dim);
    bool ok = true;
    for (int n = 0; n <= n_max && ok; ++n) ok = column_converged(s.matrix(), n);
    if (ok) return {std::move(s), dim};
  }
  throw Error(ErrorKind::Convergence, "squeezed state not converged below max_dim (r = " + std::to_string(r) + ")");
}

}  // namespace

SqueezeParam::SqueezeParam(double r) : r_(r) { check_squeeze(r); }
SqueezeParam SqueezeParam::from_db(double db) { return SqueezeParam(db_to_r(db)); }
double SqueezeParam::db() const { return r_to_db(r_); }

double db_to_r(double db) { return db / kDbPerNeper; }
double r_to_db(double r) { return r * kDbPerNeper; }

double CatParam::norm_constant() const {
  const double overlap = std::exp(-2.0 * alpha * alpha);
  const double inv_sq = parity == Parity::Even ? 2.0 + 2.0 * overlap : 2.0 - 2.0 * overlap;
  if (!(inv_sq > 0.0)) throw Error(ErrorKind::ZeroState, "odd cat at alpha = 0 has no normalization");
  return 1.0 / std::sqrt(inv_sq);
}

Complex legendre(int m, Complex x) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "Legendre order must be >= 0");
  if (m == 0) return 1.0;
  Complex prev = 1.0;
  Complex cur = x;
  for (int n = 1; n < m; ++n) {
    const Complex next = (static_cast<double>(2 * n + 1) * x * cur - static_cast<double>(n) * prev) / static_cast<double>(n + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double subtraction_norm_inv_sq(int m, double r) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "subtraction order must be >= 0");
  check_squeeze(r);
  const double s = std::sinh(r);
  const Complex x(0.0, s);
  const Complex value = std::tgamma(m + 1.0) * std::pow(Complex(0.0, -s), m) * legendre(m, x);
  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value)))
    throw Error(ErrorKind::InvalidArgument, "Legendre normalization evaluated to a non-real value");
  return value.real();
}

MatrixOperator squeezing_operator(double r, int d) {
  check_squeeze(r);
  const MatrixOperator a = ladder(d);
  const MatrixOperator a2 = a * a;
  const MatrixOperator generator(0.5 * r * (a2.adjoint().matrix() - a2.matrix()), {d}, OperatorKind::AntiHermitian);
  return expm_generator(generator);
}

MatrixOperator displacement_operator(Complex beta, int d) {
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()))
    throw Error(ErrorKind::InvalidArgument, "displacement must be finite");
  const MatrixOperator a = ladder(d);
  const MatrixOperator generator(beta * a.adjoint().matrix() - std::conj(beta) * a.matrix(), {d},
                                 OperatorKind::AntiHermitian);
  return expm_generator(generator);
}

int adaptive_squeeze_dim(double r, int n_max, int d) { return adaptive_squeezing(r, n_max, d).dim; }

MatrixOperator adaptive_squeezing_operator(double r, int n_max, int d) { return adaptive_squeezing(r, n_max, d).op; }

ModeState squeezed_vacuum(double r, int d) { return squeezed_fock(r, 0, d); }

ModeState squeezed_fock(double r, int n0, int d) {
  if (n0 < 0) throw Error(ErrorKind::InvalidArgument, "Fock index must be >= 0");
  const AdaptiveSqueeze s = adaptive_squeezing(r, n0, d);
  return ModeState(s.op.matrix().col(n0));
}

ModeState displace(Complex beta, const ModeState& base, int d) {
  for (int dim = std::max(d, base.dim()); dim <= numeric_policy().max_dim; dim *= 2) {
    const ModeState padded = resized(base, dim);
    CVector v = displacement_operator(beta, dim).matrix() * padded.amplitudes();
    if (vector_converged(v) || padded.squared_norm() == 0.0) return ModeState(std::move(v));
  }
  throw Error(ErrorKind::Convergence, "displaced state not converged below max_dim");
}

ModeState coherent(Complex alpha, int d) { return displace(alpha, ModeState::vacuum(std::max(d, 2)), d); }

ModeState cat(double alpha, Parity parity, int d) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "cat amplitude must be >= 0");
  const ModeState plus_alpha = coherent(alpha, d);
  // <n|-alpha> = (-1)^n <n|alpha>, so the opposite-parity entries cancel exactly.
  CVector v = plus_alpha.amplitudes();
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    const bool odd = n % 2 == 1;
    const bool keep = parity == Parity::Even ? !odd : odd;
    v[n] = keep ? 2.0 * v[n] : Complex(0.0);
  }
  return normalize(ModeState(std::move(v))).state;
}

SubtractedState photon_subtracted_from(const ModeState& squeezed, int m, double r) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "subtraction order must be >= 0");
  check_squeeze(r);
  if (m > 0 && r == 0.0) throw Error(ErrorKind::ZeroState, "photon subtraction from the vacuum");
  CVector v = squeezed.amplitudes();
  const Eigen::Index d = v.size();
  for (int k = 0; k < m; ++k) {
    for (Eigen::Index n = 0; n + 1 < d; ++n) v[n] = std::sqrt(static_cast<double>(n + 1)) * v[n + 1];
    v[d - 1] = 0.0;
  }
  const double numeric_norm = v.norm();
  const double expected = std::sqrt(subtraction_norm_inv_sq(m, r));
  ModeState normalized = normalize(ModeState(std::move(v))).state;
  return {std::move(normalized), std::abs(numeric_norm - expected)};
}

SubtractedState photon_subtracted_squeezed(int m, double r, int d) {
  check_squeeze(r);
  if (m > 0 && r == 0.0) throw Error(ErrorKind::ZeroState, "photon subtraction from the vacuum");
  return photon_subtracted_from(squeezed_vacuum(r, d), m, r);
}

TwoModeState tmsv(double lambda, int d) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw Error(ErrorKind::InvalidArgument, "TMSV parameter must lie in [0, 1)");
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be positive");
  CMatrix c = CMatrix::Zero(d, d);
  const double scale = std::sqrt(1.0 - lambda * lambda);
  double power = 1.0;
  for (int n = 0; n < d; ++n) {
    c(n, n) = scale * power;
    power *= lambda;
  }
  return TwoModeState(std::move(c));
}

MatrixOperator beamsplitter(double transmission, int dim_a, int dim_b) {
  if (!(transmission >= 0.0 && transmission <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "beamsplitter transmission must lie in [0, 1]");
  const double theta = std::acos(std::sqrt(transmission));
  const MatrixOperator mix = kron(ladder(dim_a), creation(dim_b)) - kron(creation(dim_a), ladder(dim_b));
  return expm_generator(MatrixOperator(theta * mix.matrix(), mix.dims(), OperatorKind::AntiHermitian));
}

}  // namespace mm
