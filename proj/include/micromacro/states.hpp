#pragma once

#include "micromacro/fock.hpp"

namespace mm {

/// Squeezing strength r >= 0 together with its decibel value 20 r log10(e).
class SqueezeParam {
 public:
  explicit SqueezeParam(double r);
  static SqueezeParam from_db(double db);

  double r() const { return r_; }
  double db() const;

 private:
  double r_;
};

double db_to_r(double db);
double r_to_db(double r);

enum class Parity { Even, Odd };

/// Coherent amplitude and parity of N(|alpha> +/- |-alpha>).
struct CatParam {
  double alpha = 0.0;
  Parity parity = Parity::Even;

  /// N with N^-2 = 2 +/- 2 exp(-2 alpha^2).
  double norm_constant() const;
};

/// Legendre polynomial P_m at a complex argument, three-term recurrence.
Complex legendre(int m, Complex x);

/// N_m^-2 = m! (-i sinh r)^m P_m(i sinh r): the squared norm of a^m S(r)|0>.
/// Throws InvalidArgument if the evaluated value is not real.
double subtraction_norm_inv_sq(int m, double r);

/// S(r) = exp((r/2)(a^dagger^2 - a^2)) on a d-dimensional truncation.
MatrixOperator squeezing_operator(double r, int d);

/// D(beta) = exp(beta a^dagger - conj(beta) a) on a d-dimensional truncation.
MatrixOperator displacement_operator(Complex beta, int d);

/// Smallest dimension d' = d * 2^k at which S(r)|n> for every n <= n_max
/// has tail mass below adaptive_tail_tol. Throws Convergence past max_dim.
int adaptive_squeeze_dim(double r, int n_max, int d);
/// S(r) at adaptive_squeeze_dim(r, n_max, d).
MatrixOperator adaptive_squeezing_operator(double r, int n_max, int d);

ModeState squeezed_vacuum(double r, int d = numeric_policy().default_dim);
ModeState squeezed_fock(double r, int n0, int d = numeric_policy().default_dim);

/// D(beta) applied to `base`, padded to at least d and grown until converged.
ModeState displace(Complex beta, const ModeState& base, int d = numeric_policy().default_dim);
ModeState coherent(Complex alpha, int d = numeric_policy().default_dim);
ModeState cat(double alpha, Parity parity, int d = numeric_policy().default_dim);

struct SubtractedState {
  ModeState state;    // normalized a^m S(r)|0>
  double norm_check;  // |numeric norm of a^m S(r)|0> - 1/N_m|
};

SubtractedState photon_subtracted_squeezed(int m, double r, int d = numeric_policy().default_dim);

/// Subtracts m photons from an already computed squeezed vacuum. Sweeps use
/// this to share one S(r)|0> across several m.
SubtractedState photon_subtracted_from(const ModeState& squeezed, int m, double r);

/// sqrt(1 - lambda^2) sum_{n<d} lambda^n |n, n>.
TwoModeState tmsv(double lambda, int d);

/// Two-mode unitary with a_A^dagger -> sqrt(T) a_A^dagger + sqrt(1-T) a_B^dagger
/// and a_B^dagger -> -sqrt(1-T) a_A^dagger + sqrt(T) a_B^dagger. Exact on total
/// photon number below min(d_A, d_B).
MatrixOperator beamsplitter(double transmission, int dim_a, int dim_b);

}  // namespace mm
