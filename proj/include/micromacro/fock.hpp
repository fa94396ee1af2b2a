#pragma once

// Dense linear algebra on truncated bosonic Fock spaces.
//
// States and operators are plain values. Nothing here renormalizes
// implicitly: conditioning and non-unitary operators return sub-normalized
// (or super-normalized) states whose norm the caller reads off explicitly.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "micromacro/errors.hpp"
#include "micromacro/numeric_policy.hpp"

namespace mm {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class Mode { A = 0, B = 1 };

/// Amplitudes c_n over |0>, ..., |d-1> of a single bosonic mode.
class ModeState {
 public:
  explicit ModeState(CVector amplitudes);

  static ModeState basis(int n, int dim);
  static ModeState vacuum(int dim) { return basis(0, dim); }

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](int n) const { return amps_[n]; }

  double squared_norm() const { return amps_.squaredNorm(); }
  /// Mass in the top min(4, d/4) Fock levels.
  double tail_mass() const;
  /// tail_mass() relative to the squared norm was below tail_tol at construction.
  bool converged() const { return converged_; }

 private:
  CVector amps_;
  bool converged_;
};

/// Coefficients c[j][k] of sum c_jk |j>_A |k>_B.
class TwoModeState {
 public:
  explicit TwoModeState(CMatrix coeffs);

  int dim_a() const { return static_cast<int>(coeffs_.rows()); }
  int dim_b() const { return static_cast<int>(coeffs_.cols()); }
  const CMatrix& coeffs() const { return coeffs_; }
  Complex operator()(int j, int k) const { return coeffs_(j, k); }

  double squared_norm() const { return coeffs_.squaredNorm(); }
  /// Row-major flattening, index j * dim_b + k.
  CVector flattened() const;
  static TwoModeState from_flat(const CVector& flat, int dim_a, int dim_b);

  bool converged() const { return converged_; }

 private:
  CMatrix coeffs_;
  bool converged_;
};

/// Pure state of several modes, row-major with mode 0 most significant.
class MultiModeState {
 public:
  MultiModeState(std::vector<int> dims, CVector amplitudes);

  static MultiModeState vacuum(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int modes() const { return static_cast<int>(dims_.size()); }
  const CVector& amplitudes() const { return amps_; }
  double squared_norm() const { return amps_.squaredNorm(); }
  std::vector<int> strides() const;

 private:
  std::vector<int> dims_;
  CVector amps_;
};

/// Hermitian positive operator over one or more modes (dims list the factors).
class DensityOperator {
 public:
  DensityOperator(CMatrix matrix, std::vector<int> dims);

  static DensityOperator pure(const ModeState& s);
  static DensityOperator pure(const TwoModeState& s);

  const CMatrix& matrix() const { return rho_; }
  const std::vector<int>& dims() const { return dims_; }
  int size() const { return static_cast<int>(rho_.rows()); }
  double trace() const { return rho_.trace().real(); }
  double purity() const;
  /// Divides by the trace; throws ZeroState for a vanishing trace.
  DensityOperator normalized() const;

 private:
  CMatrix rho_;
  std::vector<int> dims_;
};

enum class OperatorKind { General, AntiHermitian, Unitary };

/// Dense operator on one mode (dims = {d}) or two modes (dims = {d_A, d_B},
/// acting on the row-major flattened index).
class MatrixOperator {
 public:
  MatrixOperator(CMatrix matrix, std::vector<int> dims, OperatorKind kind = OperatorKind::General);

  const CMatrix& matrix() const { return m_; }
  const std::vector<int>& dims() const { return dims_; }
  OperatorKind kind() const { return kind_; }
  int size() const { return static_cast<int>(m_.rows()); }

  MatrixOperator operator*(const MatrixOperator& rhs) const;
  MatrixOperator operator+(const MatrixOperator& rhs) const;
  MatrixOperator operator-(const MatrixOperator& rhs) const;
  MatrixOperator scaled(Complex factor) const;
  MatrixOperator adjoint() const;

 private:
  CMatrix m_;
  std::vector<int> dims_;
  OperatorKind kind_;
};

// Single-mode operators.
MatrixOperator identity(int d);
MatrixOperator ladder(int d);
MatrixOperator creation(int d);
MatrixOperator number_operator(int d);
/// Two-mode operator from a tensor product of single-mode factors.
MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b);

/// Matrix exponential. Anti-Hermitian generators go through a Hermitian
/// eigendecomposition (exactly unitary up to rounding); anything else uses
/// Pade scaling-and-squaring.
MatrixOperator expm_generator(const MatrixOperator& generator);

ModeState apply(const MatrixOperator& op, const ModeState& s);
TwoModeState apply(const MatrixOperator& op, const TwoModeState& s, Mode mode);
/// Two-mode operator on the full state.
TwoModeState apply(const MatrixOperator& op, const TwoModeState& s);
MultiModeState apply(const MatrixOperator& op, const MultiModeState& s, int mode);
MultiModeState apply(const MatrixOperator& op, const MultiModeState& s, int first, int second);

TwoModeState tensor(const ModeState& a, const ModeState& b);
/// Joins two-mode factors into one multimode state (mode order a then b).
MultiModeState tensor(const MultiModeState& a, const MultiModeState& b);
MultiModeState as_multimode(const TwoModeState& s);

/// Projects `mode` onto |n>; the mode is removed from the result. The
/// squared norm of the result is the outcome probability.
MultiModeState project(const MultiModeState& s, int mode, int n);

DensityOperator partial_trace(const TwoModeState& s, Mode keep);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
DensityOperator reduced_density(const MultiModeState& s, std::span<const int> keep);

/// Zero-pads or truncates to `dim`. Truncation throws Leakage if more than
/// leakage_tol of the squared norm would be dropped.
ModeState resized(const ModeState& s, int dim);
TwoModeState resized(const TwoModeState& s, int dim_a, int dim_b);

Complex inner(const ModeState& a, const ModeState& b);
Complex inner(const TwoModeState& a, const TwoModeState& b);
double norm(const ModeState& s);
double norm(const TwoModeState& s);

template <class State>
struct Normalized {
  State state;
  double weight;  // norm of the input
};

Normalized<ModeState> normalize(const ModeState& s);
Normalized<TwoModeState> normalize(const TwoModeState& s);

/// |<a|b>|^2 / (|a|^2 |b|^2). Pads the shorter state.
double fidelity(const ModeState& a, const ModeState& b);
double fidelity(const TwoModeState& a, const TwoModeState& b);
/// <psi|rho|psi> / (tr(rho) |psi|^2).
double fidelity(const TwoModeState& psi, const DensityOperator& rho);

/// Global phase fixed so the first amplitude above the zero threshold is real positive.
ModeState canonical_phase(const ModeState& s);
TwoModeState canonical_phase(const TwoModeState& s);

double mean_photon(const ModeState& s);
/// Total photon number <n_A + n_B>.
double mean_photon(const TwoModeState& s);

/// Singular values of the coefficient matrix, descending.
Eigen::VectorXd schmidt_coefficients(const TwoModeState& s);
/// Von Neumann entropy (bits) of the reduced state on `side`.
double schmidt_entropy(const TwoModeState& s, Mode side = Mode::A);
double von_neumann_entropy(const DensityOperator& rho);
/// log2 of the trace norm of the partial transpose over the modes from
/// index `split` onwards.
double log_negativity(const DensityOperator& rho, int split = 1);

void require_normalized(double squared_norm, const char* what);

}  // namespace mm
