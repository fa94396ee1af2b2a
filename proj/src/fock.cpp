#include "micromacro/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace mm {

namespace {

bool all_finite(const CVector& v) { return v.allFinite(); }

int tail_window(int d) { return std::min(4, d / 4); }

double tail_of(const CVector& v) {
  const int d = static_cast<int>(v.size());
  const int w = tail_window(d);
  return w == 0 ? 0.0 : v.tail(w).squaredNorm();
}

bool tail_converged(double tail, double sq_norm) {
  if (sq_norm <= 0.0) return true;
  return tail / sq_norm < numeric_policy().tail_tol;
}

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const CMatrix& m) {
  return max_abs(m - m.adjoint()) <= numeric_policy().hermiticity_tol * std::max(1.0, max_abs(m));
}

double entropy_bits(const Eigen::VectorXd& probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 1e-300) s -= p * std::log2(p);
  return s;
}

void check_mode_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw Error(ErrorKind::InvalidDimension, "state needs at least one mode");
  for (int d : dims)
    if (d < 1) throw Error(ErrorKind::InvalidDimension, "mode dimension must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// States

ModeState::ModeState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) throw Error(ErrorKind::InvalidDimension, "empty mode state");
  if (!all_finite(amps_)) throw Error(ErrorKind::InvalidArgument, "non-finite amplitude");
  converged_ = tail_converged(tail_of(amps_), amps_.squaredNorm());
}

ModeState ModeState::basis(int n, int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be positive");
  if (n < 0 || n >= dim) throw Error(ErrorKind::InvalidArgument, "basis index outside truncation");
  CVector v = CVector::Zero(dim);
  v[n] = 1.0;
  return ModeState(std::move(v));
}

double ModeState::tail_mass() const { return tail_of(amps_); }

TwoModeState::TwoModeState(CMatrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() < 1 || coeffs_.cols() < 1) throw Error(ErrorKind::InvalidDimension, "empty two-mode state");
  if (!coeffs_.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite amplitude");
  const int wa = tail_window(dim_a());
  const int wb = tail_window(dim_b());
  const double tail = (wa ? coeffs_.bottomRows(wa).squaredNorm() : 0.0) +
                      (wb ? coeffs_.rightCols(wb).squaredNorm() : 0.0);
  converged_ = tail_converged(tail, coeffs_.squaredNorm());
}

CVector TwoModeState::flattened() const {
  CVector flat(coeffs_.size());
  for (int j = 0; j < dim_a(); ++j)
    for (int k = 0; k < dim_b(); ++k) flat[j * dim_b() + k] = coeffs_(j, k);
  return flat;
}

TwoModeState TwoModeState::from_flat(const CVector& flat, int dim_a, int dim_b) {
  if (flat.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "flat vector does not match two-mode dimensions");
  CMatrix c(dim_a, dim_b);
  for (int j = 0; j < dim_a; ++j)
    for (int k = 0; k < dim_b; ++k) c(j, k) = flat[j * dim_b + k];
  return TwoModeState(std::move(c));
}

MultiModeState::MultiModeState(std::vector<int> dims, CVector amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  check_mode_dims(dims_);
  if (amps_.size() != product(dims_)) throw Error(ErrorKind::DimensionMismatch, "amplitude count does not match dims");
  if (!all_finite(amps_)) throw Error(ErrorKind::InvalidArgument, "non-finite amplitude");
}

MultiModeState MultiModeState::vacuum(std::vector<int> dims) {
  check_mode_dims(dims);
  CVector v = CVector::Zero(product(dims));
  v[0] = 1.0;
  return MultiModeState(std::move(dims), std::move(v));
}

std::vector<int> MultiModeState::strides() const {
  std::vector<int> s(dims_.size(), 1);
  for (int k = modes() - 2; k >= 0; --k) s[k] = s[k + 1] * dims_[k + 1];
  return s;
}

DensityOperator::DensityOperator(CMatrix matrix, std::vector<int> dims)
    : rho_(std::move(matrix)), dims_(std::move(dims)) {
  check_mode_dims(dims_);
  if (rho_.rows() != rho_.cols() || rho_.rows() != product(dims_))
    throw Error(ErrorKind::DimensionMismatch, "density matrix shape does not match dims");
  if (!rho_.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite density matrix entry");
  if (!is_hermitian(rho_)) throw Error(ErrorKind::NonHermitian, "density matrix is not Hermitian");
}

DensityOperator DensityOperator::pure(const ModeState& s) {
  return DensityOperator(s.amplitudes() * s.amplitudes().adjoint(), {s.dim()});
}

DensityOperator DensityOperator::pure(const TwoModeState& s) {
  const CVector v = s.flattened();
  return DensityOperator(v * v.adjoint(), {s.dim_a(), s.dim_b()});
}

double DensityOperator::purity() const { return (rho_ * rho_).trace().real(); }

DensityOperator DensityOperator::normalized() const {
  const double tr = trace();
  if (!(tr > numeric_policy().zero_norm_tol)) throw Error(ErrorKind::ZeroState, "density operator has zero trace");
  return DensityOperator(rho_ / tr, dims_);
}

// ---------------------------------------------------------------------------
// Operators

MatrixOperator::MatrixOperator(CMatrix matrix, std::vector<int> dims, OperatorKind kind)
    : m_(std::move(matrix)), dims_(std::move(dims)), kind_(kind) {
  check_mode_dims(dims_);
  if (m_.rows() != m_.cols() || m_.rows() != product(dims_))
    throw Error(ErrorKind::DimensionMismatch, "operator shape does not match dims");
}

MatrixOperator MatrixOperator::operator*(const MatrixOperator& rhs) const {
  if (dims_ != rhs.dims_) throw Error(ErrorKind::DimensionMismatch, "operator product of mismatched spaces");
  const bool unitary = kind_ == OperatorKind::Unitary && rhs.kind_ == OperatorKind::Unitary;
  return MatrixOperator(m_ * rhs.m_, dims_, unitary ? OperatorKind::Unitary : OperatorKind::General);
}

MatrixOperator MatrixOperator::operator+(const MatrixOperator& rhs) const {
  if (dims_ != rhs.dims_) throw Error(ErrorKind::DimensionMismatch, "operator sum of mismatched spaces");
  const bool anti = kind_ == OperatorKind::AntiHermitian && rhs.kind_ == OperatorKind::AntiHermitian;
  return MatrixOperator(m_ + rhs.m_, dims_, anti ? OperatorKind::AntiHermitian : OperatorKind::General);
}

MatrixOperator MatrixOperator::operator-(const MatrixOperator& rhs) const { return *this + rhs.scaled(-1.0); }

MatrixOperator MatrixOperator::scaled(Complex factor) const {
  const bool keeps_anti = kind_ == OperatorKind::AntiHermitian && factor.imag() == 0.0;
  return MatrixOperator(m_ * factor, dims_, keeps_anti ? OperatorKind::AntiHermitian : OperatorKind::General);
}

MatrixOperator MatrixOperator::adjoint() const { return MatrixOperator(m_.adjoint(), dims_, kind_); }

MatrixOperator identity(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "identity needs d >= 1");
  return MatrixOperator(CMatrix::Identity(d, d), {d}, OperatorKind::Unitary);
}

MatrixOperator ladder(int d) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "ladder operator needs d >= 2");
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return MatrixOperator(std::move(a), {d});
}

MatrixOperator creation(int d) { return ladder(d).adjoint(); }

MatrixOperator number_operator(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "number operator needs d >= 1");
  CMatrix n = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return MatrixOperator(std::move(n), {d});
}

MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b) {
  if (a.dims().size() != 1 || b.dims().size() != 1)
    throw Error(ErrorKind::DimensionMismatch, "kron expects single-mode factors");
  const int da = a.size();
  const int db = b.size();
  CMatrix m(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return MatrixOperator(std::move(m), {da, db});
}

MatrixOperator expm_generator(const MatrixOperator& generator) {
  const CMatrix& g = generator.matrix();
  if (!g.allFinite()) throw Error(ErrorKind::InvalidOperator, "generator has non-finite entries");
  const double scale = std::max(1.0, max_abs(g));
  const bool anti_hermitian = max_abs(g + g.adjoint()) <= numeric_policy().hermiticity_tol * scale;
  if (anti_hermitian) {
    // exp(G) = exp(-iH) with H = iG Hermitian.
    const CMatrix h = Complex(0.0, 1.0) * g;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (h + h.adjoint()));
    if (eig.info() != Eigen::Success) throw Error(ErrorKind::Convergence, "eigendecomposition of generator failed");
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    CVector phases(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) phases[k] = std::polar(1.0, -lambda[k]);
    const CMatrix& v = eig.eigenvectors();
    return MatrixOperator(v * phases.asDiagonal() * v.adjoint(), generator.dims(), OperatorKind::Unitary);
  }
  CMatrix e = g.exp();
  if (!e.allFinite()) throw Error(ErrorKind::InvalidOperator, "matrix exponential overflowed");
  return MatrixOperator(std::move(e), generator.dims());
}

// ---------------------------------------------------------------------------
// Application

ModeState apply(const MatrixOperator& op, const ModeState& s) {
  if (op.dims().size() != 1 || op.size() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "single-mode operator does not match state dimension");
  return ModeState(op.matrix() * s.amplitudes());
}

TwoModeState apply(const MatrixOperator& op, const TwoModeState& s, Mode mode) {
  if (op.dims().size() != 1) throw Error(ErrorKind::DimensionMismatch, "expected a single-mode operator");
  if (mode == Mode::A) {
    if (op.size() != s.dim_a()) throw Error(ErrorKind::DimensionMismatch, "operator does not match mode A");
    return TwoModeState(op.matrix() * s.coeffs());
  }
  if (op.size() != s.dim_b()) throw Error(ErrorKind::DimensionMismatch, "operator does not match mode B");
  return TwoModeState(s.coeffs() * op.matrix().transpose());
}

TwoModeState apply(const MatrixOperator& op, const TwoModeState& s) {
  if (op.dims() != std::vector<int>{s.dim_a(), s.dim_b()})
    throw Error(ErrorKind::DimensionMismatch, "two-mode operator does not match state");
  return TwoModeState::from_flat(op.matrix() * s.flattened(), s.dim_a(), s.dim_b());
}

MultiModeState apply(const MatrixOperator& op, const MultiModeState& s, int mode) {
  if (mode < 0 || mode >= s.modes()) throw Error(ErrorKind::ModeOutOfRange, "mode index out of range");
  if (op.dims().size() != 1 || op.size() != s.dims()[mode])
    throw Error(ErrorKind::DimensionMismatch, "operator does not match mode dimension");
  const int d = s.dims()[mode];
  const int stride = s.strides()[mode];
  const int outer = static_cast<int>(s.amplitudes().size()) / (d * stride);
  CVector out(s.amplitudes().size());
  CVector local(d);
  for (int o = 0; o < outer; ++o)
    for (int i = 0; i < stride; ++i) {
      const int base = o * d * stride + i;
      for (int j = 0; j < d; ++j) local[j] = s.amplitudes()[base + j * stride];
      const CVector mapped = op.matrix() * local;
      for (int j = 0; j < d; ++j) out[base + j * stride] = mapped[j];
    }
  return MultiModeState(s.dims(), std::move(out));
}

MultiModeState apply(const MatrixOperator& op, const MultiModeState& s, int first, int second) {
  if (first < 0 || first >= s.modes() || second < 0 || second >= s.modes() || first == second)
    throw Error(ErrorKind::ModeOutOfRange, "invalid mode pair");
  const int df = s.dims()[first];
  const int ds = s.dims()[second];
  if (op.dims() != std::vector<int>{df, ds}) throw Error(ErrorKind::DimensionMismatch, "operator does not match mode pair");
  const auto strides = s.strides();
  const int sf = strides[first];
  const int ss = strides[second];
  const CVector& in = s.amplitudes();
  CVector out(in.size());
  CVector local(df * ds);
  for (int idx = 0; idx < in.size(); ++idx) {
    if ((idx / sf) % df != 0 || (idx / ss) % ds != 0) continue;
    for (int jf = 0; jf < df; ++jf)
      for (int js = 0; js < ds; ++js) local[jf * ds + js] = in[idx + jf * sf + js * ss];
    const CVector mapped = op.matrix() * local;
    for (int jf = 0; jf < df; ++jf)
      for (int js = 0; js < ds; ++js) out[idx + jf * sf + js * ss] = mapped[jf * ds + js];
  }
  return MultiModeState(s.dims(), std::move(out));
}

// ---------------------------------------------------------------------------
// Composition and reduction

TwoModeState tensor(const ModeState& a, const ModeState& b) {
  return TwoModeState(a.amplitudes() * b.amplitudes().transpose());
}

MultiModeState tensor(const MultiModeState& a, const MultiModeState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  CVector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()[i] * b.amplitudes();
  return MultiModeState(std::move(dims), std::move(v));
}

MultiModeState as_multimode(const TwoModeState& s) { return MultiModeState({s.dim_a(), s.dim_b()}, s.flattened()); }

MultiModeState project(const MultiModeState& s, int mode, int n) {
  if (mode < 0 || mode >= s.modes()) throw Error(ErrorKind::ModeOutOfRange, "mode index out of range");
  if (s.modes() < 2) throw Error(ErrorKind::InvalidArgument, "cannot project away the only mode");
  const int d = s.dims()[mode];
  if (n < 0 || n >= d) throw Error(ErrorKind::InvalidArgument, "projection outcome outside truncation");
  const int stride = s.strides()[mode];
  std::vector<int> dims = s.dims();
  dims.erase(dims.begin() + mode);
  CVector out(s.amplitudes().size() / d);
  Eigen::Index w = 0;
  for (Eigen::Index idx = 0; idx < s.amplitudes().size(); ++idx)
    if ((idx / stride) % d == n) out[w++] = s.amplitudes()[idx];
  return MultiModeState(std::move(dims), std::move(out));
}

DensityOperator partial_trace(const TwoModeState& s, Mode keep) {
  const CMatrix& c = s.coeffs();
  if (keep == Mode::A) return DensityOperator(c * c.adjoint(), {s.dim_a()});
  return DensityOperator(c.transpose() * c.conjugate(), {s.dim_b()});
}

namespace {

struct KeepSplit {
  std::vector<int> keep_dims;
  int keep_size = 1;
  int rest_size = 1;
  std::vector<int> keep_index;  // per flat index
  std::vector<int> rest_index;
};

KeepSplit split_indices(const std::vector<int>& dims, std::span<const int> keep) {
  if (keep.empty()) throw Error(ErrorKind::InvalidArgument, "keep-set is empty");
  const int modes = static_cast<int>(dims.size());
  std::vector<bool> kept(modes, false);
  KeepSplit out;
  for (int m : keep) {
    if (m < 0 || m >= modes) throw Error(ErrorKind::ModeOutOfRange, "keep mode out of range");
    if (kept[m]) throw Error(ErrorKind::InvalidArgument, "duplicate mode in keep-set");
    kept[m] = true;
    out.keep_dims.push_back(dims[m]);
    out.keep_size *= dims[m];
  }
  std::vector<int> rest;
  for (int m = 0; m < modes; ++m)
    if (!kept[m]) {
      rest.push_back(m);
      out.rest_size *= dims[m];
    }
  const int total = product(dims);
  std::vector<int> strides(modes, 1);
  for (int k = modes - 2; k >= 0; --k) strides[k] = strides[k + 1] * dims[k + 1];
  out.keep_index.resize(total);
  out.rest_index.resize(total);
  for (int idx = 0; idx < total; ++idx) {
    int ki = 0;
    for (int m : keep) ki = ki * dims[m] + (idx / strides[m]) % dims[m];
    int ri = 0;
    for (int m : rest) ri = ri * dims[m] + (idx / strides[m]) % dims[m];
    out.keep_index[idx] = ki;
    out.rest_index[idx] = ri;
  }
  return out;
}

}  // namespace

DensityOperator reduced_density(const MultiModeState& s, std::span<const int> keep) {
  const KeepSplit split = split_indices(s.dims(), keep);
  CMatrix m = CMatrix::Zero(split.keep_size, split.rest_size);
  for (Eigen::Index idx = 0; idx < s.amplitudes().size(); ++idx)
    m(split.keep_index[idx], split.rest_index[idx]) = s.amplitudes()[idx];
  return DensityOperator(m * m.adjoint(), split.keep_dims);
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const KeepSplit split = split_indices(rho.dims(), keep);
  // full_index(k, r) inverts the (keep, rest) split.
  Eigen::MatrixXi full(split.keep_size, split.rest_size);
  for (int idx = 0; idx < rho.size(); ++idx) full(split.keep_index[idx], split.rest_index[idx]) = idx;
  CMatrix out = CMatrix::Zero(split.keep_size, split.keep_size);
  for (int r = 0; r < split.rest_size; ++r)
    for (int a = 0; a < split.keep_size; ++a)
      for (int b = 0; b < split.keep_size; ++b) out(a, b) += rho.matrix()(full(a, r), full(b, r));
  return DensityOperator(std::move(out), split.keep_dims);
}

ModeState resized(const ModeState& s, int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be positive");
  if (dim == s.dim()) return s;
  CVector v = CVector::Zero(dim);
  const int keep = std::min(dim, s.dim());
  v.head(keep) = s.amplitudes().head(keep);
  if (dim < s.dim()) {
    const double dropped = s.amplitudes().tail(s.dim() - dim).squaredNorm();
    if (dropped > numeric_policy().leakage_tol * std::max(1.0, s.squared_norm()))
      throw Error(ErrorKind::Leakage, "truncation would drop populated Fock levels");
  }
  return ModeState(std::move(v));
}

TwoModeState resized(const TwoModeState& s, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be positive");
  CMatrix c = CMatrix::Zero(dim_a, dim_b);
  const int ka = std::min(dim_a, s.dim_a());
  const int kb = std::min(dim_b, s.dim_b());
  c.topLeftCorner(ka, kb) = s.coeffs().topLeftCorner(ka, kb);
  const double dropped = s.squared_norm() - c.squaredNorm();
  if (dropped > numeric_policy().leakage_tol * std::max(1.0, s.squared_norm()))
    throw Error(ErrorKind::Leakage, "truncation would drop populated Fock levels");
  return TwoModeState(std::move(c));
}

// ---------------------------------------------------------------------------
// Scalars

Complex inner(const ModeState& a, const ModeState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "inner product of different dimensions");
  return a.amplitudes().dot(b.amplitudes());  // conjugates the left operand
}

Complex inner(const TwoModeState& a, const TwoModeState& b) {
  if (a.dim_a() != b.dim_a() || a.dim_b() != b.dim_b())
    throw Error(ErrorKind::DimensionMismatch, "inner product of different dimensions");
  return (a.coeffs().conjugate().cwiseProduct(b.coeffs())).sum();
}

double norm(const ModeState& s) { return s.amplitudes().norm(); }
double norm(const TwoModeState& s) { return s.coeffs().norm(); }

Normalized<ModeState> normalize(const ModeState& s) {
  const double n = norm(s);
  if (!(n * n > numeric_policy().zero_norm_tol)) throw Error(ErrorKind::ZeroState, "cannot normalize a zero state");
  return {ModeState(s.amplitudes() / n), n};
}

Normalized<TwoModeState> normalize(const TwoModeState& s) {
  const double n = norm(s);
  if (!(n * n > numeric_policy().zero_norm_tol)) throw Error(ErrorKind::ZeroState, "cannot normalize a zero state");
  return {TwoModeState(s.coeffs() / n), n};
}

double fidelity(const ModeState& a, const ModeState& b) {
  const int d = std::max(a.dim(), b.dim());
  CVector va = CVector::Zero(d);
  CVector vb = CVector::Zero(d);
  va.head(a.dim()) = a.amplitudes();
  vb.head(b.dim()) = b.amplitudes();
  const double denom = va.squaredNorm() * vb.squaredNorm();
  if (!(denom > 0.0)) throw Error(ErrorKind::ZeroState, "fidelity with a zero state");
  return std::norm(va.dot(vb)) / denom;
}

double fidelity(const TwoModeState& a, const TwoModeState& b) {
  const int da = std::max(a.dim_a(), b.dim_a());
  const int db = std::max(a.dim_b(), b.dim_b());
  CMatrix ca = CMatrix::Zero(da, db);
  CMatrix cb = CMatrix::Zero(da, db);
  ca.topLeftCorner(a.dim_a(), a.dim_b()) = a.coeffs();
  cb.topLeftCorner(b.dim_a(), b.dim_b()) = b.coeffs();
  const double denom = ca.squaredNorm() * cb.squaredNorm();
  if (!(denom > 0.0)) throw Error(ErrorKind::ZeroState, "fidelity with a zero state");
  return std::norm((ca.conjugate().cwiseProduct(cb)).sum()) / denom;
}

double fidelity(const TwoModeState& psi, const DensityOperator& rho) {
  if (rho.dims() != std::vector<int>{psi.dim_a(), psi.dim_b()})
    throw Error(ErrorKind::DimensionMismatch, "fidelity: state and density operator dims differ");
  const CVector v = psi.flattened();
  const double denom = rho.trace() * v.squaredNorm();
  if (!(denom > 0.0)) throw Error(ErrorKind::ZeroState, "fidelity with a zero state");
  return (v.adjoint() * rho.matrix() * v)(0, 0).real() / denom;
}

namespace {

Complex phase_fix(const CVector& v) {
  const double threshold = 1e-12 * (v.size() ? v.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (std::abs(v[k]) > threshold) return std::conj(v[k]) / std::abs(v[k]);
  return 1.0;
}

}  // namespace

ModeState canonical_phase(const ModeState& s) { return ModeState(s.amplitudes() * phase_fix(s.amplitudes())); }

TwoModeState canonical_phase(const TwoModeState& s) {
  return TwoModeState(s.coeffs() * phase_fix(s.flattened()));
}

void require_normalized(double squared_norm, const char* what) {
  if (std::abs(squared_norm - 1.0) > numeric_policy().normalization_tol)
    throw Error(ErrorKind::RequiresNormalized, std::string(what) + " requires a normalized state");
}

double mean_photon(const ModeState& s) {
  require_normalized(s.squared_norm(), "mean_photon");
  double n = 0.0;
  for (int k = 0; k < s.dim(); ++k) n += k * std::norm(s[k]);
  return n;
}

double mean_photon(const TwoModeState& s) {
  require_normalized(s.squared_norm(), "mean_photon");
  double n = 0.0;
  for (int j = 0; j < s.dim_a(); ++j)
    for (int k = 0; k < s.dim_b(); ++k) n += (j + k) * std::norm(s(j, k));
  return n;
}

Eigen::VectorXd schmidt_coefficients(const TwoModeState& s) {
  Eigen::BDCSVD<CMatrix> svd(s.coeffs());
  return svd.singularValues();
}

double schmidt_entropy(const TwoModeState& s, Mode side) {
  require_normalized(s.squared_norm(), "schmidt_entropy");
  return von_neumann_entropy(partial_trace(s, side));
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.matrix(), Eigen::EigenvaluesOnly);
  return entropy_bits(eig.eigenvalues());
}

double log_negativity(const DensityOperator& rho_in, int split) {
  const auto& dims = rho_in.dims();
  if (split < 1 || split >= static_cast<int>(dims.size()))
    throw Error(ErrorKind::InvalidArgument, "bipartition must leave both sides non-empty");
  const DensityOperator rho = rho_in.normalized();
  const int da = std::accumulate(dims.begin(), dims.begin() + split, 1, std::multiplies<>());
  const int db = rho.size() / da;
  CMatrix pt(rho.size(), rho.size());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) pt(a * db + b, a2 * db + b2) = rho.matrix()(a * db + b2, a2 * db + b);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(pt, Eigen::EigenvaluesOnly);
  return std::log2(eig.eigenvalues().cwiseAbs().sum());
}

}  // namespace mm
