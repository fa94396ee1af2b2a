#include "micromacro/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace mm {

namespace {

constexpr int kPanelOrder = 16;
constexpr double kMinHalfWidth = 6.0;
constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);
const double kPsi0 = std::pow(std::numbers::pi, -0.25);

struct RootTable {
  std::vector<double> root;
  std::vector<double> inv_root;
};

const RootTable& root_table(int count) {
  thread_local RootTable t;
  if (static_cast<int>(t.root.size()) < count) {
    t.root.resize(count);
    t.inv_root.resize(count);
    for (int n = 0; n < count; ++n) {
      t.root[n] = std::sqrt(static_cast<double>(n));
      t.inv_root[n] = n == 0 ? 0.0 : 1.0 / t.root[n];
    }
  }
  return t;
}

// Runs the oscillator recurrence at x, calling visit(n, p_n) with p_n in
// units of exp(log_scale); the caller tracks scale changes through on_rescale.
template <class Visit, class Rescale>
double hermite_sweep(int count, double x, Visit&& visit, Rescale&& on_rescale) {
  const RootTable& t = root_table(count + 1);
  double log_scale = -0.5 * x * x;
  double p_prev = 0.0;
  double p = kPsi0;
  const double root2x = std::numbers::sqrt2 * x;
  visit(0, p);
  for (int n = 0; n + 1 < count; ++n) {
    const double next = (root2x * p - t.root[n] * p_prev) * t.inv_root[n + 1];
    p_prev = p;
    p = next;
    if (std::abs(p) > kRescale) {
      p /= kRescale;
      p_prev /= kRescale;
      log_scale += kLogRescale;
      on_rescale();
    }
    visit(n + 1, p);
  }
  return log_scale;
}

constexpr int kLanes = 8;

// Same recurrence as hermite_sweep for up to kLanes abscissas at once.
template <class Scalar, class Coeffs>
void evaluate_block(const Coeffs& c, int count, const double* x, int lanes, Scalar* out) {
  const RootTable& t = root_table(count + 1);
  double p[kLanes], q[kLanes], r2x[kLanes], log_scale[kLanes];
  Scalar acc[kLanes];
  for (int l = 0; l < kLanes; ++l) {
    const double xl = l < lanes ? x[l] : 0.0;
    p[l] = kPsi0;
    q[l] = 0.0;
    r2x[l] = std::numbers::sqrt2 * xl;
    log_scale[l] = -0.5 * xl * xl;
    acc[l] = c[0] * kPsi0;
  }
  for (int n = 0; n + 1 < count; ++n) {
    const double rn = t.root[n];
    const double inv = t.inv_root[n + 1];
    const auto cn = c[n + 1];
    bool big = false;
    for (int l = 0; l < kLanes; ++l) {
      const double next = (r2x[l] * p[l] - rn * q[l]) * inv;
      q[l] = p[l];
      p[l] = next;
      acc[l] += cn * next;
      big |= std::abs(next) > kRescale;
    }
    if (big) {
      for (int l = 0; l < kLanes; ++l) {
        if (std::abs(p[l]) > kRescale) {
          p[l] /= kRescale;
          q[l] /= kRescale;
          acc[l] /= kRescale;
          log_scale[l] += kLogRescale;
        }
      }
    }
  }
  for (int l = 0; l < lanes; ++l) out[l] = acc[l] * std::exp(log_scale[l]);
}

// Index one past the last nonzero amplitude.
int support_size(const CVector& c) {
  int n = static_cast<int>(c.size());
  while (n > 1 && c[n - 1] == Complex(0.0)) --n;
  return n;
}

template <class Scalar, class Coeffs>
void evaluate_range(const Coeffs& c, int count, std::span<const double> xs, Scalar* out) {
  for (std::size_t i = 0; i < xs.size(); i += kLanes) {
    const int lanes = static_cast<int>(std::min<std::size_t>(kLanes, xs.size() - i));
    evaluate_block<Scalar>(c, count, xs.data() + i, lanes, out + i);
  }
}

std::vector<Complex> evaluate_all(const CVector& c, std::span<const double> xs) {
  const int count = support_size(c);
  std::vector<Complex> psi(xs.size());
  if (c.imag().isZero(0.0)) {
    const std::vector<double> re(c.real().begin(), c.real().end());
    std::vector<double> out(xs.size());
    evaluate_range<double>(re, count, xs, out.data());
    std::copy(out.begin(), out.end(), psi.begin());
  } else {
    evaluate_range<Complex>(c, count, xs, psi.data());
  }
  return psi;
}

// 4 sqrt(2n + 1) covers the classical turning point; the floor keeps the
// vacuum tails below 1e-15.
double grid_half_width(double photon_bound) {
  return std::max(kMinHalfWidth, 4.0 * std::sqrt(2.0 * std::max(0.0, photon_bound) + 1.0));
}

void require_converged(const ModeState& s) {
  if (!s.converged()) throw Error(ErrorKind::Convergence, "state is not converged in its truncation");
}

struct LineMasses {
  double negative = 0.0;
  double positive = 0.0;
};

LineMasses line_masses(const ModeState& s, double photon_bound) {
  require_converged(s);
  const double target = s.squared_norm();
  const double tol = numeric_policy().integration_tol;
  double half_width = grid_half_width(photon_bound);
  int points = numeric_policy().grid_points;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const QuadGrid grid = QuadGrid::gauss_legendre(half_width, points);
    const std::vector<double> rho = density(s, grid);
    LineMasses m;
    for (std::size_t i = 0; i < grid.size(); ++i) (grid.points[i] > 0.0 ? m.positive : m.negative) += grid.weights[i] * rho[i];
    if (std::abs(m.positive + m.negative - target) <= tol) return m;
    points *= 2;
    half_width *= 1.5;
  }
  throw Error(ErrorKind::Integration, "quadrature grid did not resolve the state density");
}

}  // namespace

void hermite_psi_all(double x, std::span<double> out) {
  if (out.empty()) return;
  std::vector<double> raw(out.size());
  std::vector<double> scale_at(out.size());
  double log_scale = -0.5 * x * x;
  hermite_sweep(
      static_cast<int>(out.size()), x,
      [&](int n, double p) {
        raw[n] = p;
        scale_at[n] = log_scale;
      },
      [&] { log_scale += kLogRescale; });
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = raw[n] * std::exp(scale_at[n]);
}

double hermite_psi(int n, double x) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "oscillator index must be >= 0");
  std::vector<double> all(n + 1);
  hermite_psi_all(x, all);
  return all[n];
}

QuadGrid QuadGrid::gauss_legendre(double half_width, int points) {
  if (!(half_width > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid half width must be positive");
  const int panels_per_side = std::max(1, (points + 2 * kPanelOrder - 1) / (2 * kPanelOrder));
  const int panels = 2 * panels_per_side;
  using Rule = boost::math::quadrature::gauss<double, kPanelOrder>;
  const auto& abscissa = Rule::abscissa();
  const auto& weight = Rule::weights();
  QuadGrid grid;
  grid.x_min = -half_width;
  grid.x_max = half_width;
  grid.points.reserve(panels * kPanelOrder);
  grid.weights.reserve(panels * kPanelOrder);
  const double width = 2.0 * half_width / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -half_width + (p + 0.5) * width;
    const double h = 0.5 * width;
    // Boost stores the non-negative half of the symmetric rule.
    for (int k = static_cast<int>(abscissa.size()) - 1; k >= 0; --k) {
      grid.points.push_back(mid - h * abscissa[k]);
      grid.weights.push_back(h * weight[k]);
    }
    for (std::size_t k = 0; k < abscissa.size(); ++k) {
      grid.points.push_back(mid + h * abscissa[k]);
      grid.weights.push_back(h * weight[k]);
    }
  }
  return grid;
}

QuadGrid QuadGrid::for_photon_number(double mean_photon, int points) {
  return gauss_legendre(grid_half_width(mean_photon), points);
}

QuadGrid QuadGrid::for_states(std::span<const ModeState> states, int points) {
  double n = 0.0;
  for (const auto& s : states) n = std::max(n, mean_photon(s));
  return for_photon_number(n, points);
}

std::vector<Complex> wavefunction(const ModeState& s, std::span<const double> xs) {
  require_converged(s);
  return evaluate_all(s.amplitudes(), xs);
}

std::vector<Complex> wavefunction(const ModeState& s, const QuadGrid& grid) { return wavefunction(s, grid.points); }

std::vector<double> density(const ModeState& s, std::span<const double> xs) {
  const auto psi = wavefunction(s, xs);
  std::vector<double> rho(psi.size());
  std::transform(psi.begin(), psi.end(), rho.begin(), [](Complex z) { return std::norm(z); });
  return rho;
}

std::vector<double> density(const ModeState& s, const QuadGrid& grid) { return density(s, grid.points); }

double mean_x(const ModeState& s) {
  require_normalized(s.squared_norm(), "mean_x");
  double acc = 0.0;
  for (int n = 0; n + 1 < s.dim(); ++n) acc += 2.0 * std::sqrt(n + 1.0) * (std::conj(s[n]) * s[n + 1]).real();
  return acc / std::numbers::sqrt2;
}

double mean_x_on_grid(const ModeState& s, const QuadGrid& grid) {
  const auto rho = density(s, grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) acc += grid.weights[i] * grid.points[i] * rho[i];
  return acc;
}

double halfline_prob(const ModeState& s, HalfLine side) {
  require_normalized(s.squared_norm(), "halfline_prob");
  const LineMasses m = line_masses(s, mean_photon(s));
  return side == HalfLine::Positive ? m.positive : m.negative;
}

double distance_D(const ModeState& a, const ModeState& b) {
  return std::abs(mean_x(a) - mean_x(b)) / std::numbers::sqrt2;
}

double discrimination_P(const ModeState& plus, const ModeState& minus) {
  const bool swap = mean_x(minus) > mean_x(plus);
  const ModeState& hi = swap ? minus : plus;
  const ModeState& lo = swap ? plus : minus;
  const double bound = std::max(mean_photon(hi), mean_photon(lo));
  return 0.5 * (line_masses(hi, bound).positive + line_masses(lo, bound).negative);
}

MacroMeasures macro_measures(const ModeState& plus, const ModeState& minus) {
  MacroMeasures m;
  m.D = distance_D(plus, minus);
  m.P = discrimination_P(plus, minus);
  m.snu = 2.0 * m.D;
  return m;
}

DisplacedPhotons displaced_photon_discrimination(const ModeState& plus, const ModeState& minus) {
  const double beta = 0.5 * distance_D(plus, minus);
  const double x_minus = mean_x(minus);
  // Displacing by real g shifts <x> by sqrt(2) g.
  const double shift = std::abs(x_minus + std::numbers::sqrt2 * beta) <= std::abs(x_minus - std::numbers::sqrt2 * beta)
                           ? beta
                           : -beta;
  DisplacedPhotons out;
  out.beta = shift;
  out.n_plus = mean_photon(displace(shift, plus, plus.dim()));
  out.n_minus = mean_photon(displace(shift, minus, minus.dim()));
  return out;
}

}  // namespace mm
