#pragma once

// Position representation for the amplitude quadrature x = (a + a^dagger)/sqrt(2).
// Vacuum variance is 1/2; one shot-noise unit is the vacuum standard deviation.

#include <span>
#include <vector>

#include "micromacro/states.hpp"

namespace mm {

/// n-th oscillator eigenfunction. Uses the upward recurrence
/// psi_{n+1} = (sqrt(2) x psi_n - sqrt(n) psi_{n-1}) / sqrt(n+1) with
/// rescaling, so values below the double range underflow to 0 instead of
/// poisoning higher orders.
double hermite_psi(int n, double x);

/// psi_0(x) ... psi_{out.size()-1}(x).
void hermite_psi_all(double x, std::span<double> out);

/// Composite Gauss-Legendre rule on [-half_width, half_width]. Panels are
/// symmetric about 0 so the half-line sums are exact splits.
struct QuadGrid {
  std::vector<double> points;
  std::vector<double> weights;
  double x_min = 0.0;
  double x_max = 0.0;

  static QuadGrid gauss_legendre(double half_width, int points);
  /// Half width max(6, 4 sqrt(2 n + 1)) for the largest mean photon number n.
  static QuadGrid for_photon_number(double mean_photon, int points = numeric_policy().grid_points);
  static QuadGrid for_states(std::span<const ModeState> states, int points = numeric_policy().grid_points);

  std::size_t size() const { return points.size(); }
};

std::vector<Complex> wavefunction(const ModeState& s, std::span<const double> xs);
std::vector<Complex> wavefunction(const ModeState& s, const QuadGrid& grid);
std::vector<double> density(const ModeState& s, std::span<const double> xs);
std::vector<double> density(const ModeState& s, const QuadGrid& grid);

/// <x> from the tridiagonal matrix of x; no grid involved.
double mean_x(const ModeState& s);
/// Grid cross-check of mean_x.
double mean_x_on_grid(const ModeState& s, const QuadGrid& grid);

enum class HalfLine { Positive, Negative };

/// Integral of |psi(x)|^2 over x > 0 or x < 0. The grid is refined until the
/// total density integrates to the state norm within integration_tol.
double halfline_prob(const ModeState& s, HalfLine side);

/// D = |<x>_a - <x>_b| / sqrt(2).
double distance_D(const ModeState& a, const ModeState& b);

/// P = (<+|Pi_+|+> + <-|Pi_-|->)/2 with Pi_+ projecting on x > 0. The state
/// with the larger <x> is assigned Pi_+; ties keep the argument order.
double discrimination_P(const ModeState& plus, const ModeState& minus);

struct MacroMeasures {
  double D = 0.0;
  double P = 0.0;
  double snu = 0.0;  // 2 D, separation in shot-noise units
};

MacroMeasures macro_measures(const ModeState& plus, const ModeState& minus);

struct DisplacedPhotons {
  double n_plus = 0.0;
  double n_minus = 0.0;
  double beta = 0.0;  // signed real displacement that was applied
};

/// Displaces both states by beta = +/- D/2, the sign chosen so `minus` moves
/// towards the vacuum, and returns the resulting mean photon numbers.
DisplacedPhotons displaced_photon_discrimination(const ModeState& plus, const ModeState& minus);

}  // namespace mm
