#pragma once

// Parameter sweeps over (squeezing, subtraction order, transmission).
//
// sweep_serial is the reference: every point is evaluated independently
// through the public library calls. sweep_parallel groups points by
// squeezing value so S(r)|0> is computed once per column, and spreads the
// columns over OpenMP threads. Both produce bit-identical rows in input order.

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "micromacro/protocols.hpp"

namespace mm {

enum class TransmissionKind { Balanced, Half, Explicit };

struct TransmissionPolicy {
  TransmissionKind kind = TransmissionKind::Balanced;
  double value = 0.0;  // only for Explicit

  static TransmissionPolicy balanced() { return {TransmissionKind::Balanced, 0.0}; }
  static TransmissionPolicy half() { return {TransmissionKind::Half, 0.5}; }
  static TransmissionPolicy fixed(double t);
  /// "bal", "half" or a number in [0, 1].
  static TransmissionPolicy parse(const std::string& text);

  std::string label() const;
  double resolve(double t_bal) const;
};

struct SweepPoint {
  double r_db = 0.0;
  int m = 0;
  TransmissionPolicy policy;
};

struct SweepRow {
  static constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

  double r_db = 0.0;
  double r = 0.0;
  int m = 0;
  std::string policy;
  double T = kMissing;
  double D = kMissing;
  double P = kMissing;
  double entropy = kMissing;
  double T_bal = kMissing;
  double herald_weight = kMissing;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Evaluates one point from its photon-subtracted input state.
SweepRow evaluate_point(const SweepPoint& point, const ModeState& input);
SweepRow evaluate_point(const SweepPoint& point, int dim);

std::vector<SweepRow> sweep_serial(std::span<const SweepPoint> points, int dim);
/// workers <= 0 uses the OpenMP default.
std::vector<SweepRow> sweep_parallel(std::span<const SweepPoint> points, int dim, int workers = 0);

struct RemotePoint {
  double lambda = 0.0;
  double eta = 1.0;
};

struct RemoteRow {
  double lambda = 0.0;
  double eta = 1.0;
  double herald_prob = SweepRow::kMissing;
  double fidelity = SweepRow::kMissing;
  double log_negativity = SweepRow::kMissing;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Symmetric sources (lambda_A = lambda_B) and channels (eta_A = eta_B);
/// fidelity is against (|0,1> + |1,0>)/sqrt(2).
RemoteRow evaluate_remote(const RemotePoint& point);
std::vector<RemoteRow> remote_sweep_serial(std::span<const RemotePoint> points);
std::vector<RemoteRow> remote_sweep_parallel(std::span<const RemotePoint> points, int workers = 0);

}  // namespace mm
