#include "micromacro/sweep.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <sstream>

#include <omp.h>

namespace mm {

namespace {

template <class Row, class Fn>
void record_status(Row& row, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    row.status = std::string(to_string(e.kind()));
  }
}

SweepRow blank_row(const SweepPoint& point) {
  SweepRow row;
  row.r_db = point.r_db;
  row.r = db_to_r(point.r_db);
  row.m = point.m;
  row.policy = point.policy.label();
  return row;
}

// Shared by both paths so the numbers cannot drift between them.
void fill_row(SweepRow& row, const SweepPoint& point, const ModeState& input) {
  row.T_bal = t_balanced(input);
  const double t = point.policy.resolve(row.T_bal);
  row.T = t;
  const auto outcome = scheme_c(input, t);
  row.herald_weight = outcome.probability;
  row.entropy = entanglement_of(outcome.state);
  const PsiPair pair = psi_pm_from(input, t);
  const MacroMeasures measures = macro_measures(pair.plus, pair.minus);
  row.D = measures.D;
  row.P = measures.P;
}

void clear_values(SweepRow& row) {
  row.T = row.D = row.P = row.entropy = row.T_bal = row.herald_weight = SweepRow::kMissing;
}

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

}  // namespace

TransmissionPolicy TransmissionPolicy::fixed(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "transmission must lie in [0, 1]");
  return {TransmissionKind::Explicit, t};
}

TransmissionPolicy TransmissionPolicy::parse(const std::string& text) {
  if (text == "bal" || text == "balanced") return balanced();
  if (text == "half") return half();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw Error(ErrorKind::InvalidArgument, "transmission must be 'bal', 'half' or a number, got '" + text + "'");
  return fixed(value);
}

std::string TransmissionPolicy::label() const {
  switch (kind) {
    case TransmissionKind::Balanced: return "bal";
    case TransmissionKind::Half: return "half";
    case TransmissionKind::Explicit: {
      std::ostringstream os;
      os.precision(12);
      os << value;
      return os.str();
    }
  }
  return "?";
}

double TransmissionPolicy::resolve(double t_bal) const {
  switch (kind) {
    case TransmissionKind::Balanced: return t_bal;
    case TransmissionKind::Half: return 0.5;
    case TransmissionKind::Explicit: return value;
  }
  return value;
}

SweepRow evaluate_point(const SweepPoint& point, const ModeState& input) {
  SweepRow row = blank_row(point);
  record_status(row, [&] { fill_row(row, point, input); });
  if (!row.ok()) clear_values(row);
  return row;
}

SweepRow evaluate_point(const SweepPoint& point, int dim) {
  SweepRow row = blank_row(point);
  record_status(row, [&] { fill_row(row, point, photon_subtracted_squeezed(point.m, row.r, dim).state); });
  if (!row.ok()) clear_values(row);
  return row;
}

std::vector<SweepRow> sweep_serial(std::span<const SweepPoint> points, int dim) {
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back(evaluate_point(p, dim));
  return rows;
}

std::vector<SweepRow> sweep_parallel(std::span<const SweepPoint> points, int dim, int workers) {
  // Columns keyed by squeezing value, in first-appearance order.
  std::vector<std::vector<std::size_t>> columns;
  std::map<double, std::size_t> column_of;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [it, inserted] = column_of.try_emplace(points[i].r_db, columns.size());
    if (inserted) columns.emplace_back();
    columns[it->second].push_back(i);
  }

  std::vector<SweepRow> rows(points.size());
  std::exception_ptr failure;
  const int ncols = static_cast<int>(columns.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (int c = 0; c < ncols; ++c) {
    try {
      const auto& members = columns[c];
      const double r = db_to_r(points[members.front()].r_db);
      std::optional<ModeState> squeezed;
      std::string squeeze_status;
      try {
        squeezed = squeezed_vacuum(r, dim);
      } catch (const Error& e) {
        squeeze_status = std::string(to_string(e.kind()));
      }
      std::map<int, std::optional<ModeState>> inputs;
      std::map<int, std::string> input_status;
      for (std::size_t i : members) {
        const SweepPoint& p = points[i];
        if (!squeezed) {
          rows[i] = blank_row(p);
          rows[i].status = squeeze_status;
          continue;
        }
        if (!inputs.contains(p.m)) {
          try {
            inputs[p.m] = photon_subtracted_from(*squeezed, p.m, r).state;
          } catch (const Error& e) {
            inputs[p.m] = std::nullopt;
            input_status[p.m] = std::string(to_string(e.kind()));
          }
        }
        if (inputs[p.m]) {
          rows[i] = evaluate_point(p, *inputs[p.m]);
        } else {
          rows[i] = blank_row(p);
          rows[i].status = input_status[p.m];
        }
      }
    } catch (...) {
#pragma omp critical(mm_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

RemoteRow evaluate_remote(const RemotePoint& point) {
  RemoteRow row;
  row.lambda = point.lambda;
  row.eta = point.eta;
  record_status(row, [&] {
    const auto outcome = scheme_b({point.lambda, point.lambda, point.eta, point.eta});
    const int d = outcome.state.dims()[0];
    CMatrix target = CMatrix::Zero(d, d);
    target(0, 1) = target(1, 0) = 1.0 / std::sqrt(2.0);
    row.herald_prob = outcome.probability;
    row.fidelity = fidelity(TwoModeState(target), outcome.state);
    row.log_negativity = log_negativity(outcome.state, 1);
  });
  if (!row.ok()) {
    row.fidelity = row.log_negativity = SweepRow::kMissing;
    row.herald_prob = row.status == to_string(ErrorKind::ImpossibleOutcome) ? 0.0 : SweepRow::kMissing;
  }
  return row;
}

std::vector<RemoteRow> remote_sweep_serial(std::span<const RemotePoint> points) {
  std::vector<RemoteRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back(evaluate_remote(p));
  return rows;
}

std::vector<RemoteRow> remote_sweep_parallel(std::span<const RemotePoint> points, int workers) {
  std::vector<RemoteRow> rows(points.size());
  std::exception_ptr failure;
  const int n = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (int i = 0; i < n; ++i) {
    try {
      rows[i] = evaluate_remote(points[i]);
    } catch (...) {
#pragma omp critical(mm_remote_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace mm
