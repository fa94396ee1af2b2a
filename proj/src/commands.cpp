#include "micromacro/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "micromacro/quadrature.hpp"

namespace mm {

namespace {

constexpr int kDefaultXPoints = 1001;
constexpr int kDefaultTPoints = 61;
constexpr double kTMin = 0.01;
constexpr double kTMax = 0.99;
constexpr double kFig2MinHalfWidth = 8.0;
constexpr int kMaxSubtraction = 20;

Error config_error(const std::string& what) { return Error(ErrorKind::InvalidArgument, what); }

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw config_error("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw config_error("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> range_values(double a, double b, double step) {
  if (!(step > 0.0)) throw config_error("range step must be positive");
  if (b < a) throw config_error("range end is below its start");
  const long long count = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 100000) throw config_error("range has too many points");
  std::vector<double> v(count);
  for (long long i = 0; i < count; ++i) v[i] = a + static_cast<double>(i) * step;
  return v;
}

std::vector<double> defaults_or(const std::optional<std::vector<double>>& v, std::vector<double> fallback) {
  return v ? *v : std::move(fallback);
}

std::vector<int> m_list(const RunConfig& c) { return c.m_values ? *c.m_values : std::vector<int>{0, 1, 2, 3}; }

std::vector<TransmissionPolicy> policies(const RunConfig& c) {
  if (c.transmission) return {*c.transmission};
  return {TransmissionPolicy::balanced(), TransmissionPolicy::half()};
}

std::vector<double> t_grid(int points) {
  std::vector<double> t(points);
  for (int i = 0; i < points; ++i) t[i] = kTMin + (kTMax - kTMin) * i / (points - 1);
  return t;
}

// Symmetric about 0 to the bit: x_{N-1-i} = -x_i.
std::vector<double> x_grid(double half_width, int points) {
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) x[i] = half_width * (2.0 * i - (points - 1)) / (points - 1);
  return x;
}

std::vector<double> fig_db_values(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "fig2") return defaults_or(c.db_values, {3.0, 5.0, 8.0, 10.0});
  if (cmd == "fig5") return defaults_or(c.db_values, range_values(0.0, 12.0, 0.2));
  if (cmd == "summary") return defaults_or(c.db_values, {5.0});
  return defaults_or(c.db_values, range_values(0.0, 12.0, 0.25));
}

Cell num(double v) { return v; }
Cell integer(long long v) { return v; }

std::vector<SweepRow> curve_sweep(const RunConfig& c) {
  std::vector<SweepPoint> points;
  for (int m : m_list(c))
    for (const auto& p : policies(c))
      for (double db : fig_db_values(c)) points.push_back({db, m, p});
  return sweep_parallel(points, c.trunc, c.workers);
}

Table curve_table(const RunConfig& c, const char* measure) {
  Table t;
  t.columns = {"r_db", "r", "m", "policy", "T", measure, "status"};
  const bool want_d = std::string(measure) == "D";
  for (const auto& row : curve_sweep(c)) {
    t.add_row({num(row.r_db), num(row.r), integer(row.m), row.policy, num(row.T), num(want_d ? row.D : row.P),
               row.status});
  }
  return t;
}

std::string extension(OutputFormat f) { return f == OutputFormat::Csv ? ".csv" : ".json"; }

Table summary_alpha(const RunConfig& c) {
  const double alpha = *c.alpha;
  const double t = c.transmission ? c.transmission->resolve(coherent_balanced_T(alpha)) : coherent_balanced_T(alpha);
  const auto outcome = scheme_c(cat(alpha, Parity::Even, c.trunc), t);
  const MacroComponents parts = macro_components(outcome.state);
  const MacroMeasures produced = macro_measures(parts.plus, parts.minus);
  const ModeState plus_alpha = coherent(alpha, c.trunc);
  const ModeState minus_alpha = coherent(-alpha, c.trunc);
  const MacroMeasures ideal = macro_measures(plus_alpha, minus_alpha);
  Table table;
  table.columns = {"alpha", "T", "D", "P", "snu", "entropy", "herald_weight", "overlap_plus", "overlap_minus",
                   "D_coherent", "P_coherent"};
  table.add_row({num(alpha), num(t), num(produced.D), num(produced.P), num(produced.snu),
                 num(entanglement_of(outcome.state)), num(outcome.probability), num(fidelity(parts.plus, plus_alpha)),
                 num(fidelity(parts.minus, minus_alpha)), num(ideal.D), num(ideal.P)});
  return table;
}

void check_positive_list(const std::optional<std::vector<double>>& v, const char* what, bool (*ok)(double)) {
  if (!v) return;
  if (v->empty()) throw config_error(std::string(what) + " list is empty");
  for (double x : *v)
    if (!ok(x)) throw config_error(std::string(what) + " value " + format_number(x) + " out of range");
}

}  // namespace

std::vector<double> parse_db_range(const std::string& text) {
  if (text.empty()) throw config_error("empty dB range");
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw config_error("dB range must be A:B:STEP");
    return range_values(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
  }
  return parse_real_list(text);
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> v;
  for (const auto& part : split(text, ',')) v.push_back(parse_real(part));
  if (v.empty()) throw config_error("empty list");
  return v;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> v;
  for (const auto& part : split(text, ',')) {
    const double x = parse_real(part);
    if (x != std::floor(x) || std::abs(x) > 1e6) throw config_error("not an integer: '" + part + "'");
    v.push_back(static_cast<int>(x));
  }
  if (v.empty()) throw config_error("empty list");
  return v;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw config_error("format must be csv or json");
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> known = {"summary", "fig2", "fig3", "fig4", "fig5", "remote"};
  if (std::find(known.begin(), known.end(), c.command) == known.end())
    throw config_error("unknown command '" + c.command + "'");
  check_positive_list(c.db_values, "dB", [](double x) { return x >= 0.0 && x <= 40.0; });
  if (c.m_values) {
    if (c.m_values->empty()) throw config_error("m list is empty");
    for (int m : *c.m_values)
      if (m < 0 || m > kMaxSubtraction) throw config_error("m must lie in [0, " + std::to_string(kMaxSubtraction) + "]");
  }
  if (c.alpha && !(*c.alpha > 0.0 && *c.alpha <= 10.0)) throw config_error("alpha must lie in (0, 10]");
  if (c.trunc < 2 || c.trunc > numeric_policy().max_dim)
    throw config_error("truncation must lie in [2, " + std::to_string(numeric_policy().max_dim) + "]");
  if (c.grid && (*c.grid < 2 || *c.grid > 1000000)) throw config_error("grid must have between 2 and 1e6 points");
  if (c.workers < 0) throw config_error("workers must be >= 0");
  check_positive_list(c.lambdas, "lambda", [](double x) { return x >= 0.0 && x < 1.0; });
  check_positive_list(c.etas, "eta", [](double x) { return x > 0.0 && x <= 1.0; });

  if (c.command == "summary" && !c.alpha) {
    if (c.db_values && c.db_values->size() != 1) throw config_error("summary takes a single dB value");
    if (c.m_values && c.m_values->size() != 1) throw config_error("summary takes a single m");
  }
  if (c.command != "summary" && c.alpha) throw config_error("--alpha is only used by summary");
  if (c.command == "fig5" && c.transmission) throw config_error("fig5 sweeps the transmission itself");
  if (c.command != "remote" && (c.lambdas || c.etas)) throw config_error("--lambda/--eta are only used by remote");
}

Table cmd_summary(const RunConfig& c) {
  validate(c);
  if (c.alpha) return summary_alpha(c);
  const double db = fig_db_values(c).front();
  const int m = m_list(c).size() == 1 ? m_list(c).front() : 1;
  const TransmissionPolicy policy = c.transmission.value_or(TransmissionPolicy::balanced());
  const double r = db_to_r(db);
  const ModeState input = photon_subtracted_squeezed(m, r, c.trunc).state;
  const double t_bal = t_balanced(input);
  const double t = policy.resolve(t_bal);
  if (policy.kind == TransmissionKind::Balanced && t_bal == 0.0)
    throw Error(ErrorKind::ZeroState, "T_bal = 0: the input is the vacuum and the balanced output is a product state");
  const auto outcome = scheme_c(input, t);
  const PsiPair pair = psi_pm_from(input, t);
  const MacroMeasures measures = macro_measures(pair.plus, pair.minus);
  const DisplacedPhotons displaced = displaced_photon_discrimination(pair.plus, pair.minus);
  Table table;
  table.columns = {"m", "r_db", "r", "policy", "T", "T_bal", "D", "P", "snu", "entropy", "herald_weight", "beta",
                   "n_plus_displaced", "n_minus_displaced"};
  table.add_row({integer(m), num(db), num(r), policy.label(), num(t), num(t_bal), num(measures.D), num(measures.P),
                 num(measures.snu), num(entanglement_of(outcome.state)), num(outcome.probability), num(displaced.beta),
                 num(displaced.n_plus), num(displaced.n_minus)});
  return table;
}

std::vector<OutputFile> cmd_fig2(const RunConfig& c) {
  validate(c);
  const int points = c.grid.value_or(kDefaultXPoints);
  std::vector<OutputFile> files;
  for (int m : m_list(c)) {
    for (double db : fig_db_values(c)) {
      const ModeState input = photon_subtracted_squeezed(m, db_to_r(db), c.trunc).state;
      for (const auto& policy : policies(c)) {
        const PsiPair pair = psi_pm_from(input, policy.resolve(t_balanced(input)));
        const double n = std::max(mean_photon(pair.plus), mean_photon(pair.minus));
        const auto xs = x_grid(std::max(kFig2MinHalfWidth, 4.0 * std::sqrt(2.0 * n + 1.0)), points);
        const auto plus = density(pair.plus, xs);
        const auto minus = density(pair.minus, xs);
        OutputFile file;
        file.name = "fig2_m" + std::to_string(m) + "_db" + format_number(db) + "_" + policy.label();
        file.table.columns = {"x", "p_plus", "p_minus"};
        for (std::size_t i = 0; i < xs.size(); ++i) file.table.add_row({num(xs[i]), num(plus[i]), num(minus[i])});
        files.push_back(std::move(file));
      }
    }
  }
  return files;
}

Table cmd_fig3(const RunConfig& c) {
  validate(c);
  return curve_table(c, "D");
}

Table cmd_fig4(const RunConfig& c) {
  validate(c);
  return curve_table(c, "P");
}

std::vector<OutputFile> cmd_fig5(const RunConfig& c) {
  validate(c);
  const auto dbs = fig_db_values(c);
  const auto ms = m_list(c);
  const auto ts = t_grid(c.grid.value_or(kDefaultTPoints));
  std::vector<SweepPoint> points;
  for (int m : ms)
    for (double db : dbs)
      for (double t : ts) points.push_back({db, m, TransmissionPolicy::fixed(t)});
  const auto rows = sweep_parallel(points, c.trunc, c.workers);

  std::vector<OutputFile> files;
  std::size_t k = 0;
  for (int m : ms) {
    OutputFile grid{"fig5_m" + std::to_string(m), {}};
    OutputFile balance{"fig5_m" + std::to_string(m) + "_tbal", {}};
    grid.table.columns = {"r_db", "T", "P", "status"};
    balance.table.columns = {"r_db", "T_bal", "status"};
    for (double db : dbs) {
      const SweepRow& first = rows[k];
      balance.table.add_row({num(db), num(first.T_bal), first.ok() ? std::string("ok") : first.status});
      for (std::size_t j = 0; j < ts.size(); ++j, ++k) {
        const SweepRow& row = rows[k];
        grid.table.add_row({num(db), num(ts[j]), num(row.P), row.status});
      }
    }
    files.push_back(std::move(grid));
    files.push_back(std::move(balance));
  }
  return files;
}

Table cmd_remote(const RunConfig& c) {
  validate(c);
  std::vector<RemotePoint> points;
  for (double lambda : defaults_or(c.lambdas, {0.05}))
    for (double eta : defaults_or(c.etas, {0.2, 0.5, 1.0})) points.push_back({lambda, eta});
  Table t;
  t.columns = {"lambda", "eta", "herald_prob", "fidelity", "log_negativity", "status"};
  for (const auto& row : remote_sweep_parallel(points, c.workers))
    t.add_row({num(row.lambda), num(row.eta), num(row.herald_prob), num(row.fidelity), num(row.log_negativity),
               row.status});
  return t;
}

void run_command(const RunConfig& c) {
  validate(c);
  std::vector<OutputFile> files;
  if (c.command == "fig2") {
    files = cmd_fig2(c);
  } else if (c.command == "fig5") {
    files = cmd_fig5(c);
  } else {
    Table t;
    if (c.command == "summary") t = cmd_summary(c);
    if (c.command == "fig3") t = cmd_fig3(c);
    if (c.command == "fig4") t = cmd_fig4(c);
    if (c.command == "remote") t = cmd_remote(c);
    write_table_file(t, c.format, c.out);
    return;
  }
  const std::filesystem::path dir = c.out.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + dir.string() + "': " + ec.message());
  for (const auto& f : files) write_table_file(f.table, c.format, (dir / (f.name + extension(c.format))).string());
}

int exit_code_for(const Error& e) { return e.is_numerical() ? 3 : 2; }

}  // namespace mm
