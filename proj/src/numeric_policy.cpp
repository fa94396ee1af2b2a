#include "micromacro/numeric_policy.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "micromacro/errors.hpp"

namespace mm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidOperator: return "invalid-operator";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::ModeOutOfRange: return "mode-out-of-range";
    case ErrorKind::ZeroState: return "zero-state";
    case ErrorKind::ImpossibleOutcome: return "impossible-outcome";
    case ErrorKind::RequiresNormalized: return "requires-normalized";
    case ErrorKind::NonHermitian: return "non-hermitian";
    case ErrorKind::Leakage: return "leakage";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Integration: return "integration";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool set_policy_value(NumericPolicy& p, const std::string& key, const std::string& value) {
  using Setter = std::function<void(const std::string&)>;
  auto real = [](double& field) -> Setter { return [&field](const std::string& v) { field = std::stod(v); }; };
  auto integer = [](int& field) -> Setter { return [&field](const std::string& v) { field = std::stoi(v); }; };
  const std::map<std::string, Setter> setters = {
      {"tail_tol", real(p.tail_tol)},
      {"adaptive_tail_tol", real(p.adaptive_tail_tol)},
      {"hermiticity_tol", real(p.hermiticity_tol)},
      {"unitarity_tol", real(p.unitarity_tol)},
      {"normalization_tol", real(p.normalization_tol)},
      {"leakage_tol", real(p.leakage_tol)},
      {"integration_tol", real(p.integration_tol)},
      {"zero_norm_tol", real(p.zero_norm_tol)},
      {"impossible_probability", real(p.impossible_probability)},
      {"default_dim", integer(p.default_dim)},
      {"max_dim", integer(p.max_dim)},
      {"grid_points", integer(p.grid_points)},
      {"remote_dim", integer(p.remote_dim)},
      {"remote_max_dim", integer(p.remote_max_dim)},
      {"remote_convergence_tol", real(p.remote_convergence_tol)},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) return false;
  try {
    it->second(value);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "bad value for policy key '" + key + "': " + value);
  }
  return true;
}

NumericPolicy load_numeric_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open numeric policy file " + path.string());
  NumericPolicy policy;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "policy line without '=': " + line);
    const auto key = trim(line.substr(0, eq));
    if (!set_policy_value(policy, key, trim(line.substr(eq + 1))))
      throw Error(ErrorKind::InvalidArgument, "unknown numeric policy key: " + key);
  }
  return policy;
}

const NumericPolicy& numeric_policy() {
  static const NumericPolicy policy = [] {
    if (const char* path = std::getenv("MML_NUMERIC_POLICY"); path != nullptr && *path != '\0')
      return load_numeric_policy(path);
    return NumericPolicy{};
  }();
  return policy;
}

}  // namespace mm
