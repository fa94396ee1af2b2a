#pragma once

#include <filesystem>
#include <string>

namespace mm {

/// Every numerical tolerance used by the library lives here.
///
/// The process-wide instance is read once from the file named by the
/// MML_NUMERIC_POLICY environment variable (key=value lines, '#' comments),
/// falling back to the defaults below. It is immutable after first use.
struct NumericPolicy {
  // Relative mass in the top min(4, d/4) levels below which a state is flagged converged.
  double tail_tol = 1e-10;
  // Tail mass the adaptive truncation drives towards. Amplitude errors of a
  // truncated exponential scale like sqrt(tail), so this is tighter than tail_tol.
  double adaptive_tail_tol = 1e-20;
  double hermiticity_tol = 1e-10;
  double unitarity_tol = 1e-8;
  double normalization_tol = 1e-9;
  double leakage_tol = 1e-10;
  double integration_tol = 1e-9;
  double zero_norm_tol = 1e-300;
  double impossible_probability = 1e-15;
  int default_dim = 128;
  int max_dim = 2048;
  int grid_points = 2048;
  // Per-mode Fock dimension for the multimode remote-preparation simulation.
  int remote_dim = 4;
  int remote_max_dim = 12;
  double remote_convergence_tol = 1e-8;
};

/// Parses a key=value policy file on top of the defaults. Unknown keys throw.
NumericPolicy load_numeric_policy(const std::filesystem::path& path);

/// Applies one key=value override; returns false for an unknown key.
bool set_policy_value(NumericPolicy& policy, const std::string& key, const std::string& value);

const NumericPolicy& numeric_policy();

}  // namespace mm
