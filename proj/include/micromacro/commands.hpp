#pragma once

// Figure and summary commands behind the micromacro executable. Each
// command is a pure function of its RunConfig and returns tables; writing
// them out is left to the caller.

#include <optional>
#include <string>
#include <vector>

#include "micromacro/sweep.hpp"
#include "micromacro/table.hpp"

namespace mm {

struct RunConfig {
  std::string command;
  std::optional<std::vector<double>> db_values;
  std::optional<std::vector<int>> m_values;
  std::optional<TransmissionPolicy> transmission;
  std::optional<double> alpha;
  int trunc = numeric_policy().default_dim;
  std::optional<int> grid;  // x points (fig2) or T points (fig5)
  std::string out;
  OutputFormat format = OutputFormat::Csv;
  int workers = 0;
  std::optional<std::vector<double>> lambdas;
  std::optional<std::vector<double>> etas;
};

/// "A:B:STEP" (inclusive), a single value, or a comma list.
std::vector<double> parse_db_range(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
OutputFormat parse_format(const std::string& text);

/// Throws InvalidArgument for anything a command cannot run with.
void validate(const RunConfig& config);

struct OutputFile {
  std::string name;
  Table table;
};

Table cmd_summary(const RunConfig& config);
std::vector<OutputFile> cmd_fig2(const RunConfig& config);
Table cmd_fig3(const RunConfig& config);
Table cmd_fig4(const RunConfig& config);
std::vector<OutputFile> cmd_fig5(const RunConfig& config);
Table cmd_remote(const RunConfig& config);

/// Runs config.command and writes its output. Single tables go to
/// config.out (stdout if empty); multi-file commands write into the
/// directory config.out (current directory if empty).
void run_command(const RunConfig& config);

/// 0 success, 2 configuration error, 3 numerical failure.
int exit_code_for(const Error& e);

}  // namespace mm
