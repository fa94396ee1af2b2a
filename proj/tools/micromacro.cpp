#include <iostream>

#include <CLI11.hpp>

#include "micromacro/commands.hpp"

namespace {

struct RawOptions {
  std::string db_range;
  std::string m;
  std::string transmission;
  std::string lambda;
  std::string eta;
  std::string format = "csv";
  double alpha = 0.0;
  int trunc = 0;
  int grid = 0;
};

void add_common(CLI::App* cmd, RawOptions& raw, mm::RunConfig& config) {
  cmd->add_option("--db-range", raw.db_range, "Squeezing in dB: A:B:STEP, a value, or a comma list");
  cmd->add_option("--m", raw.m, "Photon subtraction orders, comma separated");
  cmd->add_option("--transmission", raw.transmission, "bal, half, or a value in [0, 1]");
  cmd->add_option("--trunc", raw.trunc, "Initial Fock truncation");
  cmd->add_option("--grid", raw.grid, "Output grid points (fig2: x, fig5: T)");
  cmd->add_option("--out", config.out, "Output file, or directory for fig2/fig5");
  cmd->add_option("--format", raw.format, "csv or json");
  cmd->add_option("--workers", config.workers, "Worker threads (0 = all)");
}

mm::RunConfig resolve(const std::string& command, const RawOptions& raw, mm::RunConfig config, const CLI::App& app) {
  config.command = command;
  const CLI::App* sub = app.get_subcommand(command);
  if (!raw.db_range.empty()) config.db_values = mm::parse_db_range(raw.db_range);
  if (!raw.m.empty()) config.m_values = mm::parse_int_list(raw.m);
  if (!raw.transmission.empty()) config.transmission = mm::TransmissionPolicy::parse(raw.transmission);
  if (const CLI::Option* a = sub->get_option_no_throw("--alpha"); a && a->count() > 0) config.alpha = raw.alpha;
  if (sub->count("--trunc") > 0) config.trunc = raw.trunc;
  if (sub->count("--grid") > 0) config.grid = raw.grid;
  if (!raw.lambda.empty()) config.lambdas = mm::parse_real_list(raw.lambda);
  if (!raw.eta.empty()) config.etas = mm::parse_real_list(raw.eta);
  config.format = mm::parse_format(raw.format);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded micro-macro entangled states: figures and summaries"};
  app.require_subcommand(1);
  RawOptions raw;
  mm::RunConfig config;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"summary", "Metrics for one parameter point"},
      {"fig2", "Quadrature densities of the two macro components"},
      {"fig3", "Phase-space distance D against squeezing"},
      {"fig4", "Homodyne discrimination rate P against squeezing"},
      {"fig5", "P over squeezing and transmission, with T_bal"},
      {"remote", "Remote preparation through lossy channels"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, raw, config);
    if (name == "summary") cmd->add_option("--alpha", raw.alpha, "Coherent-cat amplitude (cat input mode)");
    if (name == "remote") {
      cmd->add_option("--lambda", raw.lambda, "TMSV parameters, comma separated");
      cmd->add_option("--eta", raw.eta, "Channel transmissivities, comma separated");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    mm::run_command(resolve(command, raw, config, app));
  } catch (const mm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mm::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
