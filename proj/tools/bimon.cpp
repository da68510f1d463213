// bimon: solve the (1-4)-problem for biharmonic monogenic functions from a config file.

#include <bimon/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  using namespace bimon::cli;
  CLI::App app{"Monogenic solutions of the (1-4)-problem on the unit disk and the upper half-plane"};
  app.require_subcommand(1);

  std::string solve_config;
  std::optional<std::string> solve_output;
  bool solve_verify = false;
  auto* solve_cmd = app.add_subcommand("solve", "solve the problem described by a config file");
  solve_cmd->add_option("config", solve_config, "JSON run config")->required();
  solve_cmd->add_option("--output", solve_output, "override output.dir");
  solve_cmd->add_flag("--verify", solve_verify, "compute the residual report even if the config disables it");

  std::optional<std::string> verify_config;
  auto* verify_cmd = app.add_subcommand("verify", "run the built-in manufactured-solution checks");
  verify_cmd->add_option("config", verify_config, "optional config (domain, method, quadrature_nodes)");

  std::string plot_config;
  std::optional<std::string> plot_output;
  auto* plot_cmd = app.add_subcommand("plotdata", "write one x,y,U_l file per component");
  plot_cmd->add_option("config", plot_config, "JSON run config")->required();
  plot_cmd->add_option("--output", plot_output, "override output.dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto load = [](const std::string& path, const std::optional<std::string>& out, std::optional<RunConfig>& c) {
    return guarded(std::cerr, [&] {
      c = load_config(path);
      if (out) c->output_dir = *out;
      return 0;
    });
  };

  std::optional<RunConfig> cfg;
  if (*solve_cmd) {
    if (const int rc = load(solve_config, solve_output, cfg)) return rc;
    if (solve_verify) cfg->verify = true;
    return run_solve(*cfg);
  }
  if (*plot_cmd) {
    if (const int rc = load(plot_config, plot_output, cfg)) return rc;
    return emit_plotdata(*cfg);
  }
  return run_verify_file(verify_config);
}
