#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "halfplane/pipeline.hpp"
#include "halfplane/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "halfplane-tunnel: stress and displacement around a noncircular "
      "shallow tunnel in a gravitating elastic half-plane"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  auto* solve_cmd =
      app.add_subcommand("solve", "run the solver pipeline from a JSON config");
  solve_cmd->add_option("--config", config_path, "path to the run config JSON")
      ->required();
  solve_cmd->add_option("--out", out_dir, "output directory (default: out)");

  std::vector<int> case_ids;
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the reference verification protocol for preset cases");
  verify_cmd->add_option("ids", case_ids, "preset case ids (1..5)")->required();

  auto* presets_cmd =
      app.add_subcommand("presets", "list the preset mapping coefficients");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      halfplane::RunConfig cfg = halfplane::load_run_config(config_path);
      return halfplane::run_solve(cfg, out_dir);
    }
    if (verify_cmd->parsed()) {
      return halfplane::run_verify(case_ids);
    }
    if (presets_cmd->parsed()) {
      return halfplane::list_presets();
    }
  } catch (const halfplane::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
