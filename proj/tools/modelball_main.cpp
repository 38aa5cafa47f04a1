#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "modelball/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "modelball: numerical verification of sharp gradient estimates, "
      "rigidity, and stability on rotationally symmetric model balls"};
  app.require_subcommand(1);

  std::string config_path, format = "json", out_dir;
  auto* verify =
      app.add_subcommand("verify", "run one suite from a config file");
  verify->add_option("config", config_path, "key=value config file")
      ->required();
  verify->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out_dir, "directory for report and plot data");

  std::string sweep_path, sweep_param, sweep_fmt = "json", sweep_out;
  std::vector<double> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "run a one-parameter family");
  sweep->add_option("config", sweep_path, "base config file")->required();
  sweep->add_option("--param", sweep_param, "config key to vary")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--format", sweep_fmt, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", sweep_out, "directory for the sweep report");

  auto* ls = app.add_subcommand("list-suites", "list available suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ls->parsed()) {
      for (const auto& s : modelball::suite_names()) std::cout << s << "\n";
      return 0;
    }
    if (verify->parsed()) {
      const modelball::SuiteConfig config = modelball::load_config(config_path);
      const modelball::SuiteRun run = modelball::run_suite(config);
      std::cout << modelball::emit_report(run, format, out_dir);
      std::fprintf(stderr, "# wall_ms=%.1f\n", run.record.wall_ms);
      return run.record.passed ? 0 : 1;
    }
    const modelball::SuiteConfig base = modelball::load_config(sweep_path);
    const modelball::SweepResult sw =
        modelball::sweep_family(base, sweep_param, sweep_values);
    std::cout << modelball::emit_report(sw, sweep_fmt, sweep_out);
    bool ok = true;
    for (const auto& r : sw.records) ok = ok && r.passed;
    return ok ? 0 : 1;
  } catch (const modelball::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const modelball::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
