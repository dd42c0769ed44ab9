#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "faberlab/error.hpp"
#include "faberlab/experiment.hpp"
#include "faberlab/result_table.hpp"

namespace fs = std::filesystem;
using namespace faberlab;

namespace {

int cmd_run(const fs::path& config_file) {
  const auto cfg = ExperimentConfig::load(config_file);
  const auto run = run_experiment(cfg);
  fmt::print("task {} on {}: {} rows -> {}{}\n", to_string(cfg.task),
             cfg.curve.value("kind", "?"), run.table.row_count(),
             (cfg.output / "results.csv").string(), run.from_cache ? " (cached)" : "");
  return 0;
}

int cmd_table(const fs::path& dir, std::size_t max_rows) {
  const auto table = ResultTable::read_csv(dir / "results.csv");
  if (fs::exists(dir / "meta.json")) {
    std::ifstream f(dir / "meta.json");
    const auto meta = nlohmann::json::parse(f);
    fmt::print("task: {}  curve: {}  hash: {}\n", meta.value("task", "?"),
               meta.contains("curve") ? meta["curve"].value("kind", "?") : "?",
               meta.value("config_hash", "?").substr(0, 16));
  }
  fmt::print("{}", table.to_text(max_rows));
  return 0;
}

int cmd_verify(const fs::path& config_file) {
  const auto cfg = ExperimentConfig::load(config_file);
  const auto run = run_experiment(cfg);
  const auto checks = verify_experiment(cfg, run.table);
  bool ok = true;
  for (const auto& c : checks) {
    fmt::print("{} {}: {}\n", c.pass ? "PASS" : "FAIL", c.name, c.detail);
    ok = ok && c.pass;
  }
  fmt::print("{}\n", ok ? "all checks passed" : "some checks failed");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"faberlab: Faber, weighted Faber and Chebyshev polynomials on Jordan curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FABERLAB_VERSION);

  std::string config;
  std::string dir;
  std::size_t max_rows = 0;

  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run->add_option("config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  auto* table = app.add_subcommand("table", "Print results.csv from a results directory");
  table->add_option("dir", dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  table->add_option("--max-rows", max_rows, "Rows to print (0 = all)");
  auto* verify = app.add_subcommand("verify", "Run an experiment and check its invariants");
  verify->add_option("config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(config);
    if (*table) return cmd_table(dir, max_rows);
    if (*verify) return cmd_verify(config);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}
