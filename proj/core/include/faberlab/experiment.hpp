#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "faberlab/chebyshev.hpp"
#include "faberlab/curve.hpp"
#include "faberlab/result_table.hpp"

namespace faberlab {

enum class Task {
  FaberNorms,
  WeightedNorms,
  ChebyshevWidom,
  PointwiseProfile,
  VariationChecks,
  Figure1,
  Figure2
};

std::string_view to_string(Task task);
Task task_from_string(std::string_view name);

/// Parsed experiment configuration. The JSON schema is strict: unknown
/// fields anywhere are rejected.
///
///   {
///     "curve": {"kind": "deltoid"},
///     "task": "faber_norms",
///     "n_list": [10, 20] | {"from": 300, "to": 400, "step": 1},
///     "m": 8,
///     "mesh": {"base_count": 1024, "corner_refine_levels": 8},
///     "solver": {"tol": 1e-6, "max_iter": 500, "gamma": 1, "polish": true,
///                "exchange_pass": false},
///     "norm_tol": 1e-10,
///     "profile_points": 8192,
///     "seed": 0,
///     "output": "results/deltoid",
///     "cache": true
///   }
struct ExperimentConfig {
  nlohmann::json curve = {{"kind", "circle"}};
  Task task = Task::FaberNorms;
  std::vector<int> n_list;
  std::optional<int> m;
  int base_count = 1024;
  int corner_refine_levels = 8;
  ChebyshevOptions solver;
  double norm_tol = 1e-10;
  int profile_points = 8192;
  int seed = 0;
  std::filesystem::path output = "results";
  bool cache = true;

  /// Relative output paths are resolved against base_dir.
  static ExperimentConfig from_json(const nlohmann::json& j,
                                    const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& file);

  /// Canonical form with every field spelled out; output and cache flag
  /// are included only when with_location is set.
  nlohmann::json to_json(bool with_location = true) const;
  ExteriorMap make_curve() const;
};

/// SHA-256 of the canonical (sorted-key) configuration without the output
/// location and cache flag.
std::string cache_key(const ExperimentConfig& config);

struct ExperimentRun {
  ResultTable table;
  nlohmann::json meta;
  bool from_cache = false;
};

/// Executes the task, writes results.csv and meta.json to config.output and
/// stores a copy under output/.cache/<key>/ for reuse by identical configs.
ExperimentRun run_experiment(const ExperimentConfig& config);

/// Executes the task without touching the file system.
ResultTable compute_experiment(const ExperimentConfig& config);

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Curve invariants plus task-specific checks on the produced table.
std::vector<Assertion> verify_experiment(const ExperimentConfig& config, const ResultTable& table);

}  // namespace faberlab
