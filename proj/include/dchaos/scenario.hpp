#pragma once

// Scenario configuration (versioned JSON), task execution and report assembly.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dchaos/chaos_detect.hpp"

namespace dchaos {

inline constexpr int kSchemaVersion = 1;

/// How a grid vector is generated, kept so identity tasks can resample it on finer grids.
struct GridRecipe {
  std::string shape = "gaussian";  // gaussian | x_gaussian
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
  double x_max = 10.0;
  double h = 0.01;

  GridFunction sample() const;
  GridFunction sample(double h) const;
};

struct VectorDef {
  Element value;
  std::optional<GridRecipe> grid;
};

struct ScenarioConfig {
  std::string scenario;
  std::string description;
  std::vector<FamilySpec> families;
  std::map<std::string, VectorDef> vectors;
  std::map<std::string, RegionPredicate> regions;
  DetectionParams detection;
  nlohmann::ordered_json plan;  // resolved per task (events may reference vectors)
  nlohmann::ordered_json tasks;
  bool csv_profiles = true;

  const FamilySpec& family(const std::string& name, const std::string& path) const;
  const VectorDef& vector(const std::string& name, const std::string& path) const;
};

/// Schema error naming the offending field path for any violation.
ScenarioConfig parse_scenario(const nlohmann::ordered_json& doc);
ScenarioConfig load_scenario(const std::string& path);

struct RunOptions {
  std::optional<double> horizon;
  unsigned long long seed = 20240101;
  int threads = 1;
};

struct ScenarioResult {
  nlohmann::ordered_json report;
  std::string summary;
  /// File name -> CSV contents.
  std::map<std::string, std::string> csv;
  int exit_code = 0;
};

/// Runs every task. Exit code 0 when all checks pass, 2 when some check fails or is
/// inconclusive. Configuration errors propagate as Schema errors.
ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options);

/// Writes report.json, summary.txt and the CSV profiles into dir (created if missing).
/// The report's "metadata" member receives the wall-clock timestamp.
void write_outputs(const ScenarioResult& result, const std::string& dir);

/// Report without the metadata member, for byte comparisons between runs.
std::string report_without_metadata(const nlohmann::ordered_json& report);

/// Text of a double with 16 significant digits (e.g. 2.718281828459045).
std::string format_number(double x);

/// CSV with header "t,<column>".
std::string profile_csv(const std::vector<double>& t, const std::vector<double>& values, const std::string& column);

}  // namespace dchaos
