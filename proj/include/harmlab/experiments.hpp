#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "harmlab/scan.hpp"
#include "harmlab/suites.hpp"

namespace harmlab {

enum ExitStatus : int {
  kStatusOk = 0,
  kStatusSuiteFailure = 1,  // a verified invariant failed: solver bug
  kStatusBadInput = 2,
  kStatusResourceCap = 3,
};

/// One family entry of a composite experiment (suite presets span several
/// families with their own radii).
struct GroupRun {
  std::string group;
  int r_max = 4;
  int r0 = -1;              // certify: -1 falls back to the config r0
  std::string start = "e";  // simulate: start vertex
};

/// Everything an experiment needs; serializable as a single JSON document.
/// CLI flags override individual fields after the file is loaded.
struct ExperimentConfig {
  std::string kind;  // ball, exit, epsilon-scan, growth, certify, lemma2,
                     // telescope, simulate, probe-grigorchuk
  std::string name;  // output file prefix; defaults to kind
  std::string group = "z:1";
  std::vector<std::string> probs;  // per-generator overrides, "1/4" strings
  int r_min = 1;
  int r_max = 8;
  std::string mode = "auto";  // exact | float | auto
  std::string delta = "1/4";
  int r0 = 4;
  uint64_t samples = 1'000'000;
  uint64_t seed = 20240601;
  std::string out_dir = "out";
  std::string a = "e";  // base vertex / ball center, as a generator word
  std::string b;        // second vertex; empty = first generator
  int instances = 100;
  int32_t exact_limit = kDefaultExactInteriorLimit;
  uint64_t vertex_cap = kDefaultVertexCap;
  std::string cache_dir;       // empty: use HARMLAB_CACHE_DIR if set
  std::vector<GroupRun> runs;  // composite kinds; empty = single run from the fields above
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

/// Built-in experiment catalog; names are stable.
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

/// Runs one experiment, writing outputs atomically under config.out_dir.
/// Returns the process exit status: 0 ok, 1 invariant suite failed,
/// 2 bad input, 3 resource cap exceeded. Outputs are byte-identical for
/// identical (config, seed).
int run_experiment(const ExperimentConfig& config);

/// Write-temp-then-rename; never leaves partial files behind.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace harmlab
