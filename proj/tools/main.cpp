#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "harmlab/experiments.hpp"

namespace {

using harmlab::ExperimentConfig;

struct Flags {
  std::optional<std::string> config_file, group, name, mode, delta, out, a, b, probs, cache_dir;
  std::optional<int> r_min, r_max, r0, instances, exact_limit;
  std::optional<uint64_t> samples, seed, vertex_cap;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file; flags override its fields");
  cmd->add_option("--group", f.group, "group spec: z:2, free:2, heis, lamplighter, bs:1:2, grigorchuk");
  cmd->add_option("--name", f.name, "output file prefix");
  cmd->add_option("--radius-min", f.r_min, "smallest radius");
  cmd->add_option("--radius-max", f.r_max, "largest radius / ball radius");
  cmd->add_option("--mode", f.mode, "arithmetic: exact, float or auto");
  cmd->add_option("--delta", f.delta, "certificate delta, a rational like 1/4");
  cmd->add_option("--r0", f.r0, "certificate threshold radius r0");
  cmd->add_option("--samples", f.samples, "Monte Carlo walk count");
  cmd->add_option("--seed", f.seed, "PRNG seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--a", f.a, "base vertex as a generator word (default e)");
  cmd->add_option("--b", f.b, "second vertex as a generator word (default: first generator)");
  cmd->add_option("--probs", f.probs, "comma-separated step probabilities, one rational per generator");
  cmd->add_option("--instances", f.instances, "randomized suite instance count");
  cmd->add_option("--exact-limit", f.exact_limit, "max interior size for exact solves");
  cmd->add_option("--vertex-cap", f.vertex_cap, "ball construction vertex cap");
  cmd->add_option("--cache-dir", f.cache_dir, "ball cache directory (default $HARMLAB_CACHE_DIR)");
}

void apply_flags(const Flags& f, ExperimentConfig& cfg) {
  if (f.group) cfg.group = *f.group;
  if (f.name) cfg.name = *f.name;
  if (f.mode) cfg.mode = *f.mode;
  if (f.delta) cfg.delta = *f.delta;
  if (f.out) cfg.out_dir = *f.out;
  if (f.a) cfg.a = *f.a;
  if (f.b) cfg.b = *f.b;
  if (f.cache_dir) cfg.cache_dir = *f.cache_dir;
  if (f.r_min) cfg.r_min = *f.r_min;
  if (f.r_max) cfg.r_max = *f.r_max;
  if (f.r0) cfg.r0 = *f.r0;
  if (f.samples) cfg.samples = *f.samples;
  if (f.seed) cfg.seed = *f.seed;
  if (f.instances) cfg.instances = *f.instances;
  if (f.exact_limit) cfg.exact_limit = *f.exact_limit;
  if (f.vertex_cap) cfg.vertex_cap = *f.vertex_cap;
  if (f.probs) {
    cfg.probs.clear();
    std::string cur;
    for (char c : *f.probs + ",") {
      if (c == ',') {
        if (!cur.empty()) cfg.probs.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
}

int load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "bad input: cannot open config file " << path << "\n";
    return harmlab::kStatusBadInput;
  }
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    cfg = harmlab::config_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return harmlab::kStatusBadInput;
  }
  return harmlab::kStatusOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "harmlab: exit measures, harmonic-function discrepancies and growth\n"
      "certificates on Cayley graphs of six group families"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"ball", "build a directed ball and dump its vertex table"},
      {"exit", "solve and export the exit-measure matrix of a ball"},
      {"epsilon-scan", "epsilon(B(a,r); a, b) over a radius range"},
      {"growth", "ball/boundary growth profile with fits"},
      {"certify", "growth-bound certificate for given delta, r0"},
      {"lemma2", "randomized nested-set monotonicity suite"},
      {"telescope", "exact geodesic ratio-chain suite"},
      {"simulate", "Monte Carlo walks cross-checked against the exact solver"},
      {"probe-grigorchuk", "word problem, growth and epsilon scans on the Grigorchuk group"},
  };

  std::map<std::string, Flags> flags;
  for (const auto& [kind, desc] : kinds) {
    CLI::App* cmd = app.add_subcommand(kind, desc);
    add_common_flags(cmd, flags[kind]);
  }
  std::string preset_name;
  {
    CLI::App* cmd = app.add_subcommand("run", "run a named preset experiment");
    cmd->add_option("preset", preset_name, "preset name (see `presets`)")->required();
    add_common_flags(cmd, flags["run"]);
  }
  app.add_subcommand("presets", "list the built-in experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return harmlab::kStatusBadInput;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string kind = sub->get_name();

  if (kind == "presets") {
    for (const auto& p : harmlab::presets()) {
      std::cout << p.name << "  -  " << p.description << "\n";
    }
    return harmlab::kStatusOk;
  }

  ExperimentConfig cfg;
  if (kind == "run") {
    const harmlab::Preset* preset = harmlab::find_preset(preset_name);
    if (!preset) {
      std::cerr << "bad input: unknown preset '" << preset_name << "'\n";
      return harmlab::kStatusBadInput;
    }
    cfg = preset->config;
  } else {
    cfg.kind = kind;
  }

  const Flags& f = flags[kind];
  if (f.config_file) {
    const std::string config_kind = cfg.kind;
    if (int status = load_config_file(*f.config_file, cfg); status != 0) return status;
    if (cfg.kind.empty()) cfg.kind = config_kind;
    if (kind != "run") cfg.kind = kind;  // the subcommand wins
  }
  apply_flags(f, cfg);
  if (cfg.name.empty()) cfg.name = cfg.kind;

  const int status = harmlab::run_experiment(cfg);
  if (status == harmlab::kStatusOk) {
    std::cout << cfg.name << ": ok, outputs in " << cfg.out_dir << "\n";
  } else {
    std::cout << cfg.name << ": exit status " << status << "\n";
  }
  return status;
}
