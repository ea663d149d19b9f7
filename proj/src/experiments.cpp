#include "harmlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace harmlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ':' || c == '/' || c == ' ') c = '_';
  }
  return out;
}

struct RunEnv {
  GroupContext ctx;
  StepDistribution dist;
};

RunEnv make_env(const std::string& group, const std::vector<std::string>& probs) {
  RunEnv env;
  env.ctx = make_group(parse_family(group));
  if (probs.empty()) {
    env.dist = uniform_steps(env.ctx);
  } else {
    std::vector<Rational> ps;
    ps.reserve(probs.size());
    for (const auto& s : probs) ps.push_back(parse_rational(s));
    env.dist = make_steps(env.ctx, ps);
  }
  return env;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& suffix) {
  fs::create_directories(cfg.out_dir);
  const std::string base = cfg.name.empty() ? cfg.kind : cfg.name;
  return (fs::path(cfg.out_dir) / (base + suffix)).string();
}

std::vector<GroupRun> effective_runs(const ExperimentConfig& cfg) {
  if (!cfg.runs.empty()) return cfg.runs;
  GroupRun run;
  run.group = cfg.group;
  run.r_max = cfg.r_max;
  run.r0 = cfg.r0;
  run.start = cfg.a;
  return {run};
}

BallCache make_cache(const ExperimentConfig& cfg) {
  return cfg.cache_dir.empty() ? BallCache::from_env() : BallCache(cfg.cache_dir);
}

// --- kind runners ---------------------------------------------------------

void append_scan_row(std::ostringstream& csv, const std::string& family, const std::string& a,
                     const std::string& b, const EpsilonScanEntry& e) {
  csv << family << ',' << a << ',' << b << ',' << e.r << ',' << mode_name(e.mode) << ',';
  if (e.mode == Mode::exact) {
    csv << num_str(e.eps_exact) << ',' << den_str(e.eps_exact);
  } else {
    csv << ',';
  }
  csv << ',' << fmt_double(e.eps_float) << ',' << e.argmax_element << ',' << e.excluded_mass_count
      << '\n';
}

int run_epsilon_scan(const ExperimentConfig& cfg) {
  RunEnv env = make_env(cfg.group, cfg.probs);
  const GroupElement a = parse_element(env.ctx, cfg.a);
  const GroupElement b =
      cfg.b.empty() ? env.ctx.generators.front().second : parse_element(env.ctx, cfg.b);
  const BallCache cache = make_cache(cfg);
  const auto entries =
      epsilon_scan_both(a, b, env.dist, cfg.r_min, cfg.r_max, parse_mode_policy(cfg.mode),
                        cfg.exact_limit, cache.enabled() ? &cache : nullptr, cfg.vertex_cap);

  // epsilon is not symmetric in (a, b): both base orders are reported.
  const std::string fam = env.ctx.fam.str();
  const std::string a_str = format_element(a), b_str = format_element(b);
  std::ostringstream csv;
  csv << "family,a,b,r,mode,eps_num,eps_den,eps_float,argmax_boundary,excluded_mass_count\n";
  std::ostringstream tsv, tsv_rev;
  tsv << "r\tvalue\tmode\n";
  tsv_rev << "r\tvalue\tmode\n";
  for (const auto& pair : entries) {
    append_scan_row(csv, fam, a_str, b_str, pair.forward);
    append_scan_row(csv, fam, b_str, a_str, pair.reverse);
    tsv << pair.forward.r << '\t' << fmt_double(pair.forward.eps_float) << '\t'
        << mode_name(pair.forward.mode) << '\n';
    tsv_rev << pair.reverse.r << '\t' << fmt_double(pair.reverse.eps_float) << '\t'
            << mode_name(pair.reverse.mode) << '\n';
  }
  write_file_atomic(out_path(cfg, ".csv"), csv.str());
  write_file_atomic(out_path(cfg, ".tsv"), tsv.str());
  write_file_atomic(out_path(cfg, ".reverse.tsv"), tsv_rev.str());

  // With b inside the smallest ball, the forward scan must be
  // nonincreasing in r (set monotonicity); a violation is a solver bug.
  for (size_t i = 1; i < entries.size(); ++i) {
    const auto& prev = entries[i - 1].forward;
    const auto& cur = entries[i].forward;
    if (prev.mode == Mode::exact && cur.mode == Mode::exact) {
      if (cur.eps_exact > prev.eps_exact) {
        std::cerr << "scan monotonicity violated at r=" << cur.r << "\n";
        return kStatusSuiteFailure;
      }
    } else if (cur.eps_float > prev.eps_float + 1e-12) {
      std::cerr << "scan monotonicity violated at r=" << cur.r << "\n";
      return kStatusSuiteFailure;
    }
  }
  return kStatusOk;
}

int run_growth(const ExperimentConfig& cfg) {
  RunEnv env = make_env(cfg.group, cfg.probs);
  const GrowthProfile profile = growth_profile(env.ctx, env.dist, cfg.r_max, cfg.vertex_cap);

  std::ostringstream csv;
  csv << "family,r,ball,boundary,new_vertices\n";
  std::ostringstream tsv;
  tsv << "r\tball\tboundary\tlog_ball\n";
  for (const auto& row : profile.rows) {
    csv << env.ctx.fam.str() << ',' << row.r << ',' << row.ball_size << ',' << row.boundary_size
        << ',' << row.new_vertices << '\n';
    tsv << row.r << '\t' << row.ball_size << '\t' << row.boundary_size << '\t'
        << fmt_double(std::log(static_cast<double>(row.ball_size))) << '\n';
  }
  const json j = {{"family", env.ctx.fam.str()},
                  {"classification", growth_class_name(profile.classification)},
                  {"exp_rate", profile.exp_rate},
                  {"poly_degree", profile.poly_degree},
                  {"exp_residual", profile.exp_residual},
                  {"poly_residual", profile.poly_residual},
                  {"truncated", profile.truncated}};
  write_file_atomic(out_path(cfg, ".csv"), csv.str());
  write_file_atomic(out_path(cfg, ".tsv"), tsv.str());
  write_file_atomic(out_path(cfg, ".json"), j.dump(2) + "\n");
  return kStatusOk;
}

int run_certify(const ExperimentConfig& cfg) {
  const BallCache cache = make_cache(cfg);
  const Rational delta = parse_rational(cfg.delta);
  std::ostringstream csv;
  csv << "family,delta,r0,r,premise_holds,bound_num,bound_den,min_mu_num,min_mu_den,"
         "boundary_size,conclusion_holds\n";
  bool coherent = true;
  for (const auto& run : effective_runs(cfg)) {
    // Probability overrides are per-generator and only make sense for a
    // single-family experiment.
    RunEnv env = make_env(run.group, cfg.runs.empty() ? cfg.probs : std::vector<std::string>{});
    const int r0 = run.r0 > 0 ? run.r0 : cfg.r0;
    const GrowthCertificate cert = growth_certificate(
        env.ctx, env.dist, delta, r0, run.r_max, cache.enabled() ? &cache : nullptr);
    std::ostringstream tsv;
    tsv << "r\tbound\tmeasured_min_mu\tholds\n";
    for (const auto& row : cert.rows) {
      csv << env.ctx.fam.str() << ',' << rational_str(delta) << ',' << r0 << ',' << row.r << ','
          << (row.premise_holds ? 1 : 0) << ',' << num_str(row.bound) << ',' << den_str(row.bound)
          << ',' << num_str(row.min_mu) << ',' << den_str(row.min_mu) << ',' << row.boundary_size
          << ',' << (row.conclusion_holds ? 1 : 0) << '\n';
      tsv << row.r << '\t' << fmt_double(row.bound.get_d()) << '\t'
          << fmt_double(row.min_mu.get_d()) << '\t' << (row.conclusion_holds ? 1 : 0) << '\n';
    }
    write_file_atomic(out_path(cfg, "." + sanitize(run.group) + ".tsv"), tsv.str());
    coherent = coherent && cert.coherent();
  }
  write_file_atomic(out_path(cfg, ".csv"), csv.str());
  return coherent ? kStatusOk : kStatusSuiteFailure;
}

int run_lemma2(const ExperimentConfig& cfg) {
  json reports = json::array();
  bool ok = true;
  for (const auto& run : effective_runs(cfg)) {
    RunEnv env = make_env(run.group, cfg.runs.empty() ? cfg.probs : std::vector<std::string>{});
    const SuiteResult res = lemma2_suite(env.ctx, env.dist, cfg.instances, run.r_max, cfg.seed);
    reports.push_back(res.to_json());
    ok = ok && res.ok();
  }
  write_file_atomic(out_path(cfg, ".json"), reports.dump(2) + "\n");
  return ok ? kStatusOk : kStatusSuiteFailure;
}

int run_telescope(const ExperimentConfig& cfg) {
  const BallCache cache = make_cache(cfg);
  json reports = json::array();
  bool ok = true;
  for (const auto& run : effective_runs(cfg)) {
    RunEnv env = make_env(run.group, cfg.runs.empty() ? cfg.probs : std::vector<std::string>{});
    const SuiteResult res =
        telescoping_suite(env.ctx, env.dist, run.r_max, cache.enabled() ? &cache : nullptr);
    reports.push_back(res.to_json());
    ok = ok && res.ok();
  }
  write_file_atomic(out_path(cfg, ".json"), reports.dump(2) + "\n");
  return ok ? kStatusOk : kStatusSuiteFailure;
}

int run_simulate(const ExperimentConfig& cfg) {
  json reports = json::array();
  std::ostringstream csv;
  csv << "family,r,start,samples,seed,z_max,total_variation,max_abs_diff,cap_hits\n";
  bool ok = true;
  for (const auto& run : effective_runs(cfg)) {
    RunEnv env = make_env(run.group, cfg.runs.empty() ? cfg.probs : std::vector<std::string>{});
    const GroupElement start = parse_element(env.ctx, run.start);
    const SuiteResult res =
        mc_crosscheck_suite(env.ctx, env.dist, run.r_max, start, cfg.samples, cfg.seed);
    reports.push_back(res.to_json());
    csv << env.ctx.fam.str() << ',' << run.r_max << ',' << format_element(start) << ','
        << cfg.samples << ',' << cfg.seed << ','
        << fmt_double(res.params.at("z_max").get<double>()) << ','
        << fmt_double(res.params.at("total_variation").get<double>()) << ','
        << fmt_double(res.params.at("max_abs_diff").get<double>()) << ','
        << res.params.at("cap_hits").get<uint64_t>() << '\n';
    ok = ok && res.ok();
  }
  write_file_atomic(out_path(cfg, ".csv"), csv.str());
  write_file_atomic(out_path(cfg, ".json"), reports.dump(2) + "\n");
  return ok ? kStatusOk : kStatusSuiteFailure;
}

int run_ball(const ExperimentConfig& cfg) {
  RunEnv env = make_env(cfg.group, cfg.probs);
  const GroupElement center = parse_element(env.ctx, cfg.a);
  const BallCache cache = make_cache(cfg);
  const DirectedBall ball = cache.enabled()
                                ? cache.get_or_build(center, env.dist, cfg.r_max, cfg.vertex_cap)
                                : build_ball(center, env.dist, cfg.r_max, cfg.vertex_cap);
  std::ostringstream csv;
  csv << "kind,index,element,distance\n";
  for (int32_t v = 0; v < ball.interior_count(); ++v) {
    csv << "interior," << v << ',' << format_element(ball.vertices[v]) << ',' << ball.dist[v]
        << '\n';
  }
  for (int32_t x = 0; x < ball.boundary_count(); ++x) {
    csv << "boundary," << x << ',' << format_element(ball.boundary[x]) << ','
        << (ball.radius + 1) << '\n';
  }
  write_file_atomic(out_path(cfg, ".csv"), csv.str());
  return kStatusOk;
}

int run_exit(const ExperimentConfig& cfg) {
  RunEnv env = make_env(cfg.group, cfg.probs);
  const GroupElement center = parse_element(env.ctx, cfg.a);
  const DirectedBall ball = build_ball(center, env.dist, cfg.r_max, cfg.vertex_cap);
  const ModePolicy policy = parse_mode_policy(cfg.mode);
  const bool exact = policy == ModePolicy::exact ||
                     (policy == ModePolicy::automatic && ball.interior_count() <= cfg.exact_limit);
  std::ostringstream csv;
  if (exact) {
    export_exit_measure_csv(exit_measure<Rational>(ball, cfg.exact_limit), csv);
  } else {
    export_exit_measure_csv(exit_measure<double>(ball), csv);
  }
  write_file_atomic(out_path(cfg, ".csv"), csv.str());
  return kStatusOk;
}

int run_probe_grigorchuk(const ExperimentConfig& cfg) {
  ExperimentConfig local = cfg;
  local.group = "grigorchuk";
  RunEnv env = make_env(local.group, {});
  const BallCache cache = make_cache(cfg);
  const BallCache* cache_ptr = cache.enabled() ? &cache : nullptr;
  json report;
  bool ok = true;

  // Defining relations through the word problem.
  {
    const auto& g = [&](const char* n) -> const GroupElement& { return env.ctx.generator(n); };
    const GroupElement ad = multiply(g("a"), g("d"));
    const GroupElement ad4 = multiply(multiply(ad, ad), multiply(ad, ad));
    json rel;
    rel["a2"] = is_identity(multiply(g("a"), g("a")));
    rel["b2"] = is_identity(multiply(g("b"), g("b")));
    rel["c2"] = is_identity(multiply(g("c"), g("c")));
    rel["d2"] = is_identity(multiply(g("d"), g("d")));
    rel["bc_eq_d"] = multiply(g("b"), g("c")) == g("d");
    rel["cb_eq_d"] = multiply(g("c"), g("b")) == g("d");
    rel["bd_eq_c"] = multiply(g("b"), g("d")) == g("c");
    rel["cd_eq_b"] = multiply(g("c"), g("d")) == g("b");
    rel["ad_pow4"] = is_identity(ad4);
    for (const auto& [k, v] : rel.items()) ok = ok && v.get<bool>();
    report["relations"] = rel;
  }

  // Ball growth with exact deduplication; sizes must strictly increase.
  {
    const GrowthProfile profile = growth_profile(env.ctx, env.dist, cfg.r_max, cfg.vertex_cap);
    std::ostringstream csv;
    csv << "family,r,ball,boundary,new_vertices\n";
    bool increasing = true;
    for (size_t i = 0; i < profile.rows.size(); ++i) {
      const auto& row = profile.rows[i];
      csv << "grigorchuk," << row.r << ',' << row.ball_size << ',' << row.boundary_size << ','
          << row.new_vertices << '\n';
      if (i > 0) increasing = increasing && row.ball_size > profile.rows[i - 1].ball_size;
    }
    write_file_atomic(out_path(cfg, ".growth.csv"), csv.str());
    report["ball_sizes_strictly_increasing"] = increasing;
    ok = ok && increasing;
  }

  // Harmonic-construction invariants on small balls.
  {
    const SuiteResult fn = fn_invariant_suite(env.ctx, env.dist, 12, 3, cfg.seed);
    report["fn_invariants"] = fn.to_json();
    ok = ok && fn.ok();
  }

  // Epsilon scans for the one-step pairs (e, a), ..., (e, d), both base
  // orders. Reported as data only; the artifact makes no claim about the
  // limit.
  {
    std::ostringstream csv;
    csv << "family,a,b,r,mode,eps_num,eps_den,eps_float,argmax_boundary,excluded_mass_count\n";
    const int scan_max = std::min(cfg.r_max, 6);
    for (const auto& [name, gen] : env.ctx.generators) {
      const auto entries = epsilon_scan_both(env.ctx.identity, gen, env.dist, 1, scan_max,
                                             ModePolicy::automatic, cfg.exact_limit, cache_ptr,
                                             cfg.vertex_cap);
      for (const auto& pair : entries) {
        append_scan_row(csv, "grigorchuk", "e", name, pair.forward);
        append_scan_row(csv, "grigorchuk", name, "e", pair.reverse);
      }
    }
    write_file_atomic(out_path(cfg, ".epsilon.csv"), csv.str());
  }

  // Successive f_n values at fixed vertices, one extremal target per
  // radius for the pair (e, a), so convergence can be eyeballed.
  {
    std::ostringstream tsv;
    tsv << "r\tvertex\tvalue\tx_n\n";
    const int fn_max = std::min(cfg.r_max, 5);
    const std::vector<GroupElement> probes = [&] {
      std::vector<GroupElement> v{env.ctx.identity};
      for (const auto& [name, gen] : env.ctx.generators) v.push_back(gen);
      return v;
    }();
    for (int r = 1; r <= fn_max; ++r) {
      const DirectedBall ball = cache_ptr ? cache_ptr->get_or_build(env.ctx.identity, env.dist, r)
                                          : build_ball(env.ctx.identity, env.dist, r);
      const auto em = exit_measure<Rational>(ball, cfg.exact_limit);
      const int32_t b = ball.interior_index(env.ctx.generator("a"));
      const auto xn = select_extremal_boundary(em, 0, b);
      const auto f = build_fn(em, 0, xn.value_or(0));
      for (const auto& v : probes) {
        const int32_t vi = ball.interior_index(v);
        if (vi < 0) continue;
        tsv << r << '\t' << format_element(v) << '\t' << fmt_double(f.interior[vi].get_d())
            << '\t' << format_element(ball.boundary[f.target]) << '\n';
      }
    }
    write_file_atomic(out_path(cfg, ".fn.tsv"), tsv.str());
  }

  write_file_atomic(out_path(cfg, ".json"), report.dump(2) + "\n");
  return ok ? kStatusOk : kStatusSuiteFailure;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
  static std::atomic<uint64_t> counter{0};
  const std::string tmp = path + ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) {
      std::remove(tmp.c_str());
      throw std::runtime_error("cannot write " + tmp);
    }
  }
  fs::rename(tmp, path);
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  auto get_str = [&](const char* k, std::string& out) {
    if (j.contains(k)) out = j.at(k).get<std::string>();
  };
  auto get_int = [&](const char* k, auto& out) {
    if (j.contains(k)) out = j.at(k).get<std::decay_t<decltype(out)>>();
  };
  get_str("kind", c.kind);
  get_str("name", c.name);
  get_str("group", c.group);
  get_str("mode", c.mode);
  get_str("delta", c.delta);
  get_str("out", c.out_dir);
  get_str("a", c.a);
  get_str("b", c.b);
  get_str("cache_dir", c.cache_dir);
  get_int("r_min", c.r_min);
  get_int("r_max", c.r_max);
  get_int("r0", c.r0);
  get_int("samples", c.samples);
  get_int("seed", c.seed);
  get_int("instances", c.instances);
  get_int("exact_limit", c.exact_limit);
  get_int("vertex_cap", c.vertex_cap);
  if (j.contains("probs")) {
    for (const auto& p : j.at("probs")) c.probs.push_back(p.get<std::string>());
  }
  if (j.contains("runs")) {
    for (const auto& r : j.at("runs")) {
      GroupRun run;
      run.group = r.at("group").get<std::string>();
      if (r.contains("r_max")) run.r_max = r.at("r_max").get<int>();
      if (r.contains("r0")) run.r0 = r.at("r0").get<int>();
      if (r.contains("start")) run.start = r.at("start").get<std::string>();
      c.runs.push_back(std::move(run));
    }
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"kind", c.kind},
            {"name", c.name},
            {"group", c.group},
            {"mode", c.mode},
            {"delta", c.delta},
            {"out", c.out_dir},
            {"a", c.a},
            {"b", c.b},
            {"cache_dir", c.cache_dir},
            {"r_min", c.r_min},
            {"r_max", c.r_max},
            {"r0", c.r0},
            {"samples", c.samples},
            {"seed", c.seed},
            {"instances", c.instances},
            {"exact_limit", c.exact_limit},
            {"vertex_cap", c.vertex_cap},
            {"probs", c.probs}};
  if (!c.runs.empty()) {
    json runs = json::array();
    for (const auto& r : c.runs) {
      runs.push_back({{"group", r.group}, {"r_max", r.r_max}, {"r0", r.r0}, {"start", r.start}});
    }
    j["runs"] = runs;
  }
  return j;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = [] {
    std::vector<Preset> t;
    auto add = [&](const std::string& name, const std::string& desc, ExperimentConfig cfg) {
      cfg.name = name;
      t.push_back({name, desc, std::move(cfg)});
    };
    {
      ExperimentConfig c;
      c.kind = "epsilon-scan";
      c.group = "z:1";
      c.b = "x1";
      c.r_min = 1;
      c.r_max = 8;
      c.mode = "exact";
      add("z1-control", "exact epsilon scan on Z, pair (0, 1); the gambler's-ruin control", c);
    }
    {
      ExperimentConfig c;
      c.kind = "epsilon-scan";
      c.group = "z:2";
      c.b = "x1";
      c.r_min = 1;
      c.r_max = 8;
      add("z2-control", "epsilon scan on Z^2, pair (0, e1)", c);
    }
    {
      ExperimentConfig c;
      c.kind = "growth";
      c.group = "heis";
      c.r_max = 16;
      add("heisenberg-growth", "ball growth profile of the Heisenberg group to r=16", c);
    }
    {
      ExperimentConfig c;
      c.kind = "epsilon-scan";
      c.group = "free:2";
      c.b = "a";
      c.r_min = 1;
      c.r_max = 6;
      add("f2-floor", "epsilon scan on F2, pair (e, a); the persistent-floor signature", c);
    }
    {
      ExperimentConfig c;
      c.kind = "epsilon-scan";
      c.group = "lamplighter";
      c.b = "t";
      c.r_min = 1;
      c.r_max = 6;
      add("lamplighter-scan", "epsilon scan on the lamplighter group, pair (e, t)", c);
    }
    {
      ExperimentConfig c;
      c.kind = "epsilon-scan";
      c.group = "bs:1:2";
      c.b = "s";
      c.r_min = 1;
      c.r_max = 6;
      add("bs12-scan", "epsilon scan on BS(1,2), pair (e, s)", c);
    }
    {
      ExperimentConfig c;
      c.kind = "lemma2";
      c.instances = 100;
      c.runs = {{"z:2", 4, -1, "e"},
                {"free:2", 4, -1, "e"},
                {"lamplighter", 4, -1, "e"},
                {"bs:1:2", 4, -1, "e"}};
      add("lemma2-suite", "randomized nested-set monotonicity suite, 100 instances per family", c);
    }
    {
      ExperimentConfig c;
      c.kind = "telescope";
      c.runs = {{"z:1", 8, -1, "e"}, {"z:2", 5, -1, "e"}, {"free:2", 4, -1, "e"}};
      add("telescoping-suite", "exact geodesic ratio chains on Z, Z^2 and F2 balls", c);
    }
    {
      ExperimentConfig c;
      c.kind = "certify";
      c.delta = "1/4";
      c.runs = {{"z:1", 12, 4, "e"}, {"free:2", 6, 2, "e"}};
      add("certify", "growth-bound certificate: holds on Z, premise fails on F2", c);
    }
    {
      ExperimentConfig c;
      c.kind = "simulate";
      c.samples = 1'000'000;
      c.runs = {{"z:1", 4, -1, "e"}, {"free:2", 3, -1, "e"}};
      add("mc-crosscheck", "1e6 Monte Carlo walks against the exact solver", c);
    }
    {
      ExperimentConfig c;
      c.kind = "probe-grigorchuk";
      c.group = "grigorchuk";
      c.r_max = 8;
      add("grigorchuk-probe",
          "word-problem relations, exact ball growth and epsilon scans on the Grigorchuk group",
          c);
    }
    return t;
  }();
  return table;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

int run_experiment(const ExperimentConfig& config) {
  try {
    if (config.r_min > config.r_max) {
      throw std::invalid_argument("empty radius range");
    }
    if (config.kind == "epsilon-scan") return run_epsilon_scan(config);
    if (config.kind == "growth") return run_growth(config);
    if (config.kind == "certify") return run_certify(config);
    if (config.kind == "lemma2") return run_lemma2(config);
    if (config.kind == "telescope") return run_telescope(config);
    if (config.kind == "simulate") return run_simulate(config);
    if (config.kind == "ball") return run_ball(config);
    if (config.kind == "exit") return run_exit(config);
    if (config.kind == "probe-grigorchuk") return run_probe_grigorchuk(config);
    throw std::invalid_argument("unknown experiment kind '" + config.kind + "'");
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kStatusResourceCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kStatusBadInput;
  } catch (const json::exception& e) {
    std::cerr << "bad config: " << e.what() << "\n";
    return kStatusBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStatusSuiteFailure;
  }
}

}  // namespace harmlab
