#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harmlab/experiments.hpp"

using namespace harmlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("harmlab_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HARMLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("preset catalog is stable") {
  const std::vector<std::string> expected = {
      "z1-control",   "z2-control",        "heisenberg-growth", "f2-floor",
      "lamplighter-scan", "bs12-scan",     "lemma2-suite",      "telescoping-suite",
      "certify",      "mc-crosscheck",     "grigorchuk-probe"};
  REQUIRE(presets().size() >= 11);
  for (size_t i = 0; i < expected.size(); ++i) CHECK(presets()[i].name == expected[i]);
  CHECK(find_preset("z1-control") != nullptr);
  CHECK(find_preset("nope") == nullptr);
}

TEST_CASE("config json round trip and defaults") {
  ExperimentConfig c;
  c.kind = "epsilon-scan";
  c.group = "free:2";
  c.b = "a";
  c.seed = 99;
  const auto j = config_to_json(c);
  const ExperimentConfig back = config_from_json(j);
  CHECK(back.kind == c.kind);
  CHECK(back.group == c.group);
  CHECK(back.b == c.b);
  CHECK(back.seed == 99);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("run_experiment statuses") {
  ExperimentConfig bad;
  bad.kind = "no-such-kind";
  bad.out_dir = fresh_dir("status").string();
  CHECK(run_experiment(bad) == kStatusBadInput);

  ExperimentConfig empty_range = find_preset("z1-control")->config;
  empty_range.out_dir = bad.out_dir;
  empty_range.r_min = 5;
  empty_range.r_max = 2;
  CHECK(run_experiment(empty_range) == kStatusBadInput);

  ExperimentConfig capped = find_preset("z2-control")->config;
  capped.out_dir = bad.out_dir;
  capped.vertex_cap = 10;
  CHECK(run_experiment(capped) == kStatusResourceCap);

  ExperimentConfig exact_too_big = find_preset("z2-control")->config;
  exact_too_big.out_dir = bad.out_dir;
  exact_too_big.mode = "exact";
  exact_too_big.exact_limit = 5;
  CHECK(run_experiment(exact_too_big) == kStatusResourceCap);

  ExperimentConfig bad_probs = find_preset("z1-control")->config;
  bad_probs.out_dir = bad.out_dir;
  bad_probs.probs = {"1/2", "1/3"};  // does not sum to 1
  CHECK(run_experiment(bad_probs) == kStatusBadInput);

  ExperimentConfig bad_group = find_preset("z1-control")->config;
  bad_group.out_dir = bad.out_dir;
  bad_group.group = "dihedral:7";
  CHECK(run_experiment(bad_group) == kStatusBadInput);
}

TEST_CASE("z1-control emits the exact control law, byte-identically") {
  const fs::path dir = fresh_dir("z1");
  ExperimentConfig cfg = find_preset("z1-control")->config;
  cfg.out_dir = dir.string();
  REQUIRE(run_experiment(cfg) == kStatusOk);
  const std::string csv = slurp(dir / "z1-control.csv");
  std::ostringstream expect;
  expect << "family,a,b,r,mode,eps_num,eps_den,eps_float,argmax_boundary,excluded_mass_count\n";
  for (int r = 1; r <= 8; ++r) {
    char fwd[32], rev[32];
    std::snprintf(fwd, sizeof(fwd), "%.17g", Rational(1, r + 1).get_d());
    std::snprintf(rev, sizeof(rev), "%.17g", Rational(1, r).get_d());
    // forward order: the gambler's-ruin law 1/(r+1), attained first at +r+1;
    // reverse order (base 1): 1/r, attained at -(r+1)
    expect << "z:1,(0),(1)," << r << ",exact,1," << (r + 1) << ',' << fwd << ",(" << (r + 1)
           << "),0\n";
    expect << "z:1,(1),(0)," << r << ",exact,1," << r << ',' << rev << ",(-" << (r + 1)
           << "),0\n";
  }
  CHECK(csv == expect.str());

  // plot data: one (r, value, mode) row per radius
  const std::string tsv = slurp(dir / "z1-control.tsv");
  CHECK(tsv.rfind("r\tvalue\tmode\n1\t0.5\texact\n", 0) == 0);

  REQUIRE(run_experiment(cfg) == kStatusOk);
  CHECK(slurp(dir / "z1-control.csv") == csv);  // byte-identical rerun
}

TEST_CASE("growth and certify outputs") {
  const fs::path dir = fresh_dir("gc");
  ExperimentConfig g;
  g.kind = "growth";
  g.group = "z:2";
  g.r_max = 6;
  g.out_dir = dir.string();
  g.name = "g";
  REQUIRE(run_experiment(g) == kStatusOk);
  const std::string csv = slurp(dir / "g.csv");
  CHECK(csv.rfind("family,r,ball,boundary,new_vertices\nz:2,0,1,4,1\nz:2,1,5,8,4\n", 0) == 0);
  CHECK(slurp(dir / "g.json").find("\"polynomial\"") != std::string::npos);

  ExperimentConfig c = find_preset("certify")->config;
  c.out_dir = dir.string();
  REQUIRE(run_experiment(c) == kStatusOk);
  const std::string cert = slurp(dir / "certify.csv");
  CHECK(cert.find("z:1,1/4,4,5,1,3,64,1,2,2,1") != std::string::npos);
  CHECK(cert.find("free:2,1/4,2,3,0,") != std::string::npos);
  CHECK(fs::exists(dir / "certify.z_1.tsv"));
  CHECK(fs::exists(dir / "certify.free_2.tsv"));
}

TEST_CASE("ball and exit exports") {
  const fs::path dir = fresh_dir("be");
  ExperimentConfig b;
  b.kind = "ball";
  b.group = "z:1";
  b.r_max = 1;
  b.out_dir = dir.string();
  b.name = "ball";
  REQUIRE(run_experiment(b) == kStatusOk);
  CHECK(slurp(dir / "ball.csv") ==
        "kind,index,element,distance\n"
        "interior,0,(0),0\ninterior,1,(1),1\ninterior,2,(-1),1\n"
        "boundary,0,(2),2\nboundary,1,(-2),2\n");

  ExperimentConfig x;
  x.kind = "exit";
  x.group = "z:1";
  x.r_max = 1;
  x.out_dir = dir.string();
  x.name = "exit";
  x.mode = "exact";
  REQUIRE(run_experiment(x) == kStatusOk);
  CHECK(slurp(dir / "exit.csv").rfind("interior_index,boundary_index,numerator,denominator\n"
                                      "0,0,1,2\n0,1,1,2\n",
                                      0) == 0);
}

TEST_CASE("ball cache directory is honored") {
  const fs::path dir = fresh_dir("cache");
  ExperimentConfig cfg = find_preset("z1-control")->config;
  cfg.out_dir = (dir / "out").string();
  cfg.cache_dir = (dir / "balls").string();
  REQUIRE(run_experiment(cfg) == kStatusOk);
  size_t cached = 0;
  for (const auto& entry : fs::directory_iterator(dir / "balls")) {
    cached += entry.path().extension() == ".ball";
  }
  CHECK(cached == 8);  // one per radius
  const std::string first = slurp(dir / "out" / "z1-control.csv");
  REQUIRE(run_experiment(cfg) == kStatusOk);  // second run loads from cache
  CHECK(slurp(dir / "out" / "z1-control.csv") == first);
}

TEST_CASE("cli binary: presets, help, exit codes") {
  CHECK(run_cli("presets") == 0);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("run nope") == 2);
  CHECK(run_cli("frobnicate") == 2);

  const fs::path dir = fresh_dir("cli");
  CHECK(run_cli("epsilon-scan --group z:1 --b x1 --radius-min 3 --radius-max 2 --out " +
                (dir / "o").string()) == 2);
  CHECK(run_cli("run z1-control --out " + (dir / "o").string()) == 0);
  CHECK(fs::exists(dir / "o" / "z1-control.csv"));
}

TEST_CASE("cli binary: config file plus flag override") {
  const fs::path dir = fresh_dir("cfg");
  ExperimentConfig cfg;
  cfg.kind = "epsilon-scan";
  cfg.group = "z:1";
  cfg.b = "x1";
  cfg.r_min = 1;
  cfg.r_max = 6;
  cfg.mode = "exact";
  cfg.name = "scan";
  cfg.out_dir = (dir / "o").string();
  {
    std::ofstream f(dir / "cfg.json");
    f << config_to_json(cfg).dump(2);
  }
  CHECK(run_cli("epsilon-scan --config " + (dir / "cfg.json").string() + " --radius-max 2") == 0);
  const std::string csv = slurp(dir / "o" / "scan.csv");
  CHECK(csv.find(",1,exact,") != std::string::npos);
  CHECK(csv.find(",2,exact,") != std::string::npos);
  CHECK(csv.find(",3,exact,") == std::string::npos);  // flag narrowed the range

  CHECK(run_cli("epsilon-scan --config " + (dir / "missing.json").string()) == 2);
}
