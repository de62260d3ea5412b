#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fm/measure_io.hpp"

namespace {

const std::string kBin = FRACTALMETER_BIN;

int run(const std::string& args) {
  std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/fm_cli_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen round-trips through the loader") {
  TempFile f("branch.json");
  CHECK(run("gen --kind branching --pattern 0,1,3 --depth 6 --out " + f.path) == 0);
  auto m = fm::load_measure(f.path);
  CHECK(m.dim() == 2);
  CHECK(m.depth() == 6);
  CHECK(m.mode == fm::NumericMode::Rational);
}

TEST_CASE("gen circle writes a unit-mass float measure") {
  TempFile f("circle.json");
  CHECK(run("gen --kind circle --radius 0.25 --center 0.5,0.5 --level 7 --out " +
            f.path) == 0);
  auto m = fm::load_measure(f.path);
  CHECK(m.mode == fm::NumericMode::Float64);
  CHECK(fm::discretize(*m.flt, 7).total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gen beta reproduces the recorded tree hash") {
  TempFile f("beta42.json");
  CHECK(run("gen --kind beta --p 0.7 --seed 42 --depth 8 --out " + f.path) == 0);
  auto m = fm::load_measure(f.path);
  REQUIRE(m.mode == fm::NumericMode::Rational);
  CHECK(fm::tree_hash(*m.exact) == 4671654600078006655ull);
}

TEST_CASE("analyze entropy reports the 3-branch rate") {
  TempFile f("tb.json");
  TempFile rep("ent_rep.json");
  REQUIRE(run("gen --kind branching --pattern 0,1,3 --depth 8 --out " + f.path) == 0);
  CHECK(run("analyze entropy -m " + f.path + " --level 8 --coarse 4 --out " + rep.path) ==
        0);
  auto j = nlohmann::json::parse(slurp(rep.path));
  CHECK(j["normalized_entropy"].get<double>() == doctest::Approx(std::log2(3.0)));
  CHECK(j["conditional_entropy"].get<double>() == doctest::Approx(4 * std::log2(3.0)));
}

TEST_CASE("analyze energy prints 1.5 for the uniform") {
  TempFile f("uni.json");
  TempFile rep("energy_rep.json");
  REQUIRE(run("gen --kind branching --pattern 0,1,2,3 --depth 5 --out " + f.path) == 0);
  CHECK(run("analyze energy -m " + f.path + " --s 1.0 --out " + rep.path) == 0);
  auto j = nlohmann::json::parse(slurp(rep.path));
  CHECK(j["dyadic_energy"].get<double>() == doctest::Approx(1.5));
  CHECK(j["dyadic_energy_exact"]["a"].get<std::string>() == "3/2");
}

TEST_CASE("analyze pindist on a point mass yields one bin") {
  TempFile f("pm.json");
  TempFile rep("pind_rep.json");
  REQUIRE(run("gen --kind branching --pattern 3 --depth 6 --out " + f.path) == 0);
  CHECK(run("analyze pindist -m " + f.path +
            " --y -0.5,-0.5 --out-level 6 --subdiv 0 --out " + rep.path) == 0);
  auto j = nlohmann::json::parse(slurp(rep.path));
  CHECK(j["charged_bins"].get<int>() == 1);
  CHECK(j["entropy_bits"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("exit codes distinguish usage, validation and assertion failures") {
  CHECK(run("definitely-not-a-command") == 2);
  CHECK(run("gen --kind nosuch --out /tmp/fm_cli_x.json") == 3);
  TempFile f("uni2.json");
  REQUIRE(run("gen --kind branching --pattern 0,1,2,3 --depth 4 --out " + f.path) == 0);
  CHECK(run("analyze energy -m " + f.path + " --s 5.0") == 3);
  CHECK(run("analyze energy -m /nonexistent.json") == 3);
}

TEST_CASE("verify identities passes at the small size") {
  CHECK(run("verify identities --size small") == 0);
}

TEST_CASE("experiment reports are byte-identical across runs") {
  TempFile spec("exp_spec.json");
  TempFile rep1("exp1.json");
  TempFile rep2("exp2.json");
  {
    std::ofstream out(spec.path);
    out << R"({
      "generator": {"kind": "branching", "pattern": [0,1,3], "depth": 7},
      "t": 0.5, "eps": 0.4, "s": 1.585, "n_angles": 32, "seed": 3,
      "candidate_grid": {"n": 3, "x0": -1.0, "y0": -1.0, "side": 0.75}
    })";
  }
  int rc1 = run("experiment " + spec.path + " --out " + rep1.path);
  int rc2 = run("experiment " + spec.path + " --out " + rep2.path);
  CHECK(rc1 == rc2);
  auto j1 = nlohmann::ordered_json::parse(slurp(rep1.path));
  auto j2 = nlohmann::ordered_json::parse(slurp(rep2.path));
  j1.erase("timestamp");
  j1.erase("wall_clock_ms");
  j2.erase("timestamp");
  j2.erase("wall_clock_ms");
  CHECK(j1.dump() == j2.dump());

  // report subcommand summarizes it with a matching exit code
  int rep_rc = run("report " + rep1.path);
  CHECK(rep_rc == rc1);
}

TEST_SUITE_END();
