#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int counter = 0;

// Fresh scratch directory per call; contents survive for debugging.
std::string scratch_dir() {
  const fs::path p = fs::path("/tmp") / ("qosc_cli_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

int run_cli(const std::string& args, const std::string& log_prefix = "") {
  std::string prefix = log_prefix.empty() ? scratch_dir() + "/log" : log_prefix;
  const std::string cmd = std::string(QOSC_CLI_PATH) + " " + args + " > " + prefix + ".out 2> " +
                          prefix + ".err";
  const int rc = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string scenario(const char* name) {
  return std::string(QOSC_SCENARIO_DIR) + "/" + name + ".json";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::string footer;  // trailing comment line, if any

  int col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    REQUIRE(false);
    return -1;
  }
};

Csv parse_csv(const std::string& path) {
  Csv csv;
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) csv.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.footer = line;
      continue;
    }
    std::vector<double> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

}  // namespace

TEST_CASE("derive writes the full parameter table") {
  const std::string out = scratch_dir();
  CHECK(run_cli("derive --scenario " + scenario("static_small") + " --out " + out) == 0);
  const Csv csv = parse_csv(out + "/derived.csv");
  REQUIRE(csv.header.size() == 21);
  CHECK(csv.header.front() == "t");
  CHECK(csv.rows.size() >= 33);
  const int c_theta = csv.col("theta"), c_delta = csv.col("delta"), c_wc = csv.col("omega_c");
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == 21);
    CHECK(row[c_theta] == 0.0);
    CHECK(std::abs(row[c_delta]) < 1e-14);
    CHECK(row[c_wc] == 0.0);
  }
}

TEST_CASE("a drifting mixing angle exits with code 2") {
  const std::string out = scratch_dir();
  const int rc =
      run_cli("derive --scenario " + scenario("theta_drift") + " --out " + out, out + "/log");
  CHECK(rc == 2);
  CHECK(slurp(out + "/log.err").find("mixing angle") != std::string::npos);
}

TEST_CASE("solve cross-checks the two solution routes and dumps states") {
  const std::string out = scratch_dir();
  CHECK(run_cli("solve --scenario " + scenario("static_small") + " --out " + out) == 0);
  const Csv csv = parse_csv(out + "/solve.csv");
  REQUIRE(csv.rows.size() == 6);  // 2 modes x 3 output times
  const int c_fid = csv.col("fidelity_closed_vs_pipeline");
  const int c_np = csv.col("norm_pipeline");
  for (const auto& row : csv.rows) {
    CHECK(row[c_fid] > 1.0 - 1e-9);
    CHECK(row[c_np] == doctest::Approx(1.0).epsilon(1e-6));
  }
  for (const char* kind : {"closed", "pipeline"})
    for (const char* mode : {"0_0", "1_1"})
      for (const char* idx : {"000", "001", "002"})
        CHECK(fs::exists(out + "/" + kind + "_" + mode + "_" + idx + ".qstate"));
}

TEST_CASE("verify consumes a complete dump set and passes the static scenario") {
  const std::string out = scratch_dir();
  REQUIRE(run_cli("solve --scenario " + scenario("static_small") + " --out " + out) == 0);
  CHECK(run_cli("verify --scenario " + scenario("static_small") + " --out " + out) == 0);
  const Csv csv = parse_csv(out + "/verify.csv");
  CHECK(csv.footer == "# summary: pass");
  const int c_fid = csv.col("oracle_fidelity"), c_exp = csv.col("invariant_expectation");
  CHECK(csv.rows.front()[c_fid] > 1.0 - 1e-9);
  // First listed mode is (0, 0): expectation pins the ladder floor.
  CHECK(csv.rows.front()[c_exp] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("a partial dump set is refused") {
  const std::string out = scratch_dir();
  REQUIRE(run_cli("solve --scenario " + scenario("static_small") + " --out " + out) == 0);
  fs::remove(out + "/closed_1_1_001.qstate");
  CHECK(run_cli("verify --scenario " + scenario("static_small") + " --out " + out) == 4);
}

TEST_CASE("a corrupt dump is refused") {
  const std::string out = scratch_dir();
  REQUIRE(run_cli("solve --scenario " + scenario("static_small") + " --out " + out) == 0);
  const std::string victim = out + "/closed_0_0_001.qstate";
  const std::string bytes = slurp(victim);
  std::ofstream(victim, std::ios::binary | std::ios::trunc)
      .write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 3));
  CHECK(run_cli("verify --scenario " + scenario("static_small") + " --out " + out) == 4);
}

TEST_CASE("verification reports are byte reproducible") {
  const std::string out = scratch_dir();
  REQUIRE(run_cli("verify --scenario " + scenario("static_small") + " --out " + out) == 0);
  const std::string first = slurp(out + "/verify.csv");
  // Second run with an explicit thread cap; reductions are ordered, so the
  // bytes must not move.
  const std::string cmd = "QOSC_THREADS=2 " + std::string(QOSC_CLI_PATH) +
                          " verify --scenario " + scenario("static_small") + " --out " + out +
                          " > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out + "/verify.csv") == first);
}

TEST_CASE("config errors exit with code 1") {
  const std::string out = scratch_dir();
  CHECK(run_cli("derive --scenario /nonexistent.json --out " + out) == 1);
  CHECK(run_cli("verify --scenario " + scenario("static_small") + " --out " + out +
                " --tol-override bogus_key=0.1") == 1);
  CHECK(run_cli("verify --scenario " + scenario("static_small") + " --out " + out +
                " --tol-override oracle_fidelity=-1") == 1);

  // Scenario with no modes: solve has nothing to do.
  const std::string empty = out + "/empty_modes.json";
  std::ofstream(empty) << R"({
    "name": "empty",
    "schedules": {
      "mass": 1.0, "trap_frequency": 1.0, "field": 0.0,
      "static_coupling": 0.0, "dynamic_coupling": 0.0
    },
    "grid": {"nx": 32, "ny": 32, "x_min": -6, "x_max": 6, "y_min": -6, "y_max": 6},
    "time": {"t0": 0, "t1": 0.5, "dt": 0.0025, "output_points": 3, "mesh_points": 33},
    "modes": [],
    "mixing_angle": 0.0
  })";
  CHECK(run_cli("solve --scenario " + empty + " --out " + out) == 1);
  CHECK(run_cli("solve --scenario " + scenario("static_small") + " --out /proc/nope") == 1);
}

TEST_CASE("tolerance overrides can flip a verdict") {
  // Unmeetably tight residual bound (the override parser floors tolerances at
  // machine epsilon): the verification itself must fail (5).
  const std::string out = scratch_dir();
  REQUIRE(run_cli("solve --scenario " + scenario("static_small") + " --out " + out) == 0);
  CHECK(run_cli("verify --scenario " + scenario("static_small") + " --out " + out +
                " --tol-override schrodinger_residual=1e-15") == 5);
  const Csv csv = parse_csv(out + "/verify.csv");
  CHECK(csv.footer.find("# summary: fail") == 0);
  CHECK(csv.footer.find("schrodinger_residual") != std::string::npos);
}
