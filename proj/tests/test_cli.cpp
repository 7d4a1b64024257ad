// End-to-end runs of the command-line binary. Each case gets a scratch
// directory under the system temp dir and drives the tool via std::system.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pickles/json_io.hpp"
#include "pickles/parser.hpp"

using namespace pickles;
namespace fs = std::filesystem;

namespace {

const std::string kCli = PICKLES_CLI_PATH;
const std::string kSpec = std::string(PICKLES_DATA_DIR) + "/traffic_control.pickles";
const std::string kSamples = std::string(PICKLES_DATA_DIR) + "/samples_case_study.json";
const std::string kFixed = std::string(PICKLES_DATA_DIR) + "/fixed_case_study.json";

struct Scratch {
  fs::path dir;

  Scratch() {
    dir = fs::temp_directory_path() / "pickles_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr, interleaved
};

RunResult run_cli(const Scratch& scratch, const std::string& args) {
  std::string log = scratch.path("cli_output.log");
  int status = std::system((kCli + " " + args + " > " + log + " 2>&1").c_str());
  REQUIRE(WIFEXITED(status));
  std::ifstream in(log, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return {WEXITSTATUS(status), text.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string translate_to(const Scratch& scratch, const std::string& name) {
  std::string model = scratch.path(name);
  RunResult r = run_cli(scratch, "translate-spec " + kSpec + " --samples " + kSamples +
                                     " --out " + model);
  REQUIRE(r.exit_code == 0);
  return model;
}

}  // namespace

TEST_CASE("translate-spec writes the pruned master and per-scenario models") {
  Scratch scratch;
  std::string model = scratch.path("master.json");
  std::string scen_dir = scratch.path("scenarios");
  RunResult r = run_cli(scratch, "translate-spec " + kSpec + " --samples " + kSamples +
                                     " --scenario-dir " + scen_dir + " --out " + model);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("kept 28 switches, removed 52") != std::string::npos);

  Sts master = import_sts(slurp(model));
  CHECK(master.name == "master");
  CHECK(master.locations.size() == 25);
  CHECK(master.switches.size() == 28);

  for (const char* name : {"s1", "s2", "s3", "s4"}) {
    Sts s = import_sts(slurp((fs::path(scen_dir) / (name + std::string(".json"))).string()));
    CHECK(s.name == name);
  }
}

TEST_CASE("without decimal samples the report names the starved scenarios") {
  Scratch scratch;
  RunResult r = run_cli(scratch, "translate-spec " + kSpec + " --out " +
                                     scratch.path("coarse.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("scenarios with no reachable behaviour left:") != std::string::npos);
  CHECK(r.output.find("02: one faulty detector") != std::string::npos);
  CHECK(r.output.find("03: at least two faulty detectors") != std::string::npos);
  CHECK(r.output.find("a --samples file") != std::string::npos);

  Sts coarse = import_sts(slurp(scratch.path("coarse.json")));
  CHECK(coarse.switches.size() < 28);
}

TEST_CASE("generate is deterministic and reports full coverage") {
  Scratch scratch;
  std::string model = translate_to(scratch, "master.json");

  RunResult first = run_cli(scratch, "generate " + model + " --samples " + kSamples +
                                         " --out " + scratch.path("a.json"));
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("10 tests cover 28 of 28 switches") != std::string::npos);

  RunResult second = run_cli(scratch, "generate " + model + " --samples " + kSamples +
                                          " --out " + scratch.path("b.json"));
  CHECK(second.exit_code == 0);
  CHECK(slurp(scratch.path("a.json")) == slurp(scratch.path("b.json")));
}

TEST_CASE("render-tests writes one parseable file per test") {
  Scratch scratch;
  std::string model = translate_to(scratch, "master.json");
  REQUIRE(run_cli(scratch, "generate " + model + " --samples " + kSamples + " --out " +
                               scratch.path("tests.json"))
              .exit_code == 0);

  std::string dir = scratch.path("rendered");
  RunResult r = run_cli(scratch, "render-tests " + model + " " + scratch.path("tests.json") +
                                     " --out " + dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("wrote 10 test files") != std::string::npos);

  for (int k = 1; k <= 10; ++k) {
    std::string file = (fs::path(dir) / ("master_test_" + std::to_string(k) + ".pickles")).string();
    REQUIRE(fs::exists(file));
    CHECK_NOTHROW(parse_testcase(slurp(file)));
  }
}

TEST_CASE("count-inputs matches the per-scenario input space sizes") {
  Scratch scratch;
  std::string model = translate_to(scratch, "master.json");
  const std::pair<int, std::string> expected[] = {{1, "175"}, {2, "112"}, {3, "11"}, {4, "1"}};
  for (const auto& [ordinal, count] : expected) {
    RunResult r = run_cli(scratch, "count-inputs " + model + " --scenario " +
                                       std::to_string(ordinal) + " --fixed " + kFixed +
                                       " --samples " + kSamples);
    CHECK(r.exit_code == 0);
    CHECK(r.output == count + "\n");
  }
}

TEST_CASE("run passes the faithful controller and flags the seeded faults") {
  Scratch scratch;
  std::string model = translate_to(scratch, "master.json");
  REQUIRE(run_cli(scratch, "generate " + model + " --samples " + kSamples + " --out " +
                               scratch.path("tests.json"))
              .exit_code == 0);
  std::string dir = scratch.path("rendered");
  REQUIRE(run_cli(scratch, "render-tests " + model + " " + scratch.path("tests.json") +
                               " --out " + dir)
              .exit_code == 0);

  std::string files;
  for (int k = 1; k <= 10; ++k)
    files += " " + (fs::path(dir) / ("master_test_" + std::to_string(k) + ".pickles")).string();

  RunResult ok = run_cli(scratch, "run " + model + files + " --sut reference");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("10 of 10 tests passed") != std::string::npos);

  RunResult faulty = run_cli(scratch, "run " + model + " " + scratch.path("tests.json") +
                                          " --sut m3");
  CHECK(faulty.exit_code == 1);
  CHECK(faulty.output.find("7 of 10 tests passed") != std::string::npos);
}

TEST_CASE("user errors exit with status one and say what went wrong") {
  Scratch scratch;
  RunResult missing = run_cli(scratch, "generate " + scratch.path("absent.json"));
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.find("cannot open") != std::string::npos);

  std::ofstream(scratch.path("broken.json")) << "{\"pickles-schema\": 1";
  RunResult malformed = run_cli(scratch, "generate " + scratch.path("broken.json"));
  CHECK(malformed.exit_code == 1);
  CHECK(malformed.output.find("parse error") != std::string::npos);
}
