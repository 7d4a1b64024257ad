// Command-line driver: suite translation, test generation, rendering,
// input counting, and conformance runs against the bundled reference SUT.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pickles/compose.hpp"
#include "pickles/conformance.hpp"
#include "pickles/diagnostics.hpp"
#include "pickles/json_io.hpp"
#include "pickles/parser.hpp"
#include "pickles/prune.hpp"
#include "pickles/render.hpp"
#include "pickles/translate.hpp"

namespace fs = std::filesystem;
using namespace pickles;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw Error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spill(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw Error("cannot write " + path.string());
  out << bytes;
}

SamplingPlan plan_for(const Sts& s, const std::string& samples_path) {
  SamplingPlan plan = default_sampling_plan(s);
  if (!samples_path.empty()) plan.merge_overrides(parse_samples(slurp(samples_path)));
  return plan;
}

void print_prune_report(const PruneReport& report) {
  std::cout << "kept " << report.kept_switches << " switches, removed "
            << report.removed_switches.size() << "\n";
  bool sampling_sensitive = false;
  for (const PruneReport::RemovedSwitch& r : report.removed_switches) {
    std::cout << "  removed [" << r.scenario << "] " << r.brief
              << (r.sampling_sensitive ? "  (depends on decimal samples)" : "") << "\n";
    sampling_sensitive = sampling_sensitive || r.sampling_sensitive;
  }
  if (!report.removed_locations.empty()) {
    std::cout << "dropped " << report.removed_locations.size() << " unreachable locations\n";
  }
  if (!report.unreachable_scenarios.empty()) {
    std::cout << "scenarios with no reachable behaviour left:\n";
    for (const std::string& title : report.unreachable_scenarios)
      std::cout << "  " << title << "\n";
  }
  if (sampling_sensitive)
    std::cout << "hint: removed switches compare decimal quantities; a --samples file "
                 "with more points may make them satisfiable\n";
}

std::unique_ptr<SutAdapter> make_sut(const std::string& name) {
  if (name == "reference") return std::make_unique<ReferenceSut>();
  if (name == "m1")
    return std::make_unique<ReferenceSut>(ReferenceSut::Fault::NoneInsideReportsPartial);
  if (name == "m2")
    return std::make_unique<ReferenceSut>(ReferenceSut::Fault::OneInsideReportsFull);
  if (name == "m3")
    return std::make_unique<ReferenceSut>(ReferenceSut::Fault::ManyInsideReportsFull);
  if (name == "m4")
    return std::make_unique<ReferenceSut>(ReferenceSut::Fault::LostAccessKeepsEnabled);
  throw Error("unknown SUT '" + name + "' (expected reference, m1, m2, m3, or m4)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PicklesDSL model-based testing toolchain", "pickles"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string samples, out;
  int depth = 3;
  app.add_option("--samples", samples, "decimal samples file (JSON object: path -> samples)");
  app.add_option("--depth", depth, "master model composition depth")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output file (or directory for render-tests)");

  std::string spec_file, scenario_dir;
  CLI::App* translate = app.add_subcommand(
      "translate-spec", "translate a suite and write the pruned master model");
  translate->add_option("spec", spec_file, "specification suite (.pickles)")->required();
  translate->add_option("--scenario-dir", scenario_dir,
                        "also write one model per scenario into this directory");

  std::string model_file;
  CLI::App* generate =
      app.add_subcommand("generate", "generate a switch-covering test suite for a model");
  generate->add_option("model", model_file, "model document (JSON)")->required();

  std::string tests_file;
  CLI::App* render = app.add_subcommand(
      "render-tests", "write each test of a suite as a readable .pickles file");
  render->add_option("model", model_file, "model document (JSON)")->required();
  render->add_option("tests", tests_file, "test suite document (JSON)")->required();

  std::uint64_t switch_id = 0;
  int scenario_ordinal = 0;
  std::string fixed_file;
  CLI::App* count = app.add_subcommand(
      "count-inputs", "count the distinct input values satisfying one switch guard");
  count->add_option("model", model_file, "model document (JSON)")->required();
  CLI::Option* by_switch = count->add_option("--switch", switch_id, "switch id");
  CLI::Option* by_scenario = count->add_option(
      "--scenario", scenario_ordinal, "first input switch of this scenario ordinal");
  by_switch->excludes(by_scenario);
  count->add_option("--fixed", fixed_file,
                    "values for the stored variables the guard reads (JSON)");

  std::string sut_name = "reference";
  std::vector<std::string> test_paths;
  CLI::App* run = app.add_subcommand("run", "execute tests against a system under test");
  run->add_option("model", model_file, "model document (JSON)")->required();
  run->add_option("tests", test_paths, "test files (.pickles text or suite JSON)")
      ->required();
  run->add_option("--sut", sut_name, "reference or one of the seeded faults m1..m4");

  int exit_code = 0;

  translate->callback([&] {
    TranslationResult tr = translate_suite(parse_spec(slurp(spec_file)));
    std::vector<Sts> all = tr.primary;
    all.insert(all.end(), tr.secondary.begin(), tr.secondary.end());
    Sts master = master_model(tr.primary, all, depth);
    BoundedSolver solver(plan_for(master, samples));
    PruneReport report;
    Sts pruned = prune(master, solver, &report);
    if (!scenario_dir.empty()) {
      fs::create_directories(scenario_dir);
      for (const Sts& s : all) spill(fs::path(scenario_dir) / (s.name + ".json"), export_sts(s));
    }
    fs::path model_path = out.empty() ? "master.json" : out;
    spill(model_path, export_sts(pruned));
    print_prune_report(report);
    std::cout << "wrote " << model_path.string() << " (" << pruned.locations.size()
              << " locations, " << pruned.switches.size() << " switches)\n";
  });

  generate->callback([&] {
    Sts s = import_sts(slurp(model_file));
    BoundedSolver solver(plan_for(s, samples));
    if (s.switches.empty())
      std::cout << "warning: the model has no switches; writing an empty suite\n";
    std::vector<FormalTestCase> tests = generate_switch_coverage(s, solver);
    CoverageReport cov = coverage_of(tests, s);
    fs::path tests_path = out.empty() ? "tests.json" : out;
    spill(tests_path, export_tests(tests, s));
    std::cout << tests.size() << " tests cover " << cov.covered.size() << " of "
              << cov.total << " switches\n";
    std::cout << "wrote " << tests_path.string() << "\n";
  });

  render->callback([&] {
    Sts s = import_sts(slurp(model_file));
    std::vector<FormalTestCase> tests = import_tests(slurp(tests_file), s);
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    fs::create_directories(dir);
    for (std::size_t k = 0; k < tests.size(); ++k) {
      fs::path file = dir / (s.name + "_test_" + std::to_string(k + 1) + ".pickles");
      spill(file, render_test(tests[k], s));
    }
    std::cout << "wrote " << tests.size() << " test files to " << dir.string() << "\n";
  });

  count->callback([&] {
    Sts s = import_sts(slurp(model_file));
    std::size_t idx = s.switches.size();
    if (by_switch->count() > 0) {
      idx = static_cast<std::size_t>(switch_id);
      if (idx >= s.switches.size())
        throw Error("no switch " + std::to_string(switch_id) + " (the model has " +
                    std::to_string(s.switches.size()) + ")");
    } else if (by_scenario->count() > 0) {
      for (std::size_t i = 0; i < s.switches.size(); ++i) {
        const Switch& sw = s.switches[i];
        if (sw.direction != Direction::Input || sw.scenario.size() < 2) continue;
        if (std::stoi(sw.scenario.substr(0, 2)) != scenario_ordinal) continue;
        idx = i;
        break;
      }
      if (idx == s.switches.size())
        throw Error("no input switch for scenario ordinal " +
                    std::to_string(scenario_ordinal));
    } else {
      throw Error("pass --switch or --scenario to pick the guard to count");
    }
    std::map<std::string, Value> fixed;
    if (!fixed_file.empty()) fixed = parse_fixed_values(slurp(fixed_file), s);
    std::cout << count_satisfying_inputs(s, s.switches[idx], fixed, plan_for(s, samples))
              << "\n";
  });

  run->callback([&] {
    Sts s = import_sts(slurp(model_file));
    SuiteContext ctx = context_of(s);
    std::unique_ptr<SutAdapter> sut = make_sut(sut_name);
    int failed = 0, total = 0;
    auto run_one = [&](const std::string& label, const std::string& text) {
      Verdict v = run_test(text, *sut, ctx);
      std::cout << label << ": " << v.str() << "\n";
      ++total;
      if (!v.pass) ++failed;
    };
    for (const std::string& path : test_paths) {
      if (fs::path(path).extension() == ".json") {
        std::vector<FormalTestCase> tests = import_tests(slurp(path), s);
        for (std::size_t k = 0; k < tests.size(); ++k)
          run_one(path + "#" + std::to_string(k + 1), render_test(tests[k], s));
      } else {
        run_one(path, slurp(path));
      }
    }
    std::cout << total - failed << " of " << total << " tests passed\n";
    if (failed > 0) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const InternalError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
