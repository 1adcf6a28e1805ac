// icsim: run, list and validate ICS network scenarios.
//
// Exit codes: 0 success, 2 bad arguments or invalid scenario, 3 runtime error.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "icsim/scenario/builtins.hpp"
#include "icsim/scenario/simulation.hpp"

namespace {

using namespace icsim;

constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A path that exists wins over a builtin of the same name.
scenario::ScenarioSpec resolve(const std::string& ref) {
  if (!std::filesystem::exists(ref)) {
    if (auto spec = scenario::builtin_scenario(ref)) return *spec;
  }
  try {
    return scenario::load_scenario(ref);
  } catch (const scenario::ParseError& e) {
    throw InvalidInput(ref + ": " + e.what());
  } catch (const scenario::ValidationError& e) {
    throw InvalidInput(ref + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InvalidInput(e.what());
  }
}

int cmd_run(const std::string& ref, std::optional<std::uint64_t> seed,
            std::optional<double> duration_s, const std::string& trace_path,
            const std::string& format_name, const std::string& snapshot_path) {
  const auto format = scenario::report_format_from_string(format_name);
  scenario::ScenarioSpec spec = resolve(ref);
  if (seed) spec.seed = *seed;
  if (duration_s) {
    if (!(*duration_s > 0) || !std::isfinite(*duration_s)) {
      throw InvalidInput("--duration must be a positive number of seconds");
    }
    spec.duration = static_cast<net::Micros>(std::llround(*duration_s * net::kSecond));
    if (spec.duration == 0) throw InvalidInput("--duration rounds to zero microseconds");
  }

  std::ofstream trace;
  scenario::RunOptions options;
  if (!trace_path.empty()) {
    trace.open(trace_path, std::ios::binary | std::ios::trunc);
    if (!trace) throw std::runtime_error("cannot write trace file: " + trace_path);
    options.trace_sink = &trace;
  }
  if (!snapshot_path.empty()) options.snapshot_path = snapshot_path;

  std::unique_ptr<scenario::Simulation> sim;
  try {
    sim = std::make_unique<scenario::Simulation>(spec, options);
  } catch (const scenario::ValidationError& e) {
    throw InvalidInput(e.what());
  }
  sim->run();
  trace.flush();
  if (!trace_path.empty() && !trace) throw std::runtime_error("error writing trace file");
  std::cout << scenario::report(sim->metrics(), format);
  return 0;
}

int cmd_list() {
  for (const std::string& name : scenario::builtin_names()) std::cout << name << "\n";
  return 0;
}

int cmd_validate(const std::string& ref) {
  const scenario::ScenarioSpec spec = resolve(ref);
  std::cout << spec.name << ": ok\n";
  return 0;
}

int cmd_show(const std::string& ref) {
  std::cout << scenario::serialize_scenario(resolve(ref));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic ICS network simulator"};
  app.require_subcommand(1);

  std::string ref;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::string trace_path;
  std::string format = "human";
  std::string snapshot_path;

  auto* run = app.add_subcommand("run", "Run a scenario file or builtin scenario");
  run->add_option("scenario", ref, "Scenario file or builtin name")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--duration", duration, "Override the duration, in seconds");
  run->add_option("--trace", trace_path, "Write the JSON-lines trace to this file");
  run->add_option("--report", format, "Report format")
      ->check(CLI::IsMember({"human", "json"}));
  run->add_option("--snapshot", snapshot_path, "Write the final physical-state snapshot here");

  auto* list = app.add_subcommand("list", "List builtin scenarios");

  std::string validate_ref;
  auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("file", validate_ref, "Scenario file or builtin name")->required();

  std::string show_ref;
  auto* show = app.add_subcommand("show", "Print a scenario in file format");
  show->add_option("scenario", show_ref, "Scenario file or builtin name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*run) return cmd_run(ref, seed, duration, trace_path, format, snapshot_path);
    if (*list) return cmd_list();
    if (*validate) return cmd_validate(validate_ref);
    if (*show) return cmd_show(show_ref);
  } catch (const InvalidInput& e) {
    std::cerr << "icsim: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "icsim: runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitInvalid;
}
