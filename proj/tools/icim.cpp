// Batch front end: icim [options] <command> [target]
//
//   icim pmf --scheduler greedy
//   icim compare pmf --scheduler greedy --trials 100000 --seed 7
//   icim --scenario part2-default --format json --out pc power-savings

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "icim/cli/commands.hpp"
#include "icim/error.hpp"

using namespace icim;
using namespace icim::cli;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

void emit(const OutputTable& table, const std::string& out, const std::string& format) {
  if (out.empty()) {
    if (format != "json") std::cout << table.to_csv();
    if (format != "csv") std::cout << table.to_json();
    return;
  }
  if (format == "both") {
    auto stem = std::filesystem::path(out);
    if (stem.extension() == ".csv" || stem.extension() == ".json") stem.replace_extension();
    write_file(stem.string() + ".csv", table.to_csv());
    write_file(stem.string() + ".json", table.to_json());
    return;
  }
  write_file(out, format == "csv" ? table.to_csv() : table.to_json());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intercell-interference analysis: analytic models and Monte-Carlo checks"};
  app.set_version_flag("--version", kToolVersion);

  std::string command, target, scenario = "part1-default", out, format, scheduler, direction;
  std::vector<std::string> sets;
  long trials = -1, seed = -1;
  bool power_control = false, print_config = false;

  std::string commands;
  for (const auto& c : command_names()) commands += " " + c;
  app.add_option("command", command, "One of" + commands + ", simulate, compare")->required();
  app.add_option("target", target, "Command run by simulate / compare (default pmf)");
  app.add_option("--scenario", scenario, "part1-default, part2-default or a key = value file");
  app.add_option("--set", sets, "Override one key, key=value (repeatable)");
  app.add_option("--out", out, "Output path (stdout when empty)");
  app.add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--trials", trials, "Monte-Carlo trials");
  app.add_option("--seed", seed, "Monte-Carlo seed");
  app.add_option("--scheduler", scheduler,
                 "greedy, proportional-fair, round-robin, location-rr, greedy-rr, greedy-pc");
  app.add_option("--direction", direction, "uplink or downlink");
  app.add_flag("--power-control", power_control, "Open-loop power control min(P_max, P_0 r^beta)");
  app.add_flag("--print-config", print_config, "Print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto names = RunConfig::scenario_names();
    RunConfig cfg = std::find(names.begin(), names.end(), scenario) != names.end() ? RunConfig::scenario(scenario)
                                                                                   : RunConfig::from_file(scenario);
    for (const auto& s : sets) cfg.apply(s);
    if (trials >= 0) cfg.set("trials", std::to_string(trials));
    if (seed >= 0) cfg.set("seed", std::to_string(seed));
    if (!scheduler.empty()) cfg.set("scheduler", scheduler);
    if (!direction.empty()) cfg.set("direction", direction);
    if (power_control) cfg.set("power_control", "true");
    if (!out.empty()) cfg.set("out", out);
    if (!format.empty()) cfg.set("format", format);

    if (print_config) {
      cfg.validate();
      std::cout << cfg.to_text();
      return 0;
    }

    Mode mode = Mode::analytic;
    std::string name = command;
    if (command == "simulate" || command == "compare") {
      mode = command == "simulate" ? Mode::montecarlo : Mode::compare;
      name = target.empty() ? "pmf" : target;
    } else if (!target.empty()) {
      throw ConfigError("unexpected argument '" + target + "' after " + command);
    }

    const auto result = run_command(name, cfg, mode);
    emit(result.table, cfg.get("out"), cfg.get("format"));
    if (result.exit_code == 3) std::cerr << partial_object(result.table) << "\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << error_object(e) << "\n";
    return exit_code_for(e);
  }
}
