#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "icim/cli/commands.hpp"
#include "icim/error.hpp"

using namespace icim;
using namespace icim::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int tool(const std::string& args) {
  const std::string cmd = std::string(ICIM_TOOL_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double column_sum(const OutputTable& t, const std::string& name) {
  double s = 0.0;
  for (int i = 0; i < static_cast<int>(t.rows().size()); ++i) s += t.at(i, name);
  return s;
}

}  // namespace

TEST_CASE("scenarios carry the caption parameters") {
  const auto p1 = RunConfig::scenario("part1-default");
  CHECK(p1.number("radius_m") == 500.0);
  CHECK(p1.number("beta") == 2.6);
  CHECK(p1.integer("users") == 50);
  CHECK(p1.integer("interferers") == 6);
  CHECK(p1.integer("angular_intervals") == 720);
  CHECK(p1.number("bin_width_m") == 50.0);
  CHECK(p1.number("pathloss_db") == 60.0);
  CHECK(p1.number("noise_psd_dbm_hz") == -174.0);
  CHECK(p1.interference_fading().mean() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p1.partition().ring_count() == 10);

  const auto p2 = RunConfig::scenario("part2-default");
  CHECK(p2.number("beta") == 2.2);
  CHECK(p2.scheduler().kind == SchedulerKind::greedy_pc);
  CHECK(p2.budget().power().threshold(2.2) == doctest::Approx(260.0).epsilon(1e-12));
  CHECK(p2.budget().gain == 1.0);
  CHECK_THROWS_AS(RunConfig::scenario("part3"), ConfigError);
}

TEST_CASE("unknown and repeated keys are rejected") {
  RunConfig c;
  CHECK_THROWS_AS(c.set("radius", "400"), ConfigError);
  CHECK_THROWS_AS(c.apply("betaa=2"), ConfigError);
  CHECK_THROWS_AS(c.apply("beta"), ConfigError);
  CHECK_THROWS_AS(c.merge_text("beta = 2\nbeta = 3\n"), ConfigError);
  CHECK_THROWS_AS(c.merge_text("no equals sign\n"), ConfigError);
  c.merge_text("# comment\n\nbeta = 3.0   # trailing\nusers=30\n");
  CHECK(c.number("beta") == 3.0);
  CHECK(c.integer("users") == 30);
  c.set("users", "thirty");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.set("users", "30");
  c.set("scheduler", "best-effort");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.set("scheduler", "greedy");
  c.set("signal_fading", "lognormal:1");
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("effective config text round-trips") {
  auto a = RunConfig::scenario("part2-default");
  a.apply("seed=9");
  RunConfig b;
  b.merge_text(a.to_text());
  CHECK(a.values() == b.values());
  CHECK(a.fingerprint() == b.fingerprint());
  b.apply("seed=10");
  CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("output tables round-trip through CSV and JSON") {
  OutputTable t(std::vector<Column>{{"x", "m"}, {"y", "-"}});
  t.add_row({0.1, std::numbers::pi});
  t.add_row({1e-300, -2.5e17});
  t.add_row({std::nextafter(1.0, 2.0), 0.0});
  t.metadata["method"] = "analytic";
  t.config["beta"] = "2.6";
  CHECK(OutputTable::from_csv(t.to_csv()) == t);
  CHECK(OutputTable::from_json(t.to_json()) == t);

  const auto csv = t.to_csv();
  CHECK(csv.find("x (m),y (-)\n") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK_THROWS_AS(t.add_row({1.0}), DomainError);
  CHECK_THROWS_AS(t.add_row({1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(t.add_column({"z", "-"}, {1.0}), DomainError);
}

TEST_CASE("pmf at defaults is normalized and echoes the config") {
  RunConfig c;
  const auto r = run_command("pmf", c);
  CHECK(r.exit_code == 0);
  CHECK(r.table.rows().size() == 10);
  CHECK(std::abs(column_sum(r.table, "probability") - 1.0) <= 1e-5);
  CHECK(r.table.config == c.values());
  CHECK(r.table.metadata.at("fingerprint") == c.fingerprint());
  CHECK(r.table.metadata.at("method") == "analytic");
  CHECK(r.table.metadata.at("tool_version") == kToolVersion);
}

TEST_CASE("round robin is strictly fair") {
  RunConfig c;
  c.set("scheduler", "round-robin");
  const auto r = run_command("fairness", c);
  CHECK(r.table.rows().size() == 1);
  CHECK(r.table.at(0, "fairness") == 1.0);
}

TEST_CASE("command-specific requirements") {
  RunConfig c;
  CHECK_THROWS_AS(run_command("power-savings", c), ConfigError);
  CHECK_THROWS_AS(run_command("plot", c), ConfigError);
  c.set("scheduler", "greedy-rr");
  c.set("slot", "7");
  try {
    run_command("pmf", c);
    FAIL("expected a complexity error");
  } catch (const ComplexityError& e) {
    CHECK(exit_code_for(e) == 4);
    const auto j = nlohmann::json::parse(error_object(e));
    CHECK(j["error"]["exit_code"] == 4);
    CHECK(j["error"]["type"] == "complexity");
  }
  CHECK(exit_code_for(ConfigError("x")) == 2);
  CHECK(exit_code_for(AccuracyError("x", 0.5, 0.1)) == 3);

  OutputTable t(std::vector<Column>{{"q", "-"}, {"flag", "-"}});
  t.add_row({1.0, 1.0});
  t.add_row({3.0, 0.0});
  t.add_row({10.0, 1.0});
  const auto j = nlohmann::json::parse(partial_object(t));
  CHECK(j["error"]["exit_code"] == 3);
  CHECK(j["error"]["flagged_rows"] == 2);
  CHECK(!j["error"].contains("estimate"));
}

TEST_CASE("power savings under part2 defaults") {
  const auto c = RunConfig::scenario("part2-default");
  const auto r = run_command("power-savings", c);
  CHECK(r.table.at(0, "threshold_distance") == doctest::Approx(260.0));
  CHECK(r.table.at(0, "power_savings") > 0.0);
}

TEST_CASE("compare pmf, greedy, 100k trials, seed 7") {
  RunConfig c;
  c.set("trials", "100000");
  c.set("seed", "7");
  const auto r = run_command("pmf", c, Mode::compare);
  CHECK(r.table.metadata.at("rng") == "philox4x32-10");
  CHECK(r.table.at(0, "tv") <= 0.03);
  CHECK(std::abs(column_sum(r.table, "probability_mc") - 1.0) < 1e-12);
}

TEST_CASE("identical config and seed give byte-identical output") {
  RunConfig c;
  c.set("trials", "2000");
  c.set("scheduler", "proportional-fair");
  const auto a = run_command("interferer-pmf", c, Mode::compare).table.to_csv();
  const auto b = run_command("interferer-pmf", c, Mode::compare).table.to_csv();
  CHECK(a == b);
}

TEST_CASE("tool exit codes and files") {
  const auto dir = std::filesystem::temp_directory_path() / "icim_cli_test";
  std::filesystem::create_directories(dir);
  const auto out = (dir / "pmf").string();
  CHECK(tool("pmf --scheduler greedy --format both --out " + out + " 2>/dev/null") == 0);
  const auto csv = OutputTable::from_csv(slurp(out + ".csv"));
  const auto json = OutputTable::from_json(slurp(out + ".json"));
  CHECK(csv == json);
  CHECK(csv.config.at("scheduler") == "greedy");

  CHECK(tool("pmf --set nonsense=1 >/dev/null 2>&1") == 2);
  CHECK(tool("pmf --format xml >/dev/null 2>&1") == 2);
  CHECK(tool("power-savings >/dev/null 2>&1") == 2);
  CHECK(tool("pmf --scheduler greedy-rr --set slot=8 >/dev/null 2>&1") == 4);

  std::ofstream(dir / "scenario.cfg") << "beta = 3.0\nusers = 20\n";
  CHECK(tool("fairness --scenario " + (dir / "scenario.cfg").string() + " --out " + (dir / "f.csv").string()) == 0);
  CHECK(OutputTable::from_csv(slurp(dir / "f.csv")).config.at("beta") == "3.0");
  std::ofstream(dir / "bad.cfg") << "beta = 3.0\ncolour = red\n";
  CHECK(tool("fairness --scenario " + (dir / "bad.cfg").string() + " >/dev/null 2>&1") == 2);
  std::filesystem::remove_all(dir);
}
