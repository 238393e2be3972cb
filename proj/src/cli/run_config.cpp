#include "icim/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "icim/error.hpp"

namespace icim::cli {

namespace {

// Part I defaults. Powers are normalized by the receiver noise
// sigma^2 = noise_psd * bandwidth unless noise_w is set.
const std::vector<std::pair<std::string, std::string>>& defaults() {
  static const std::vector<std::pair<std::string, std::string>> d = {
      {"angular_intervals", "720"},
      {"bandwidth_hz", "15000"},
      {"beta", "2.6"},
      {"bin_width_m", "50"},
      {"capacity_method", "adaptive"},
      {"capacity_noise", "1"},
      {"cdf_points", "40"},
      {"direction", "uplink"},
      {"drop", "per-ring"},
      {"format", "csv"},
      {"interference_fading", "gamma:1.5,0.6666666666666666"},
      {"interferers", "6"},
      {"intersite_m", "0"},
      {"kappa_db", "2"},
      {"laguerre_order", "32"},
      {"max_slot_depth", "6"},
      {"mgf_points", "20"},
      {"min_radius_m", "100"},
      {"noise_psd_dbm_hz", "-174"},
      {"noise_w", "0"},
      {"out", ""},
      {"p0_dbm", "-23"},
      {"p_max_w", "1"},
      {"pathloss_db", "60"},
      {"power_control", "false"},
      {"radius_m", "500"},
      {"scheduler", "greedy"},
      {"seed", "1"},
      {"signal_fading", "gamma:1,1"},
      {"slot", "1"},
      {"slots", "1"},
      {"threshold_m", "0"},
      {"thresholds", "1,3,10,30,100,300"},
      {"trials", "100000"},
      {"users", "50"},
      {"workers", "1"},
  };
  return d;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ConfigError("key '" + key + "' expects a number, got '" + text + "'");
  return v;
}

template <class F>
auto rethrow_as_config(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& [k, v] : defaults()) values_[k] = v;
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& kv : defaults()) out.push_back(kv.first);
    return out;
  }();
  return k;
}

std::vector<std::string> RunConfig::scenario_names() { return {"part1-default", "part2-default"}; }

RunConfig RunConfig::scenario(const std::string& name) {
  RunConfig c;
  if (name == "part1-default") return c;
  if (name == "part2-default") {
    // Noise is unity, no extra path-loss constant, and P_max is set by the
    // threshold distance r_t = (P_max / P_0)^(1/beta).
    c.merge_text(
        "beta = 2.2\n"
        "pathloss_db = 0\n"
        "noise_w = 1\n"
        "power_control = true\n"
        "threshold_m = 260\n",
        name);
    return c;
  }
  throw ConfigError("unknown scenario '" + name + "' (known: part1-default, part2-default)");
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig c;
  c.merge_text(ss.str(), path);
  return c;
}

void RunConfig::merge_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(n) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (!seen.insert(key).second)
      throw ConfigError(origin + ":" + std::to_string(n) + ": key '" + key + "' given twice");
    set(key, trim(line.substr(eq + 1)));
  }
}

void RunConfig::apply(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second = value;
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  return it->second;
}

double RunConfig::number(const std::string& key) const { return parse_double(key, get(key)); }

long RunConfig::integer(const std::string& key) const {
  const auto& text = get(key);
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'");
  return v;
}

bool RunConfig::flag(const std::string& key) const {
  const auto& v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "' expects true or false, got '" + v + "'");
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ConfigError("key '" + key + "' expects a comma-separated list");
  return out;
}

std::string RunConfig::to_text() const {
  std::string s;
  for (const auto& [k, v] : values_) s += k + " = " + v + "\n";
  return s;
}

RingPartition RunConfig::partition() const {
  const long users = integer("users");
  if (users < 1) throw ConfigError("users must be at least 1");
  return rethrow_as_config("partition", [&] {
    return build_ring_partition(number("radius_m"), number("kappa_db"), number("beta"), number("min_radius_m"))
        .with_users(static_cast<int>(users));
  });
}

CellLayout RunConfig::layout() const {
  const long l = integer("interferers");
  if (l < 0) throw ConfigError("interferers must be non-negative");
  return rethrow_as_config("layout", [&] {
    return CellLayout::make(number("radius_m"), number("intersite_m"), static_cast<int>(l));
  });
}

LinkBudget RunConfig::budget() const {
  return rethrow_as_config("link budget", [&] {
    LinkBudget b = LinkBudget::from_db(number("pathloss_db"), number("noise_psd_dbm_hz"), number("bandwidth_hz"),
                                       number("p_max_w"), number("p0_dbm"), false);
    const double noise_w = number("noise_w");
    if (noise_w < 0.0) throw ConfigError("noise_w must be non-negative");
    if (noise_w > 0.0) b.gain = db_to_linear(-number("pathloss_db")) / noise_w;
    const double rt = number("threshold_m");
    if (rt < 0.0) throw ConfigError("threshold_m must be non-negative");
    if (rt > 0.0) b.p_max_w = b.p0_w * std::pow(rt, number("beta"));
    b.power_control = flag("power_control") || parse_scheduler(get("scheduler")) == SchedulerKind::greedy_pc;
    b.validate();
    return b;
  });
}

Scheduler RunConfig::scheduler() const {
  Scheduler s;
  s.kind = rethrow_as_config("scheduler", [&] { return parse_scheduler(get("scheduler")); });
  const auto b = budget();
  // Greedy under power control is the greedy-pc scheduler.
  if (s.kind == SchedulerKind::greedy && b.power_control) s.kind = SchedulerKind::greedy_pc;
  s.slot = static_cast<int>(integer("slot"));
  if (s.slot < 1) throw ConfigError("slot must be at least 1");
  s.power = b.power();
  s.max_slot_depth = static_cast<int>(integer("max_slot_depth"));
  if (s.max_slot_depth < 1) throw ConfigError("max_slot_depth must be at least 1");
  return s;
}

FadingModel RunConfig::signal_fading() const { return FadingModel::parse(get("signal_fading")); }
FadingModel RunConfig::interference_fading() const { return FadingModel::parse(get("interference_fading")); }

Direction RunConfig::direction() const {
  return rethrow_as_config("direction", [&] { return parse_direction(get("direction")); });
}

AngularGrid RunConfig::angular_grid() const {
  const long i = integer("angular_intervals");
  if (i < 1) throw ConfigError("angular_intervals must be at least 1");
  return AngularGrid(static_cast<int>(i));
}

TrialConfig RunConfig::trial_config() const {
  TrialConfig t;
  t.trials = integer("trials");
  const long seed = integer("seed");
  if (seed < 0) throw ConfigError("seed must be non-negative");
  t.seed = static_cast<std::uint64_t>(seed);
  t.partition = partition();
  t.signal = signal_fading();
  t.interference = interference_fading();
  t.scheduler = scheduler();
  t.layout = layout();
  t.budget = budget();
  t.direction = direction();
  t.drop = parse_drop_mode(get("drop"));
  t.workers = static_cast<int>(integer("workers"));
  t.distance_bin_width = number("bin_width_m");
  rethrow_as_config("simulation", [&] {
    t.validate();
    return 0;
  });
  return t;
}

LocationPmf RunConfig::location_pmf() const {
  return icim::location_pmf(scheduler(), partition(), signal_fading());
}

InterfererDistancePmf RunConfig::interferer_distances() const {
  return interferer_distance_pmf(joint_location_angle_pmf(location_pmf(), angular_grid()), partition(), layout(),
                                 number("bin_width_m"));
}

CumulativeIci RunConfig::ici() const {
  if (direction() == Direction::downlink)
    return CumulativeIci::downlink(joint_location_angle_pmf(location_pmf(), angular_grid()), partition(), layout(),
                                   interference_fading(), budget());
  auto single = SingleCellIci::uplink(interferer_distances(), partition(), interference_fading(), budget());
  return CumulativeIci::uplink(std::move(single), layout().interferers);
}

SignalPowerModel RunConfig::signal() const {
  return SignalPowerModel(scheduler(), partition(), signal_fading(), budget());
}

void RunConfig::validate() const {
  trial_config();
  angular_grid();
  if (!(number("bin_width_m") > 0.0)) throw ConfigError("bin_width_m must be positive");
  if (integer("slots") < 1) throw ConfigError("slots must be at least 1");
  if (integer("cdf_points") < 2) throw ConfigError("cdf_points must be at least 2");
  if (integer("mgf_points") < 2) throw ConfigError("mgf_points must be at least 2");
  if (integer("laguerre_order") < 2) throw ConfigError("laguerre_order must be at least 2");
  if (number("capacity_noise") < 0.0) throw ConfigError("capacity_noise must be non-negative");
  const auto& m = get("capacity_method");
  if (m != "adaptive" && m != "laguerre") throw ConfigError("capacity_method must be adaptive or laguerre");
  const auto& f = get("format");
  if (f != "csv" && f != "json" && f != "both") throw ConfigError("format must be csv, json or both");
  for (double q : numbers("thresholds"))
    if (!(q > 0.0)) throw ConfigError("outage thresholds must be positive");
}

}  // namespace icim::cli
