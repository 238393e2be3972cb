#pragma once

#include <map>
#include <string>
#include <vector>

#include "icim/fading.hpp"
#include "icim/geometry.hpp"
#include "icim/interference.hpp"
#include "icim/link_budget.hpp"
#include "icim/metrics.hpp"
#include "icim/montecarlo.hpp"
#include "icim/scheduling.hpp"

namespace icim::cli {

/// Flat key=value run configuration. Every key has a default (the
/// part1-default scenario); scenario files and --set overrides may only
/// touch known keys.
class RunConfig {
 public:
  RunConfig();

  /// "part1-default" or "part2-default".
  static RunConfig scenario(const std::string& name);
  static std::vector<std::string> scenario_names();
  /// Reads a scenario file on top of the defaults.
  static RunConfig from_file(const std::string& path);

  /// Lines of "key = value"; '#' starts a comment. Repeated keys in one
  /// document are rejected.
  void merge_text(const std::string& text, const std::string& origin = "config");
  /// "key=value" as given to --set.
  void apply(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  static const std::vector<std::string>& keys();
  /// Sorted key = value lines; merge_text(to_text()) reproduces the config.
  std::string to_text() const;
  std::string fingerprint() const { return config_fingerprint(values_); }

  /// Builds every model once; throws ConfigError on the first bad value.
  void validate() const;

  RingPartition partition() const;
  CellLayout layout() const;
  LinkBudget budget() const;
  Scheduler scheduler() const;
  FadingModel signal_fading() const;
  FadingModel interference_fading() const;
  Direction direction() const;
  AngularGrid angular_grid() const;
  TrialConfig trial_config() const;

  // Analytic models of the configured scenario.
  LocationPmf location_pmf() const;
  InterfererDistancePmf interferer_distances() const;
  CumulativeIci ici() const;
  SignalPowerModel signal() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace icim::cli
