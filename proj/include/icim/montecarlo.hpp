#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "icim/fading.hpp"
#include "icim/geometry.hpp"
#include "icim/interference.hpp"
#include "icim/link_budget.hpp"
#include "icim/philox.hpp"
#include "icim/scheduling.hpp"

namespace icim {

/// How users are dropped in a trial. per_ring places exactly u_k users
/// uniformly over the area of ring k, so the hole inside r_0 stays empty;
/// uniform drops U users uniformly on the whole disk and ring occupancy
/// fluctuates from trial to trial.
enum class DropMode { per_ring, uniform };

std::string to_string(DropMode mode);
DropMode parse_drop_mode(const std::string& text);

struct TrialConfig {
  long trials = 100000;
  std::uint64_t seed = 1;
  RingPartition partition;  // must carry user counts
  FadingModel signal = FadingModel::gamma(1.0, 1.0);
  FadingModel interference = FadingModel::gamma(1.5, 2.0 / 3.0);
  Scheduler scheduler{};
  CellLayout layout{};
  LinkBudget budget{};
  Direction direction = Direction::uplink;
  DropMode drop = DropMode::per_ring;
  int workers = 1;
  double distance_bin_width = 50.0;  // Delta, for the interferer-distance histogram

  void validate() const;
};

/// Draw from a fading model.
double sample_fading(const FadingModel& model, Philox4x32& rng);

struct DroppedUser {
  double radius;
  double angle;
  int ring;  // 1-based ring whose (r_{k-1}, r_k] holds the radius
};

struct SelectedUser {
  DroppedUser user;
  double fading;  // desired-link fading in the scheduled slot
  double power;   // transmit power (W)
};

/// Ring holding radius r; anything inside r_0 belongs to ring 1.
int ring_of(const RingPartition& partition, double r);

std::vector<DroppedUser> drop_users(const TrialConfig& cfg, Philox4x32& rng);

/// Runs one cell through slots 1..w of its scheduler and returns the user
/// served in slot w. pf_means[n] is E[max of n fading draws].
SelectedUser schedule_cell(const TrialConfig& cfg, const std::vector<DroppedUser>& users,
                           const std::vector<double>& pf_means, Philox4x32& rng);

/// Histogram with explicit edges plus an optional sorted sample reservoir.
struct EmpiricalDistribution {
  std::vector<double> edges;   // bins [edges[i], edges[i+1]); the last bin is closed
  std::vector<double> masses;  // sum to 1
  long samples = 0;
  std::vector<double> reservoir;

  int bin_count() const { return static_cast<int>(masses.size()); }
  double sum() const;
  /// Empirical CDF; needs the reservoir.
  double cdf(double x) const;
  double quantile(double p) const;

  /// Ring histogram with the partition radii as edges (first edge 0).
  static EmpiricalDistribution rings(const RingPartition& partition, const std::vector<long>& counts);
  /// Uniform bins over [0, max sample]; keeps the sorted samples.
  static EmpiricalDistribution from_samples(std::vector<double> samples, int bins);
};

struct SchedulingSample {
  EmpiricalDistribution rings;
  EmpiricalDistribution angles;  // 72 uniform bins on [0, 2 pi)
  // Distance of the served user to a base station at D, binned like
  // interferer_distance_pmf over [D - R, D + R].
  EmpiricalDistribution distances;
  double mean_radius_squared = 0.0;  // over every dropped user of the served cell
  double radius_squared_error = 0.0;  // standard error of that mean
  double mean_power_saved = 0.0;      // P_max - transmit power of the served user
};

SchedulingSample simulate_scheduling(const TrialConfig& cfg);

/// Per-trial desired-signal and interference samples for the victim cell.
struct IciSample {
  std::vector<double> interference;  // Y
  std::vector<double> signal;        // X0, in noise units
  double mean_power_saved = 0.0;

  EmpiricalDistribution distribution(int bins = 100) const;
  double mgf(double t) const;
  /// Fraction of trials with X0 < q Y.
  double outage(double q) const;
  /// Sample mean of log2(1 + X0 / (Y + noise)).
  double capacity(double noise) const;
  double mean_interference() const;
};

IciSample simulate_ici(const TrialConfig& cfg);

struct DistributionDistance {
  double total_variation = 0.0;
  double sup_distance = 0.0;  // of the cumulative sums / CDFs
};

/// Ring histogram against an analytic PMF over the same bins.
DistributionDistance compare_distributions(const EmpiricalDistribution& a, const std::vector<double>& pmf);
DistributionDistance compare_distributions(const EmpiricalDistribution& a, const LocationPmf& pmf);
/// Empirical CDF against an analytic CDF at the given points.
DistributionDistance compare_distributions(const EmpiricalDistribution& a, const std::function<double(double)>& cdf,
                                           const std::vector<double>& grid);

}  // namespace icim
