#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "icim/fading.hpp"
#include "icim/geometry.hpp"

namespace icim {

enum class SchedulerKind { greedy, proportional_fair, round_robin, location_rr, greedy_rr, greedy_pc };

std::string to_string(SchedulerKind kind);
SchedulerKind parse_scheduler(const std::string& name);
/// Schedulers whose choice depends on instantaneous fading.
bool is_opportunistic(SchedulerKind kind);
/// Schedulers that cycle over synchronized time slots.
bool is_slotted(SchedulerKind kind);

/// Open-loop power control: a user at distance r transmits min(P_max, P_0 r^beta).
struct PowerControl {
  double p_max_w = 1.0;
  double p0_w = 0.0;

  double threshold(double beta) const;
  double transmit_power(double r, double beta) const;
};

inline constexpr int kDefaultMaxSlotDepth = 6;

struct Scheduler {
  SchedulerKind kind = SchedulerKind::greedy;
  int slot = 1;  // time slot w for location_rr / greedy_rr
  PowerControl power{};
  int max_slot_depth = kDefaultMaxSlotDepth;
};

/// P(r_sel = r_k) for rings 1..K (stored 0-based).
struct LocationPmf {
  SchedulerKind scheduler = SchedulerKind::greedy;
  int slot = 1;
  std::vector<double> probs;
  double error = 0.0;  // accumulated quadrature error estimate

  int ring_count() const { return static_cast<int>(probs.size()); }
  double operator()(int k) const { return probs.at(k - 1); }
  double sum() const;
};

using RingMask = std::uint64_t;

inline RingMask ring_bit(int k) { return RingMask{1} << (k - 1); }

/// Max-selection model behind every opportunistic scheduler: ring k offers
/// the best of its u_k i.i.d. fading draws, Z_k, and the ring maximizing
/// a_k Z_k wins. Greedy uses a_k = r_k^{-beta}, proportional fair uses
/// a_k = 1 / E[Z_k], power control uses a_k = min(P_max r_k^{-beta}, P_0).
class SelectionModel {
 public:
  SelectionModel(RingPartition partition, FadingModel fading, std::vector<double> gains);

  static SelectionModel greedy(const RingPartition& partition, const FadingModel& fading);
  static SelectionModel proportional_fair(const RingPartition& partition, const FadingModel& fading);
  static SelectionModel greedy_pc(const RingPartition& partition, const FadingModel& fading,
                                  const PowerControl& power);

  const RingPartition& partition() const { return partition_; }
  const FadingModel& fading() const { return fading_; }
  const std::vector<double>& gains() const { return gains_; }
  double gain(int k) const { return gains_.at(k - 1); }
  int users(int k) const { return partition_.users.at(k - 1); }

  /// log P(Z_k <= z) = u_k log F(z).
  double log_ring_cdf(int k, double z) const;
  /// log of the density of Z_k at z times the probability that every other
  /// ring outside `excluded` offers less: the integrand of the ring PMF.
  double log_win_density(int k, double z, RingMask excluded = 0) const;
  double win_density(int k, double z, RingMask excluded = 0) const;

  /// P(ring k wins | rings in `excluded` are not eligible).
  double win_probability(int k, RingMask excluded = 0, double* error = nullptr) const;
  /// Winner distribution over all rings given the excluded set.
  LocationPmf pmf(RingMask excluded = 0) const;

  /// z at which the win density of ring k peaks (located on a log grid).
  double peak(int k, RingMask excluded = 0) const;

 private:
  RingPartition partition_;
  FadingModel fading_;
  std::vector<double> gains_;
};

/// E[max of n i.i.d. draws] = int_0^inf (1 - F(z)^n) dz.
double expected_maximum(const FadingModel& fading, int n);

/// Scheduled-ring PMF for any scheduler. `fading` is the per-user composite
/// fading of the desired link.
LocationPmf location_pmf(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading);

/// Ring targeted by location round robin in slot w: ring w, or the next
/// active ring outward (wrapping) if ring w is empty.
int location_rr_ring(const RingPartition& partition, int slot);

/// Greedy round robin, slot w: rings served in slots 1..w-1 are excluded.
/// Exact over all exclusion histories; throws ComplexityError past max_depth.
LocationPmf greedy_rr_slot_pmf(const RingPartition& partition, const FadingModel& fading, int slot,
                               int max_depth = kDefaultMaxSlotDepth);

/// Distribution of the set of rings already served when slot w starts.
std::map<RingMask, double> greedy_rr_history(const RingPartition& partition, const FadingModel& fading, int slot,
                                             int max_depth = kDefaultMaxSlotDepth);

/// PMF averaged over slots 1..W of a slotted scheduler.
LocationPmf slot_averaged_pmf(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading,
                              int slots);

struct JointLocationAnglePmf {
  LocationPmf location;
  AngularGrid grid;

  double operator()(int k, int /*angle*/) const { return location(k) * grid.probability(); }
};

JointLocationAnglePmf joint_location_angle_pmf(const LocationPmf& pmf, const AngularGrid& grid);

}  // namespace icim
