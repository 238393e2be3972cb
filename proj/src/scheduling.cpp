#include "icim/scheduling.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "icim/error.hpp"
#include "icim/numerics/quadrature.hpp"

namespace icim {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

numerics::QuadratureConfig pmf_quadrature() {
  numerics::QuadratureConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-10;
  cfg.max_subdivisions = 4000;
  return cfg;
}

void require_active(const RingPartition& partition) {
  if (partition.users.size() != static_cast<std::size_t>(partition.ring_count()))
    throw DomainError("ring partition has no user counts");
  if (partition.active_ring_count() == 0) throw DomainError("all rings are inactive");
}

std::vector<double> greedy_gains(const RingPartition& p) {
  std::vector<double> g(p.ring_count());
  for (int k = 1; k <= p.ring_count(); ++k) g[k - 1] = std::pow(p.outer(k), -p.beta);
  return g;
}

LocationPmf indicator_pmf(SchedulerKind kind, int slot, int rings, int k) {
  LocationPmf out{kind, slot, std::vector<double>(rings, 0.0), 0.0};
  out.probs[k - 1] = 1.0;
  return out;
}

// Slot PMFs 1..slots of greedy round robin by dynamic programming over the
// set of rings already served.
std::vector<LocationPmf> greedy_rr_slots(const RingPartition& partition, const FadingModel& fading, int slots,
                                         int max_depth, std::map<RingMask, double>* history = nullptr) {
  require_active(partition);
  const int active = partition.active_ring_count();
  if (slots < 1) throw DomainError("slot index must be at least 1");
  if (slots > active)
    throw DomainError("greedy round robin slot " + std::to_string(slots) + " exceeds the " + std::to_string(active) +
                      " active rings");
  if (slots > max_depth)
    throw ComplexityError("greedy round robin slot " + std::to_string(slots) + " exceeds the analytic depth limit " +
                          std::to_string(max_depth) + "; use the Monte-Carlo simulator instead");
  const auto model = SelectionModel::greedy(partition, fading);
  const int rings = partition.ring_count();
  std::vector<LocationPmf> out;
  std::map<RingMask, double> level{{RingMask{0}, 1.0}};
  for (int w = 1; w <= slots; ++w) {
    if (w == slots && history) *history = level;
    LocationPmf slot_pmf{SchedulerKind::greedy_rr, w, std::vector<double>(rings, 0.0), 0.0};
    std::map<RingMask, double> next;
    for (const auto& [served, weight] : level) {
      const auto cond = model.pmf(served);
      slot_pmf.error += weight * cond.error;
      for (int k = 1; k <= rings; ++k) {
        const double p = cond.probs[k - 1];
        if (p == 0.0) continue;
        slot_pmf.probs[k - 1] += weight * p;
        if (w < slots) next[served | ring_bit(k)] += weight * p;
      }
    }
    out.push_back(std::move(slot_pmf));
    level = std::move(next);
  }
  return out;
}

}  // namespace

std::string to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::greedy: return "greedy";
    case SchedulerKind::proportional_fair: return "proportional-fair";
    case SchedulerKind::round_robin: return "round-robin";
    case SchedulerKind::location_rr: return "location-rr";
    case SchedulerKind::greedy_rr: return "greedy-rr";
    case SchedulerKind::greedy_pc: return "greedy-pc";
  }
  return "unknown";
}

SchedulerKind parse_scheduler(const std::string& name) {
  for (auto k : {SchedulerKind::greedy, SchedulerKind::proportional_fair, SchedulerKind::round_robin,
                 SchedulerKind::location_rr, SchedulerKind::greedy_rr, SchedulerKind::greedy_pc}) {
    if (name == to_string(k)) return k;
  }
  if (name == "pf") return SchedulerKind::proportional_fair;
  if (name == "rr") return SchedulerKind::round_robin;
  throw ConfigError("unknown scheduler '" + name +
                    "' (expected greedy, proportional-fair, round-robin, location-rr, greedy-rr, greedy-pc)");
}

bool is_opportunistic(SchedulerKind kind) {
  return kind == SchedulerKind::greedy || kind == SchedulerKind::proportional_fair ||
         kind == SchedulerKind::greedy_rr || kind == SchedulerKind::greedy_pc;
}

bool is_slotted(SchedulerKind kind) { return kind == SchedulerKind::location_rr || kind == SchedulerKind::greedy_rr; }

double PowerControl::threshold(double beta) const {
  if (!(p0_w > 0.0)) return std::numeric_limits<double>::infinity();
  return std::pow(p_max_w / p0_w, 1.0 / beta);
}

double PowerControl::transmit_power(double r, double beta) const {
  if (!(p0_w > 0.0)) return p_max_w;
  return std::min(p_max_w, p0_w * std::pow(r, beta));
}

double LocationPmf::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

SelectionModel::SelectionModel(RingPartition partition, FadingModel fading, std::vector<double> gains)
    : partition_(std::move(partition)), fading_(std::move(fading)), gains_(std::move(gains)) {
  require_active(partition_);
  if (partition_.ring_count() > 64) throw DomainError("at most 64 rings are supported");
  if (gains_.size() != static_cast<std::size_t>(partition_.ring_count()))
    throw DomainError("one selection gain per ring is required");
  for (double g : gains_)
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("selection gains must be positive");
}

SelectionModel SelectionModel::greedy(const RingPartition& partition, const FadingModel& fading) {
  return SelectionModel(partition, fading, greedy_gains(partition));
}

SelectionModel SelectionModel::proportional_fair(const RingPartition& partition, const FadingModel& fading) {
  require_active(partition);
  std::vector<double> g(partition.ring_count(), 1.0);
  for (int k = 1; k <= partition.ring_count(); ++k) {
    const int u = partition.users[k - 1];
    // Path loss and link gain cancel in gamma_k / E[gamma_k]; only the
    // expected best-of-u_k fading remains.
    if (u > 0) g[k - 1] = 1.0 / expected_maximum(fading, u);
  }
  return SelectionModel(partition, fading, std::move(g));
}

SelectionModel SelectionModel::greedy_pc(const RingPartition& partition, const FadingModel& fading,
                                         const PowerControl& power) {
  if (!(power.p_max_w > 0.0) || !(power.p0_w > 0.0))
    throw DomainError("power control needs positive P_max and P_0");
  std::vector<double> g(partition.ring_count());
  for (int k = 1; k <= partition.ring_count(); ++k) {
    const double r = partition.outer(k);
    g[k - 1] = power.transmit_power(r, partition.beta) * std::pow(r, -partition.beta);
  }
  return SelectionModel(partition, fading, std::move(g));
}

double SelectionModel::log_ring_cdf(int k, double z) const {
  const int u = users(k);
  if (u == 0) return 0.0;
  return u * fading_.log_cdf(z);
}

double SelectionModel::log_win_density(int k, double z, RingMask excluded) const {
  const int u = users(k);
  if (u == 0 || (excluded & ring_bit(k)) || !(z > 0.0)) return kNegInf;
  double v = std::log(static_cast<double>(u)) + fading_.log_pdf(z);
  if (u > 1) v += (u - 1) * fading_.log_cdf(z);
  const double ak = gain(k);
  for (int i = 1; i <= partition_.ring_count() && v > kNegInf; ++i) {
    if (i == k || (excluded & ring_bit(i)) || users(i) == 0) continue;
    v += users(i) * fading_.log_cdf(z * ak / gain(i));
  }
  return std::isnan(v) ? kNegInf : v;
}

double SelectionModel::win_density(int k, double z, RingMask excluded) const {
  return std::exp(log_win_density(k, z, excluded));
}

double SelectionModel::peak(int k, RingMask excluded) const {
  double max_ratio = 1.0;
  for (int i = 1; i <= partition_.ring_count(); ++i) {
    if ((excluded & ring_bit(i)) || users(i) == 0) continue;
    max_ratio = std::max(max_ratio, gain(i) / gain(k));
  }
  const double m = fading_.mean();
  const double lo = std::log(m * 1e-6);
  const double hi = std::log(m * 1e3 * max_ratio);
  double best_z = m * max_ratio;
  double best = kNegInf;
  constexpr int n = 240;
  for (int j = 0; j <= n; ++j) {
    const double z = std::exp(lo + (hi - lo) * j / n);
    // Weight by z so the peak refers to the mass per log-interval.
    const double v = log_win_density(k, z, excluded) + std::log(z);
    if (v > best) {
      best = v;
      best_z = z;
    }
  }
  return best_z;
}

double SelectionModel::win_probability(int k, RingMask excluded, double* error) const {
  if (users(k) == 0 || (excluded & ring_bit(k))) {
    if (error) *error = 0.0;
    return 0.0;
  }
  const auto f = [&](double z) { return win_density(k, z, excluded); };
  const auto cfg = pmf_quadrature();
  const double z0 = peak(k, excluded);
  const auto head = numerics::integrate(f, 0.0, z0, cfg);
  const auto tail = numerics::integrate_semi_infinite(f, cfg, z0, z0);
  if (error) *error = head.error + tail.error;
  return head.value + tail.value;
}

LocationPmf SelectionModel::pmf(RingMask excluded) const {
  const int rings = partition_.ring_count();
  LocationPmf out{SchedulerKind::greedy, 1, std::vector<double>(rings, 0.0), 0.0};
  int eligible = 0, last = 0;
  for (int k = 1; k <= rings; ++k) {
    if (users(k) > 0 && !(excluded & ring_bit(k))) {
      ++eligible;
      last = k;
    }
  }
  if (eligible == 0) throw DomainError("no eligible ring left to schedule");
  if (eligible == 1) {
    out.probs[last - 1] = 1.0;
    return out;
  }
  for (int k = 1; k <= rings; ++k) {
    double err = 0.0;
    out.probs[k - 1] = win_probability(k, excluded, &err);
    out.error += err;
  }
  return out;
}

double expected_maximum(const FadingModel& fading, int n) {
  if (n < 1) throw DomainError("expected maximum needs at least one draw");
  if (n == 1) return fading.mean();
  const auto f = [&](double z) { return z > 0.0 ? -std::expm1(n * fading.log_cdf(z)) : 1.0; };
  auto cfg = pmf_quadrature();
  cfg.abs_tol = 1e-14 * fading.mean();
  return numerics::integrate_semi_infinite(f, cfg, fading.mean() * (1.0 + std::log(n))).value;
}

int location_rr_ring(const RingPartition& partition, int slot) {
  require_active(partition);
  const int rings = partition.ring_count();
  if (slot < 1) throw DomainError("slot index must be at least 1");
  const int start = (slot - 1) % rings;
  for (int step = 0; step < rings; ++step) {
    const int k = (start + step) % rings + 1;
    if (partition.active(k)) return k;
  }
  throw DomainError("all rings are inactive");
}

LocationPmf greedy_rr_slot_pmf(const RingPartition& partition, const FadingModel& fading, int slot, int max_depth) {
  auto slots = greedy_rr_slots(partition, fading, slot, max_depth);
  return slots.back();
}

std::map<RingMask, double> greedy_rr_history(const RingPartition& partition, const FadingModel& fading, int slot,
                                             int max_depth) {
  std::map<RingMask, double> history;
  greedy_rr_slots(partition, fading, slot, max_depth, &history);
  return history;
}

LocationPmf location_pmf(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading) {
  require_active(partition);
  const int rings = partition.ring_count();
  LocationPmf out;
  switch (scheduler.kind) {
    case SchedulerKind::greedy:
      out = SelectionModel::greedy(partition, fading).pmf();
      break;
    case SchedulerKind::proportional_fair:
      out = SelectionModel::proportional_fair(partition, fading).pmf();
      break;
    case SchedulerKind::greedy_pc:
      out = SelectionModel::greedy_pc(partition, fading, scheduler.power).pmf();
      break;
    case SchedulerKind::round_robin: {
      out.probs.assign(rings, 0.0);
      const double total = partition.user_count();
      for (int k = 1; k <= rings; ++k) out.probs[k - 1] = partition.users[k - 1] / total;
      break;
    }
    case SchedulerKind::location_rr:
      out = indicator_pmf(scheduler.kind, scheduler.slot, rings, location_rr_ring(partition, scheduler.slot));
      break;
    case SchedulerKind::greedy_rr:
      out = greedy_rr_slot_pmf(partition, fading, scheduler.slot, scheduler.max_slot_depth);
      break;
  }
  out.scheduler = scheduler.kind;
  out.slot = is_slotted(scheduler.kind) ? scheduler.slot : 1;
  return out;
}

LocationPmf slot_averaged_pmf(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading,
                              int slots) {
  if (!is_slotted(scheduler.kind)) return location_pmf(scheduler, partition, fading);
  if (slots < 1) throw DomainError("slot count must be at least 1");
  const int rings = partition.ring_count();
  LocationPmf out{scheduler.kind, 0, std::vector<double>(rings, 0.0), 0.0};
  std::vector<LocationPmf> per_slot;
  if (scheduler.kind == SchedulerKind::greedy_rr) {
    per_slot = greedy_rr_slots(partition, fading, slots, scheduler.max_slot_depth);
  } else {
    for (int w = 1; w <= slots; ++w) {
      per_slot.push_back(indicator_pmf(scheduler.kind, w, rings, location_rr_ring(partition, w)));
    }
  }
  for (const auto& p : per_slot) {
    for (int k = 0; k < rings; ++k) out.probs[k] += p.probs[k] / slots;
    out.error += p.error / slots;
  }
  return out;
}

JointLocationAnglePmf joint_location_angle_pmf(const LocationPmf& pmf, const AngularGrid& grid) {
  return {pmf, grid};
}

}  // namespace icim
