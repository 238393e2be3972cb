#include "icim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "icim/error.hpp"

namespace icim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kAngleBins = 72;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double gamma_draw(double shape, double scale, Philox4x32& rng) {
  return std::gamma_distribution<double>(shape, scale)(rng);
}

// Runs body(trial) for every trial, split over `workers` threads. Each trial
// writes only its own slots, so the result does not depend on the split.
template <class Body>
void for_each_trial(long trials, int workers, Body body) {
  workers = static_cast<int>(std::max<long>(1, std::min<long>(workers, trials)));
  if (workers == 1) {
    for (long t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (long t = w; t < trials; t += workers) body(t);
    });
  for (auto& th : pool) th.join();
}

std::vector<double> pf_table(const TrialConfig& cfg) {
  if (cfg.scheduler.kind != SchedulerKind::proportional_fair) return {};
  const int n = cfg.drop == DropMode::uniform ? cfg.partition.user_count()
                                              : *std::max_element(cfg.partition.users.begin(), cfg.partition.users.end());
  std::vector<double> mu(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) mu[i] = expected_maximum(cfg.signal, i);
  return mu;
}

// Stream ids: the victim cell uses 0, interfering cell l uses l, and
// interferer fading uses kFadingStream.
constexpr std::uint32_t kFadingStream = 0xFFFFu;

}  // namespace

std::string to_string(DropMode mode) { return mode == DropMode::per_ring ? "per-ring" : "uniform"; }

DropMode parse_drop_mode(const std::string& text) {
  if (text == "per-ring") return DropMode::per_ring;
  if (text == "uniform") return DropMode::uniform;
  throw ConfigError("drop must be per-ring or uniform, got '" + text + "'");
}

void TrialConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (partition.ring_count() < 1 || partition.users.size() != static_cast<size_t>(partition.ring_count()))
    throw ConfigError("simulation needs a ring partition with user counts");
  if (partition.user_count() < 1) throw ConfigError("simulation needs at least one user");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (scheduler.slot < 1) throw ConfigError("slot must be at least 1");
  if (!(distance_bin_width > 0.0)) throw ConfigError("distance bin width must be positive");
  layout.validate();
  budget.validate();
  if (direction == Direction::downlink && budget.power_control)
    throw DomainError("power control is modelled for the uplink only");
}

double sample_fading(const FadingModel& model, Philox4x32& rng) {
  return std::visit(
      Overloaded{
          [&](const Rayleigh& p) { return -std::log(rng.uniform()) / p.rate; },
          [&](const GammaComposite& p) { return gamma_draw(p.shape, p.scale, rng); },
          [&](const GeneralizedK& p) {
            return p.omega * gamma_draw(p.m_c, 1.0 / p.m_c, rng) * gamma_draw(p.m_s, 1.0 / p.m_s, rng);
          },
      },
      model.params());
}

int ring_of(const RingPartition& partition, double r) {
  const auto& radii = partition.radii;
  const auto it = std::lower_bound(radii.begin() + 1, radii.end(), r);
  if (it == radii.end()) return partition.ring_count();
  return static_cast<int>(it - radii.begin());
}

std::vector<DroppedUser> drop_users(const TrialConfig& cfg, Philox4x32& rng) {
  const auto& p = cfg.partition;
  std::vector<DroppedUser> users;
  users.reserve(p.user_count());
  if (cfg.drop == DropMode::uniform) {
    const double R = p.radius > 0.0 ? p.radius : p.radii.back();
    for (int i = 0; i < p.user_count(); ++i) {
      const double r = R * std::sqrt(rng.uniform());
      users.push_back({r, kTwoPi * rng.uniform(), ring_of(p, r)});
    }
    return users;
  }
  for (int k = 1; k <= p.ring_count(); ++k) {
    const double inner = p.inner(k);
    const double outer = p.outer(k);
    for (int i = 0; i < p.users[k - 1]; ++i) {
      const double r = std::sqrt(inner * inner + rng.uniform() * (outer * outer - inner * inner));
      users.push_back({r, kTwoPi * rng.uniform(), k});
    }
  }
  return users;
}

SelectedUser schedule_cell(const TrialConfig& cfg, const std::vector<DroppedUser>& users,
                           const std::vector<double>& pf_means, Philox4x32& rng) {
  const auto& sch = cfg.scheduler;
  const double beta = cfg.partition.beta;
  const int rings = cfg.partition.ring_count();
  const auto power = [&](const DroppedUser& u) {
    if (sch.kind == SchedulerKind::greedy_pc) return sch.power.transmit_power(u.radius, beta);
    return cfg.budget.transmit_power(u.radius, beta);
  };
  const auto pick_uniform = [&](const std::vector<int>& pool) {
    const auto i = static_cast<size_t>(rng.uniform() * pool.size());
    return pool[std::min(i, pool.size() - 1)];
  };

  std::vector<int> occupancy(rings + 1, 0);
  for (const auto& u : users) ++occupancy[u.ring];

  if (sch.kind == SchedulerKind::round_robin || sch.kind == SchedulerKind::location_rr) {
    std::vector<int> pool;
    if (sch.kind == SchedulerKind::round_robin) {
      for (int i = 0; i < static_cast<int>(users.size()); ++i) pool.push_back(i);
    } else {
      // Slot w serves ring w, or the next occupied ring outward.
      int ring = (sch.slot - 1) % rings + 1;
      while (occupancy[ring] == 0) ring = ring % rings + 1;
      for (int i = 0; i < static_cast<int>(users.size()); ++i)
        if (users[i].ring == ring) pool.push_back(i);
    }
    const auto& u = users[pick_uniform(pool)];
    return {u, sample_fading(cfg.signal, rng), power(u)};
  }

  const int slots = sch.kind == SchedulerKind::greedy_rr ? sch.slot : 1;
  std::vector<char> served(rings + 1, 0);
  std::vector<double> zeta(users.size());
  SelectedUser best{};
  for (int w = 1; w <= slots; ++w) {
    bool any = false;
    for (size_t i = 0; i < users.size(); ++i) any = any || !served[users[i].ring];
    // More slots than occupied rings: the cycle starts over.
    if (!any) std::fill(served.begin(), served.end(), 0);
    double best_metric = -1.0;
    int best_i = -1;
    for (size_t i = 0; i < users.size(); ++i) {
      zeta[i] = sample_fading(cfg.signal, rng);
      const auto& u = users[i];
      if (served[u.ring]) continue;
      double metric = 0.0;
      switch (sch.kind) {
        case SchedulerKind::proportional_fair:
          metric = zeta[i] / pf_means.at(occupancy[u.ring]);
          break;
        case SchedulerKind::greedy_pc:
          metric = power(u) * std::pow(u.radius, -beta) * zeta[i];
          break;
        default:
          metric = std::pow(u.radius, -beta) * zeta[i];
      }
      if (metric > best_metric) {
        best_metric = metric;
        best_i = static_cast<int>(i);
      }
    }
    const auto& u = users[best_i];
    served[u.ring] = 1;
    best = {u, zeta[best_i], power(u)};
  }
  return best;
}

double EmpiricalDistribution::sum() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

double EmpiricalDistribution::cdf(double x) const {
  if (reservoir.empty()) throw DomainError("empirical CDF needs the raw samples");
  const auto it = std::upper_bound(reservoir.begin(), reservoir.end(), x);
  return static_cast<double>(it - reservoir.begin()) / static_cast<double>(reservoir.size());
}

double EmpiricalDistribution::quantile(double p) const {
  if (reservoir.empty()) throw DomainError("empirical quantile needs the raw samples");
  const auto n = reservoir.size();
  const auto i = static_cast<size_t>(std::clamp(p, 0.0, 1.0) * static_cast<double>(n - 1));
  return reservoir[i];
}

EmpiricalDistribution EmpiricalDistribution::rings(const RingPartition& partition, const std::vector<long>& counts) {
  if (counts.size() != static_cast<size_t>(partition.ring_count()))
    throw DomainError("ring counts do not match the partition");
  EmpiricalDistribution d;
  d.edges = partition.radii;
  d.edges.front() = 0.0;
  long total = 0;
  for (long c : counts) total += c;
  d.samples = total;
  for (long c : counts) d.masses.push_back(total ? static_cast<double>(c) / static_cast<double>(total) : 0.0);
  return d;
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::vector<double> samples, int bins) {
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  EmpiricalDistribution d;
  std::sort(samples.begin(), samples.end());
  d.samples = static_cast<long>(samples.size());
  const double top = samples.empty() ? 0.0 : samples.back();
  const double width = top > 0.0 ? top / bins : 1.0;
  for (int i = 0; i <= bins; ++i) d.edges.push_back(i * width);
  std::vector<long> counts(bins, 0);
  for (double s : samples) ++counts[std::min(bins - 1, static_cast<int>(s / width))];
  for (long c : counts) d.masses.push_back(d.samples ? static_cast<double>(c) / static_cast<double>(d.samples) : 0.0);
  d.reservoir = std::move(samples);
  return d;
}

SchedulingSample simulate_scheduling(const TrialConfig& cfg) {
  cfg.validate();
  const auto mu = pf_table(cfg);
  const long n = cfg.trials;
  std::vector<int> ring(n);
  std::vector<double> angle(n), saved(n), r2(n), r2sq(n), dist(n);
  std::vector<int> dropped(n);
  for_each_trial(n, cfg.workers, [&](long t) {
    Philox4x32 rng(cfg.seed, static_cast<std::uint64_t>(t), 0);
    const auto users = drop_users(cfg, rng);
    const auto sel = schedule_cell(cfg, users, mu, rng);
    ring[t] = sel.user.ring;
    angle[t] = sel.user.angle;
    dist[t] = interfering_distance(sel.user.radius, sel.user.angle, cfg.layout.intersite);
    saved[t] = cfg.budget.p_max_w - sel.power;
    double a = 0.0, b = 0.0;
    for (const auto& u : users) {
      const double q = u.radius * u.radius;
      a += q;
      b += q * q;
    }
    r2[t] = a;
    r2sq[t] = b;
    dropped[t] = static_cast<int>(users.size());
  });

  SchedulingSample out;
  std::vector<long> counts(cfg.partition.ring_count(), 0);
  std::vector<long> acounts(kAngleBins, 0);
  const double lower = cfg.layout.intersite - cfg.layout.radius, w = cfg.distance_bin_width;
  const int dbins = static_cast<int>(std::ceil(2.0 * cfg.layout.radius / w - 1e-12));
  std::vector<long> dcounts(dbins, 0);
  double sum_saved = 0.0, sum_r2 = 0.0, sum_r4 = 0.0, users = 0.0;
  for (long t = 0; t < n; ++t) {
    ++counts[ring[t] - 1];
    ++dcounts[std::clamp(static_cast<int>(std::floor((dist[t] - lower) / w)), 0, dbins - 1)];
    ++acounts[std::min(kAngleBins - 1, static_cast<int>(angle[t] / kTwoPi * kAngleBins))];
    sum_saved += saved[t];
    sum_r2 += r2[t];
    sum_r4 += r2sq[t];
    users += dropped[t];
  }
  out.rings = EmpiricalDistribution::rings(cfg.partition, counts);
  out.angles.samples = n;
  for (int i = 0; i <= kAngleBins; ++i) out.angles.edges.push_back(kTwoPi * i / kAngleBins);
  for (long c : acounts) out.angles.masses.push_back(static_cast<double>(c) / static_cast<double>(n));
  out.distances.samples = n;
  for (int m = 0; m <= dbins; ++m) out.distances.edges.push_back(lower + m * w);
  for (long c : dcounts) out.distances.masses.push_back(static_cast<double>(c) / static_cast<double>(n));
  out.mean_power_saved = sum_saved / static_cast<double>(n);
  out.mean_radius_squared = sum_r2 / users;
  const double var = std::max(0.0, sum_r4 / users - out.mean_radius_squared * out.mean_radius_squared);
  out.radius_squared_error = std::sqrt(var / users);
  return out;
}

IciSample simulate_ici(const TrialConfig& cfg) {
  cfg.validate();
  const auto mu = pf_table(cfg);
  const long n = cfg.trials;
  const double beta = cfg.partition.beta;
  const double D = cfg.layout.intersite;
  const int L = cfg.layout.interferers;
  IciSample out;
  out.interference.assign(n, 0.0);
  out.signal.assign(n, 0.0);
  std::vector<double> saved(n, 0.0);
  for_each_trial(n, cfg.workers, [&](long t) {
    const auto trial = static_cast<std::uint64_t>(t);
    Philox4x32 rng(cfg.seed, trial, 0);
    const auto sel = schedule_cell(cfg, drop_users(cfg, rng), mu, rng);
    out.signal[t] = cfg.budget.gain * sel.power * std::pow(sel.user.radius, -beta) * sel.fading;
    saved[t] = cfg.budget.p_max_w - sel.power;
    Philox4x32 chi(cfg.seed, trial, kFadingStream);
    double y = 0.0;
    if (cfg.direction == Direction::uplink) {
      for (int l = 1; l <= L; ++l) {
        Philox4x32 cell(cfg.seed, trial, static_cast<std::uint32_t>(l));
        const auto other = schedule_cell(cfg, drop_users(cfg, cell), mu, cell);
        const double d = interfering_distance(other.user.radius, other.user.angle, D);
        y += cfg.budget.gain * other.power * std::pow(d, -beta) * sample_fading(cfg.interference, chi);
      }
    } else {
      for (double d : downlink_interferer_distances(sel.user.radius, sel.user.angle, D, L))
        y += cfg.budget.kbar() * std::pow(d, -beta) * sample_fading(cfg.interference, chi);
    }
    out.interference[t] = y;
  });
  double s = 0.0;
  for (double v : saved) s += v;
  out.mean_power_saved = s / static_cast<double>(n);
  return out;
}

EmpiricalDistribution IciSample::distribution(int bins) const {
  return EmpiricalDistribution::from_samples(interference, bins);
}

double IciSample::mgf(double t) const {
  double s = 0.0;
  for (double y : interference) s += std::exp(t * y);
  return s / static_cast<double>(interference.size());
}

double IciSample::outage(double q) const {
  long hits = 0;
  for (size_t i = 0; i < signal.size(); ++i) hits += signal[i] < q * interference[i];
  return static_cast<double>(hits) / static_cast<double>(signal.size());
}

double IciSample::capacity(double noise) const {
  double s = 0.0;
  for (size_t i = 0; i < signal.size(); ++i) s += std::log2(1.0 + signal[i] / (interference[i] + noise));
  return s / static_cast<double>(signal.size());
}

double IciSample::mean_interference() const {
  double s = 0.0;
  for (double y : interference) s += y;
  return s / static_cast<double>(interference.size());
}

DistributionDistance compare_distributions(const EmpiricalDistribution& a, const std::vector<double>& pmf) {
  if (static_cast<int>(pmf.size()) != a.bin_count())
    throw DomainError("distributions have different binning (" + std::to_string(a.bin_count()) + " vs " +
                      std::to_string(pmf.size()) + " bins)");
  DistributionDistance d;
  double ca = 0.0, cb = 0.0;
  for (size_t i = 0; i < pmf.size(); ++i) {
    d.total_variation += std::abs(a.masses[i] - pmf[i]);
    ca += a.masses[i];
    cb += pmf[i];
    d.sup_distance = std::max(d.sup_distance, std::abs(ca - cb));
  }
  d.total_variation *= 0.5;
  return d;
}

DistributionDistance compare_distributions(const EmpiricalDistribution& a, const LocationPmf& pmf) {
  return compare_distributions(a, pmf.probs);
}

DistributionDistance compare_distributions(const EmpiricalDistribution& a, const std::function<double(double)>& cdf,
                                           const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("CDF comparison needs a non-empty grid");
  DistributionDistance d;
  for (double x : grid) d.sup_distance = std::max(d.sup_distance, std::abs(a.cdf(x) - cdf(x)));
  // Histogram masses against the analytic CDF over the same edges.
  double prev = cdf(a.edges.front());
  for (int i = 0; i < a.bin_count(); ++i) {
    const double next = i + 1 == a.bin_count() ? 1.0 : cdf(a.edges[i + 1]);
    d.total_variation += std::abs(a.masses[i] - (next - prev));
    prev = next;
  }
  d.total_variation *= 0.5;
  return d;
}

}  // namespace icim
