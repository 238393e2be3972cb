#include "icim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "icim/error.hpp"
#include "icim/numerics/laguerre.hpp"

namespace icim {

namespace {

using cplx = std::complex<double>;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

numerics::QuadratureConfig signal_quadrature() { return {1e-14, 1e-10, 4000, 2.0, 160}; }

// int_a^b f over chunks of width unit, 2 unit, 4 unit, ... so that mass near
// a is never hidden inside one huge panel.
template <class F>
double chunked_integral(const F& f, double a, double b, double unit, const numerics::QuadratureConfig& cfg) {
  double v = 0.0;
  for (double lo = a, w = unit; lo < b; lo += w, w *= 2.0) v += numerics::integrate(f, lo, std::min(b, lo + w), cfg).value;
  return v;
}

SelectionModel selection_for(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading) {
  switch (scheduler.kind) {
    case SchedulerKind::proportional_fair:
      return SelectionModel::proportional_fair(partition, fading);
    case SchedulerKind::greedy_pc:
      return SelectionModel::greedy_pc(partition, fading, scheduler.power);
    default:
      return SelectionModel::greedy(partition, fading);
  }
}

}  // namespace

SignalPowerModel::SignalPowerModel(const Scheduler& scheduler, const RingPartition& partition,
                                   const FadingModel& fading, const LinkBudget& budget)
    : SignalPowerModel(scheduler, partition, fading, budget, false) {}

SignalPowerModel SignalPowerModel::mixture(const Scheduler& scheduler, const RingPartition& partition,
                                           const FadingModel& fading, const LinkBudget& budget) {
  return SignalPowerModel(scheduler, partition, fading, budget, true);
}

SignalPowerModel::SignalPowerModel(const Scheduler& scheduler, const RingPartition& partition,
                                   const FadingModel& fading, const LinkBudget& budget, bool force_mixture)
    : scheduler_(scheduler.kind),
      form_(Form::mixture),
      partition_(partition),
      fading_(fading),
      selection_(selection_for(scheduler, partition, fading)) {
  budget.validate();
  const int rings = partition.ring_count();
  if (partition.active_ring_count() == 0) throw DomainError("signal model needs at least one active ring");
  const double beta = partition.beta;
  for (int k = 1; k <= rings; ++k) {
    const double r = partition.outer(k);
    const double p = scheduler.kind == SchedulerKind::greedy_pc ? scheduler.power.transmit_power(r, beta)
                                                                 : budget.transmit_power(r, beta);
    scales_.push_back(budget.gain * p * std::pow(r, -beta));
  }

  // The served user has the largest SNR exactly when the selection gains are
  // proportional to the SNR scales.
  const bool max_rule = scheduler.kind == SchedulerKind::greedy || scheduler.kind == SchedulerKind::greedy_pc ||
                        (scheduler.kind == SchedulerKind::greedy_rr && scheduler.slot == 1);
  bool proportional = true;
  for (int k = 2; k <= rings; ++k) {
    const double a = scales_[k - 1] / selection_.gain(k), b = scales_[0] / selection_.gain(1);
    proportional = proportional && std::abs(a / b - 1.0) < 1e-12;
  }
  if (max_rule && proportional && !force_mixture) form_ = Form::maximum;

  switch (scheduler.kind) {
    case SchedulerKind::round_robin: {
      const double total = partition.user_count();
      for (int k : partition.active_rings()) terms_.push_back({k, partition.users[k - 1] / total, 0, false});
      break;
    }
    case SchedulerKind::location_rr:
      terms_.push_back({location_rr_ring(partition, scheduler.slot), 1.0, 0, false});
      break;
    case SchedulerKind::greedy_rr:
      for (const auto& [mask, weight] : greedy_rr_history(partition, fading, scheduler.slot, scheduler.max_slot_depth))
        for (int k : partition.active_rings())
          if (!(mask & ring_bit(k))) terms_.push_back({k, weight, mask, true});
      break;
    default:
      for (int k : partition.active_rings()) terms_.push_back({k, 1.0, 0, true});
  }
  for (const auto& t : terms_) peaks_.push_back(t.selected ? term_peak(t) : 0.0);

  const auto quad = signal_quadrature();
  if (form_ == Form::maximum) {
    double top = 0.0;
    for (int k : partition.active_rings()) top = std::max(top, scales_[k - 1]);
    const double unit = top * fading.mean();
    mean_ = numerics::integrate_semi_infinite([&](double x) { return survival(x); }, quad, unit).value;
    // Coarse log-grid search for the mode, the split point of the CF integral.
    double best = -1.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = mean_ * std::pow(10.0, -3.0 + 5.0 * i / 400.0);
      const double f = max_density(x);
      if (f > best) {
        best = f;
        mode_ = x;
      }
    }
  } else {
    for (size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      const double c = scales_[t.ring - 1];
      if (!t.selected) {
        mean_ += t.weight * c * fading.mean();
        continue;
      }
      const auto f = [&](double z) { return z * sub_density(t, z); };
      const double z0 = peaks_[i];
      mean_ += c * (numerics::integrate(f, 0.0, z0, quad).value +
                    numerics::integrate_semi_infinite(f, quad, z0, z0).value);
    }
  }
}

double SignalPowerModel::sub_density(const Term& t, double z) const {
  return t.weight * selection_.win_density(t.ring, z, t.excluded);
}

double SignalPowerModel::term_peak(const Term& t) const { return selection_.peak(t.ring, t.excluded); }

double SignalPowerModel::survival(double x) const {
  if (x <= 0.0) return 1.0;
  double log_f = 0.0;
  for (int k : partition_.active_rings()) {
    log_f += partition_.users[k - 1] * fading_.log_cdf(x / scales_[k - 1]);
    if (log_f == kNegInf) return 1.0;
  }
  return -std::expm1(log_f);
}

double SignalPowerModel::max_density(double x) const {
  if (x <= 0.0) return 0.0;
  const auto& rings = partition_.active_rings();
  std::vector<double> log_f(rings.size());
  double log_all = 0.0;
  for (size_t i = 0; i < rings.size(); ++i) {
    const int k = rings[i];
    log_f[i] = fading_.log_cdf(x / scales_[k - 1]);
    log_all += partition_.users[k - 1] * log_f[i];
    if (log_all == kNegInf) return 0.0;
  }
  double v = 0.0;
  for (size_t i = 0; i < rings.size(); ++i) {
    const int k = rings[i];
    const double c = scales_[k - 1];
    v += partition_.users[k - 1] / c * std::exp(fading_.log_pdf(x / c) - log_f[i] + log_all);
  }
  return v;
}

double SignalPowerModel::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (form_ == Form::maximum) return std::clamp(1.0 - survival(x), 0.0, 1.0);
  const auto quad = signal_quadrature();
  double v = 0.0;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    const double z = x / scales_[t.ring - 1];
    if (!t.selected) {
      v += t.weight * fading_.cdf(z);
      continue;
    }
    const auto f = [&](double y) { return sub_density(t, y); };
    const double z0 = peaks_[i];
    v += numerics::integrate(f, 0.0, std::min(z, z0), quad).value;
    if (z > z0) v += chunked_integral(f, z0, z, z0, quad);
  }
  return std::clamp(v, 0.0, 1.0);
}

double SignalPowerModel::mean() const { return mean_; }

double SignalPowerModel::laplace(double s) const {
  if (s < 0.0) throw DomainError("signal Laplace transform needs s >= 0");
  if (s == 0.0) return 1.0;
  const auto quad = signal_quadrature();
  if (form_ == Form::maximum) {
    // Integration by parts: L(s) = 1 - s int_0^inf e^{-sx} S(x) dx.
    const double unit = std::min(mean_, 1.0 / s);
    const auto f = [&](double x) { return std::exp(-s * x) * survival(x); };
    const double tail = numerics::integrate_semi_infinite(f, quad, unit).value;
    return std::clamp(1.0 - s * tail, 0.0, 1.0);
  }
  double v = 0.0;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    const double c = scales_[t.ring - 1];
    if (!t.selected) {
      v += t.weight * fading_.laplace(s * c);
      continue;
    }
    const auto f = [&](double z) { return std::exp(-s * c * z) * sub_density(t, z); };
    const double z0 = peaks_[i];
    v += numerics::integrate(f, 0.0, z0, quad).value;
    v += numerics::integrate_semi_infinite(f, quad, std::min(z0, 1.0 / (s * c)), z0).value;
  }
  return std::clamp(v, 0.0, 1.0);
}

std::complex<double> SignalPowerModel::cf(double w) const {
  if (w == 0.0) return 1.0;
  const auto quad = signal_quadrature();
  if (form_ == Form::maximum) {
    // Against the density, split at its mode. Integrating by parts against
    // S(x) instead would oscillate over the long plateau S = 1 below the bulk.
    const auto f = [&](double x) { return std::polar(max_density(x), w * x); };
    const double unit = std::min(mode_, 8.0 * std::numbers::pi / std::abs(w));
    return numerics::integrate(f, 0.0, mode_, quad).value + numerics::integrate_semi_infinite(f, quad, unit, mode_).value;
  }
  cplx v = 0.0;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    const double c = scales_[t.ring - 1];
    if (!t.selected) {
      v += t.weight * fading_.cf(c * w);
      continue;
    }
    const auto f = [&](double z) { return std::polar(sub_density(t, z), c * w * z); };
    const double z0 = peaks_[i];
    const double unit = std::min(z0, 8.0 * std::numbers::pi / std::abs(c * w));
    v += numerics::integrate(f, 0.0, z0, quad).value;
    v += numerics::integrate_semi_infinite(f, quad, unit, z0).value;
  }
  return v;
}

numerics::InversionResult outage_probability(const numerics::CharacteristicFunction& cf_signal,
                                             const numerics::CharacteristicFunction& cf_interference, double q,
                                             double scale, const OutageConfig& cfg) {
  if (!(q > 0.0)) throw DomainError("outage threshold q must be positive");
  numerics::InversionConfig inv;
  inv.scale = scale;
  inv.tolerance = cfg.tolerance;
  inv.failure_threshold = cfg.failure_threshold;
  // Z = qY - X0; outage is Z > 0.
  const auto cf_z = [&](double w) { return cf_interference(q * w) * std::conj(cf_signal(w)); };
  const auto below = numerics::cdf_from_transform(cf_z, 0.0, inv);
  return {std::clamp(1.0 - below.probability, 0.0, 1.0), below.error};
}

std::vector<numerics::InversionResult> outage_curve(const SignalPowerModel& signal, const CumulativeIci& ici,
                                                    const std::vector<double>& thresholds, const OutageConfig& cfg) {
  if (thresholds.empty()) return {};
  std::unordered_map<double, cplx> memo;
  const auto cf_signal = [&](double w) {
    const auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    return memo.emplace(w, signal.cf(w)).first->second;
  };
  const auto cf_y = [&](double w) { return ici.cf(w); };
  // One frequency grid for all thresholds so signal evaluations are reused.
  // The spread of Z = qY - X0 at the smallest q sets it: a larger scale would
  // end the inversion before phi_Z has decayed.
  const double q_min = *std::min_element(thresholds.begin(), thresholds.end());
  const double scale = signal.mean() + q_min * ici.mean();
  std::vector<numerics::InversionResult> out;
  for (double q : thresholds) out.push_back(outage_probability(cf_signal, cf_y, q, scale, cfg));
  return out;
}

numerics::InversionResult outage_probability(const SignalPowerModel& signal, const CumulativeIci& ici, double q,
                                             const OutageConfig& cfg) {
  return outage_curve(signal, ici, {q}, cfg).front();
}

CapacityResult ergodic_capacity(const std::function<double(double)>& laplace_signal,
                                const std::function<double(double)>& laplace_interference, double noise,
                                double split, const CapacityConfig& cfg) {
  if (noise < 0.0) throw DomainError("noise power must be non-negative");
  if (!(split > 0.0)) throw DomainError("capacity split point must be positive");
  // In log time t = split e^u the integrand of C ln 2 becomes
  // L_Y(t) (1 - L_X0(t)) e^{-noise t}.
  const auto h = [&](double u) {
    const double t = split * std::exp(u);
    // Without noise the integrand only decays through L_Y; reaching t = inf
    // means it never did.
    if (!std::isfinite(t)) return noise > 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    const double damp = std::exp(-noise * t);
    if (damp == 0.0) return 0.0;
    const double ly = laplace_interference(t);
    if (ly == 0.0) return 0.0;
    return ly * (1.0 - laplace_signal(t)) * damp;
  };
  CapacityResult out;
  if (cfg.method == CapacityMethod::laguerre) {
    const auto& rule = numerics::gauss_laguerre(cfg.laguerre_order);
    double v = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = rule.nodes[i];
      v += rule.weights[i] * std::exp(x) * (h(x) + h(-x));
    }
    out.value = v / std::numbers::ln2;
    return out;
  }
  try {
    const auto upper = numerics::integrate_semi_infinite(h, cfg.quad, 1.0, 0.0);
    const auto lower = numerics::integrate_semi_infinite([&](double v) { return h(-v); }, cfg.quad, 1.0, 0.0);
    out.value = (upper.value + lower.value) / std::numbers::ln2;
    out.error = (upper.error + lower.error) / std::numbers::ln2;
  } catch (const AccuracyError& e) {
    throw DivergenceError("capacity integral does not converge (no noise and no interference?)", 0.0);
  }
  return out;
}

CapacityResult ergodic_capacity(const SignalPowerModel& signal, const CumulativeIci& ici, double noise,
                                const CapacityConfig& cfg) {
  double split = cfg.split;
  if (!(split > 0.0)) {
    const double ey = ici.mean() > 0.0 ? ici.mean() : (noise > 0.0 ? noise : 1.0);
    split = 1.0 / std::sqrt(signal.mean() * ey);
  }
  return ergodic_capacity([&](double t) { return signal.laplace(t); }, [&](double t) { return ici.laplace(t); },
                          noise, split, cfg);
}

double average_fairness(const LocationPmf& pmf, const RingPartition& partition) {
  if (pmf.ring_count() != partition.ring_count()) throw DomainError("PMF does not match the ring partition");
  const int total = partition.user_count();
  if (total < 2) throw DomainError("fairness needs at least two users");
  double h = 0.0;
  for (int k = 1; k <= partition.ring_count(); ++k) {
    const double p = pmf(k);
    if (p <= 0.0 || !partition.active(k)) continue;
    h -= p * (std::log(p) - std::log(static_cast<double>(partition.users[k - 1])));
  }
  return std::clamp(h / std::log(static_cast<double>(total)), 0.0, 1.0);
}

double scheme_fairness(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading,
                       int slots) {
  return average_fairness(slot_averaged_pmf(scheduler, partition, fading, slots), partition);
}

double average_power_savings(const LocationPmf& pmf, const RingPartition& partition, const PowerControl& power) {
  if (pmf.ring_count() != partition.ring_count()) throw DomainError("PMF does not match the ring partition");
  if (!(power.p0_w > 0.0)) throw DomainError("power savings need a positive P_0");
  const double rt = power.threshold(partition.beta);
  double v = 0.0;
  for (int k = 1; k <= partition.ring_count(); ++k) {
    const double r = partition.outer(k);
    if (r > rt) continue;
    v += pmf(k) * (power.p_max_w - power.p0_w * std::pow(r, partition.beta));
  }
  return std::max(v, 0.0);
}

std::string config_fingerprint(const std::map<std::string, std::string>& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto feed = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  };
  for (const auto& [key, value] : config) {
    for (char c : key) feed(c);
    feed('=');
    for (char c : value) feed(c);
    feed('\n');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace icim
