#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "icim/fading.hpp"
#include "icim/interference.hpp"
#include "icim/link_budget.hpp"
#include "icim/numerics/inversion.hpp"
#include "icim/scheduling.hpp"

namespace icim {

/// Distribution of X0, the SNR of the user served in the victim cell.
///
/// Two representations exist. For greedy (with or without power control) the
/// served user is the one with the largest SNR, so X0 = max_k gamma_k and
///   F_X0(x) = prod_k F_zeta(x / c_k)^{u_k},  c_k = per-ring SNR scale.
/// Every other scheduler is a mixture over the served ring: either the
/// winner's fading with its sub-density (proportional fair, greedy round
/// robin) or plain fading (round robin, location round robin).
class SignalPowerModel {
 public:
  enum class Form { maximum, mixture };

  SignalPowerModel(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading,
                   const LinkBudget& budget);

  /// Builds the ring mixture even where the maximum form applies.
  static SignalPowerModel mixture(const Scheduler& scheduler, const RingPartition& partition,
                                  const FadingModel& fading, const LinkBudget& budget);

  Form form() const { return form_; }
  SchedulerKind scheduler() const { return scheduler_; }
  /// SNR scale of ring k: gain * transmit power * r_k^-beta.
  double scale(int k) const { return scales_.at(k - 1); }

  double cdf(double x) const;
  double mean() const;
  /// E[e^{-s X0}], s >= 0.
  double laplace(double s) const;
  /// E[e^{i w X0}].
  std::complex<double> cf(double w) const;

 private:
  struct Term {
    int ring;
    double weight;        // probability of the exclusion history, or P_k for plain terms
    RingMask excluded;    // rings not eligible in this history
    bool selected;        // true: winner sub-density; false: unconditioned fading
  };

  SignalPowerModel(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading,
                   const LinkBudget& budget, bool force_mixture);

  double survival(double x) const;
  /// Density of the maximum form, d/dx prod_k F_zeta(x / c_k)^{u_k}.
  double max_density(double x) const;
  double sub_density(const Term& t, double z) const;
  double term_peak(const Term& t) const;

  SchedulerKind scheduler_;
  Form form_;
  RingPartition partition_;
  FadingModel fading_;
  SelectionModel selection_;
  std::vector<double> scales_;
  std::vector<Term> terms_;
  std::vector<double> peaks_;
  double mode_ = 0.0;  // maximum form: where max_density peaks
  double mean_ = 0.0;
};

/// P(X0 < q Y) by Gil-Pelaez inversion of phi_Z(w) = phi_Y(q w) phi_X0(-w),
/// Z = q Y - X0.
struct OutageConfig {
  double tolerance = 1e-6;
  double failure_threshold = 1e-3;
};

numerics::InversionResult outage_probability(const numerics::CharacteristicFunction& cf_signal,
                                             const numerics::CharacteristicFunction& cf_interference, double q,
                                             double scale, const OutageConfig& cfg = {});
numerics::InversionResult outage_probability(const SignalPowerModel& signal, const CumulativeIci& ici, double q,
                                             const OutageConfig& cfg = {});
/// Same over a threshold grid, sharing characteristic-function evaluations.
std::vector<numerics::InversionResult> outage_curve(const SignalPowerModel& signal, const CumulativeIci& ici,
                                                    const std::vector<double>& thresholds,
                                                    const OutageConfig& cfg = {});

/// Ergodic capacity in bit/s/Hz,
///   C = (1/ln 2) int_0^inf L_Y(t) (1 - L_X0(t)) e^{-noise t} / t dt,
/// with L the Laplace transforms. Noise is in the same units as X0 and Y
/// (1 for noise-normalized powers, 0 when interference-limited).
enum class CapacityMethod { adaptive, laguerre };

struct CapacityResult {
  double value = 0.0;
  double error = 0.0;
};

struct CapacityConfig {
  CapacityMethod method = CapacityMethod::adaptive;
  int laguerre_order = 32;
  numerics::QuadratureConfig quad{1e-12, 1e-9, 4000, 2.0, 160};
  // Split point of the log-time integral; 0 picks 1 / sqrt(E[X0] E[Y]).
  double split = 0.0;
};

CapacityResult ergodic_capacity(const std::function<double(double)>& laplace_signal,
                                const std::function<double(double)>& laplace_interference, double noise,
                                double split, const CapacityConfig& cfg = {});
CapacityResult ergodic_capacity(const SignalPowerModel& signal, const CumulativeIci& ici, double noise,
                                const CapacityConfig& cfg = {});

/// -sum_k P_k (ln P_k - ln u_k) / ln U over active rings: the normalized
/// entropy of the per-user allocation probabilities.
double average_fairness(const LocationPmf& pmf, const RingPartition& partition);
/// Fairness of a scheduler; slotted schedulers use the PMF averaged over
/// slots 1..W.
double scheme_fairness(const Scheduler& scheduler, const RingPartition& partition, const FadingModel& fading,
                       int slots = 1);

/// sum over rings inside r_t of P_k (P_max - P_0 r_k^beta), in watts.
double average_power_savings(const LocationPmf& pmf, const RingPartition& partition, const PowerControl& power);

struct MetricReport {
  std::string metric;
  double value = 0.0;
  double error = 0.0;
  std::string fingerprint;
};

/// FNV-1a 64 over the sorted key=value lines, as 16 hex digits.
std::string config_fingerprint(const std::map<std::string, std::string>& config);

}  // namespace icim
