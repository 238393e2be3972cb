#pragma once

#include <complex>
#include <string>
#include <vector>

#include "icim/fading.hpp"
#include "icim/geometry.hpp"
#include "icim/link_budget.hpp"
#include "icim/numerics/inversion.hpp"
#include "icim/scheduling.hpp"

namespace icim {

enum class Direction { uplink, downlink };

std::string to_string(Direction d);
Direction parse_direction(const std::string& text);

/// Distance from the scheduled user of an interfering cell to the victim base
/// station, grouped into M = ceil(2R / Delta) bins over [D - R, D + R].
struct InterfererDistancePmf {
  double bin_width = 50.0;
  double lower = 0.0;  // D - R
  std::vector<double> centers;
  std::vector<double> probs;
  // by_ring[m][k-1]: the part of bin m contributed by users of ring k. Needed
  // under power control, where transmit power depends on the source ring.
  std::vector<std::vector<double>> by_ring;

  int bin_count() const { return static_cast<int>(centers.size()); }
  int bin_index(double distance) const;
  double sum() const;
};

InterfererDistancePmf interferer_distance_pmf(const JointLocationAnglePmf& joint, const RingPartition& partition,
                                              const CellLayout& layout, double bin_width);

/// One term of the single-cell interference mixture: X = scale * chi with
/// probability weight.
struct IciComponent {
  double weight;
  double scale;
};

/// Interference from one cell: a finite mixture of scaled copies of the
/// interferer fading chi.
class SingleCellIci {
 public:
  SingleCellIci(std::vector<IciComponent> components, FadingModel chi);

  /// Uplink mixture. Without power control each distance bin gives scale
  /// K-bar r_m^-beta; with it, each (bin, source ring) pair gives
  /// gain * min(P_max, P_0 r_k^beta) * r_m^-beta.
  static SingleCellIci uplink(const InterfererDistancePmf& distances, const RingPartition& partition,
                              const FadingModel& chi, const LinkBudget& budget);

  const std::vector<IciComponent>& components() const { return components_; }
  const FadingModel& chi() const { return chi_; }

  double pdf(double x) const;
  double cdf(double x) const;
  double mean() const;

  /// E[e^{-sX}] using the closed form of the fading model (Rayleigh and
  /// Gamma) or the pdf quadrature (Generalized-K).
  double laplace(double s) const;
  std::complex<double> laplace(std::complex<double> s) const;
  /// E[e^{tX}].
  double mgf(double t) const { return laplace(-t); }
  /// Same transform, always by per-component pdf quadrature.
  double mgf_quadrature(double t) const;
  /// Generalized-K only: per-component Whittaker closed form.
  double mgf_whittaker(double t) const;
  /// The MGF exists for t < convergence_limit().
  double convergence_limit() const;

 private:
  std::vector<IciComponent> components_;
  FadingModel chi_;
  double max_scale_ = 0.0;
};

/// Cumulative interference Y from L cells.
class CumulativeIci {
 public:
  /// Uplink: i.i.d. cells, M_Y = M_X^L.
  static CumulativeIci uplink(SingleCellIci single, int interferers);
  /// Downlink: the receiver sits at (r_k, theta_i) with the joint PMF, and
  /// each of the L base stations transmits at P_max from distance rbar_l:
  ///   M_Y(t) = sum_{k,i} P(r_k, theta_i) prod_l M_chi(K-bar rbar_l^-beta t).
  static CumulativeIci downlink(const JointLocationAnglePmf& joint, const RingPartition& partition,
                                const CellLayout& layout, const FadingModel& chi, const LinkBudget& budget);

  Direction direction() const { return direction_; }
  int interferers() const { return interferers_; }
  const SingleCellIci& single() const { return single_.at(0); }

  double laplace(double s) const;
  std::complex<double> laplace(std::complex<double> s) const;
  double mgf(double t) const { return laplace(-t); }
  std::complex<double> cf(double w) const { return laplace(std::complex<double>(0.0, -w)); }
  double mean() const;
  double convergence_limit() const;

  /// P(Y <= x) by characteristic-function inversion.
  numerics::InversionResult cdf(double x, const numerics::InversionConfig& cfg = {}) const;

 private:
  struct DownlinkState {
    double weight;
    std::vector<double> scales;
  };

  Direction direction_ = Direction::uplink;
  int interferers_ = 0;
  std::vector<SingleCellIci> single_;  // one element for uplink
  std::vector<DownlinkState> states_;
  FadingModel chi_ = FadingModel::rayleigh(1.0);
};

}  // namespace icim
