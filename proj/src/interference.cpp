#include "icim/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "icim/error.hpp"

namespace icim {

std::string to_string(Direction d) { return d == Direction::uplink ? "uplink" : "downlink"; }

Direction parse_direction(const std::string& text) {
  if (text == "uplink") return Direction::uplink;
  if (text == "downlink") return Direction::downlink;
  throw ConfigError("direction must be uplink or downlink, got '" + text + "'");
}

int InterfererDistancePmf::bin_index(double distance) const {
  const int m = static_cast<int>(std::floor((distance - lower) / bin_width));
  return std::clamp(m, 0, bin_count() - 1);
}

double InterfererDistancePmf::sum() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

InterfererDistancePmf interferer_distance_pmf(const JointLocationAnglePmf& joint, const RingPartition& partition,
                                              const CellLayout& layout, double bin_width) {
  layout.validate();
  if (!(bin_width > 0.0)) throw DomainError("distance bin width must be positive");
  const int rings = joint.location.ring_count();
  if (rings != partition.ring_count()) throw DomainError("location PMF does not match the ring partition");
  InterfererDistancePmf out;
  out.bin_width = bin_width;
  out.lower = layout.intersite - layout.radius;
  const int bins = static_cast<int>(std::ceil(2.0 * layout.radius / bin_width - 1e-12));
  out.centers.resize(bins);
  for (int m = 0; m < bins; ++m) out.centers[m] = out.lower + (m + 0.5) * bin_width;
  out.probs.assign(bins, 0.0);
  out.by_ring.assign(bins, std::vector<double>(rings, 0.0));
  for (int k = 1; k <= rings; ++k) {
    if (joint.location(k) == 0.0) continue;
    for (int i = 0; i < joint.grid.count; ++i) {
      const double d = interfering_distance(partition.outer(k), joint.grid.angle(i), layout.intersite);
      const int m = out.bin_index(d);
      const double p = joint(k, i);
      out.probs[m] += p;
      out.by_ring[m][k - 1] += p;
    }
  }
  return out;
}

SingleCellIci::SingleCellIci(std::vector<IciComponent> components, FadingModel chi)
    : components_(std::move(components)), chi_(std::move(chi)) {
  for (const auto& c : components_) {
    if (!(c.weight >= 0.0) || !(c.scale > 0.0) || !std::isfinite(c.scale))
      throw DomainError("interference components need non-negative weights and positive scales");
    max_scale_ = std::max(max_scale_, c.scale);
  }
}

SingleCellIci SingleCellIci::uplink(const InterfererDistancePmf& distances, const RingPartition& partition,
                                    const FadingModel& chi, const LinkBudget& budget) {
  budget.validate();
  const double beta = partition.beta;
  std::vector<IciComponent> comps;
  for (int m = 0; m < distances.bin_count(); ++m) {
    const double loss = std::pow(distances.centers[m], -beta);
    if (!budget.power_control) {
      if (distances.probs[m] > 0.0) comps.push_back({distances.probs[m], budget.kbar() * loss});
      continue;
    }
    for (int k = 1; k <= partition.ring_count(); ++k) {
      const double p = distances.by_ring[m][k - 1];
      if (p > 0.0) comps.push_back({p, budget.gain * budget.transmit_power(partition.outer(k), beta) * loss});
    }
  }
  return SingleCellIci(std::move(comps), chi);
}

double SingleCellIci::pdf(double x) const {
  if (x < 0.0) throw DomainError("interference density evaluated at negative power");
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * chi_.pdf(x / c.scale) / c.scale;
  return v;
}

double SingleCellIci::cdf(double x) const {
  if (x < 0.0) throw DomainError("interference cdf evaluated at negative power");
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * chi_.cdf(x / c.scale);
  return v;
}

double SingleCellIci::mean() const {
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * c.scale;
  return v * chi_.mean();
}

double SingleCellIci::convergence_limit() const {
  if (max_scale_ == 0.0) return std::numeric_limits<double>::infinity();
  return -chi_.laplace_pole() / max_scale_;
}

double SingleCellIci::laplace(double s) const {
  if (s == 0.0) return 1.0;
  if (-s >= convergence_limit() && !(s > 0.0))
    throw DivergenceError("single-cell interference MGF diverges beyond t = " + std::to_string(convergence_limit()),
                          convergence_limit());
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * chi_.laplace(s * c.scale);
  return v;
}

std::complex<double> SingleCellIci::laplace(std::complex<double> s) const {
  if (s == 0.0) return 1.0;
  if (s.real() < 0.0 && -s.real() >= convergence_limit())
    throw DivergenceError("single-cell interference transform diverges", convergence_limit());
  std::complex<double> v = 0.0;
  for (const auto& c : components_) v += c.weight * chi_.laplace(s * c.scale);
  return v;
}

double SingleCellIci::mgf_quadrature(double t) const {
  if (t >= convergence_limit() && t != 0.0)
    throw DivergenceError("single-cell interference MGF diverges", convergence_limit());
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * chi_.laplace_quadrature(-t * c.scale);
  return v;
}

double SingleCellIci::mgf_whittaker(double t) const {
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * chi_.laplace_whittaker(-t * c.scale);
  return v;
}

CumulativeIci CumulativeIci::uplink(SingleCellIci single, int interferers) {
  if (interferers < 0) throw DomainError("number of interfering cells must be non-negative");
  CumulativeIci y;
  y.direction_ = Direction::uplink;
  y.interferers_ = interferers;
  y.chi_ = single.chi();
  y.single_.push_back(std::move(single));
  return y;
}

CumulativeIci CumulativeIci::downlink(const JointLocationAnglePmf& joint, const RingPartition& partition,
                                      const CellLayout& layout, const FadingModel& chi, const LinkBudget& budget) {
  layout.validate();
  budget.validate();
  if (budget.power_control)
    throw DomainError("power control is modelled for the uplink only; the downlink assumes full-power base stations");
  CumulativeIci y;
  y.direction_ = Direction::downlink;
  y.interferers_ = layout.interferers;
  y.chi_ = chi;
  const int angles = joint.grid.count;
  const int cells = layout.interferers;
  // Rotating the receiver by one sector permutes the base stations, so with
  // a grid aligned to the sectors one sector of angles suffices.
  const bool symmetric = cells > 0 && angles % cells == 0;
  const int used = symmetric ? angles / cells : angles;
  const double repeat = symmetric ? static_cast<double>(cells) : 1.0;
  for (int k = 1; k <= partition.ring_count(); ++k) {
    if (joint.location(k) == 0.0) continue;
    for (int i = 0; i < used; ++i) {
      DownlinkState st{joint(k, i) * repeat, {}};
      for (double d : downlink_interferer_distances(partition.outer(k), joint.grid.angle(i), layout.intersite, cells))
        st.scales.push_back(budget.kbar() * std::pow(d, -partition.beta));
      y.states_.push_back(std::move(st));
    }
  }
  return y;
}

double CumulativeIci::convergence_limit() const {
  if (direction_ == Direction::uplink) return interferers_ == 0 ? INFINITY : single().convergence_limit();
  double max_scale = 0.0;
  for (const auto& st : states_)
    for (double s : st.scales) max_scale = std::max(max_scale, s);
  if (max_scale == 0.0) return std::numeric_limits<double>::infinity();
  return -chi_.laplace_pole() / max_scale;
}

std::complex<double> CumulativeIci::laplace(std::complex<double> s) const {
  if (s == 0.0) return 1.0;
  if (s.real() < 0.0 && -s.real() >= convergence_limit())
    throw DivergenceError("cumulative interference transform diverges", convergence_limit());
  if (direction_ == Direction::uplink) {
    if (interferers_ == 0) return 1.0;
    const auto x = single().laplace(s);
    std::complex<double> v = 1.0;
    for (int l = 0; l < interferers_; ++l) v *= x;
    return v;
  }
  std::complex<double> total = 0.0;
  for (const auto& st : states_) {
    std::complex<double> prod = st.weight;
    for (double sc : st.scales) prod *= chi_.laplace(s * sc);
    total += prod;
  }
  return total;
}

double CumulativeIci::laplace(double s) const {
  if (s == 0.0) return 1.0;
  if (s < 0.0 && -s >= convergence_limit())
    throw DivergenceError("cumulative interference MGF diverges beyond t = " + std::to_string(convergence_limit()),
                          convergence_limit());
  if (direction_ == Direction::uplink) {
    if (interferers_ == 0) return 1.0;
    return std::pow(single().laplace(s), interferers_);
  }
  double total = 0.0;
  for (const auto& st : states_) {
    double prod = st.weight;
    for (double sc : st.scales) prod *= chi_.laplace(s * sc);
    total += prod;
  }
  return total;
}

double CumulativeIci::mean() const {
  if (direction_ == Direction::uplink) return interferers_ * (interferers_ ? single().mean() : 0.0);
  double v = 0.0;
  for (const auto& st : states_)
    for (double sc : st.scales) v += st.weight * sc;
  return v * chi_.mean();
}

numerics::InversionResult CumulativeIci::cdf(double x, const numerics::InversionConfig& cfg) const {
  if (x < 0.0) return {0.0, 0.0};
  if (interferers_ == 0) return {1.0, 0.0};
  auto local = cfg;
  local.scale = mean();
  return numerics::cdf_from_transform([this](double w) { return cf(w); }, x, local);
}

}  // namespace icim
