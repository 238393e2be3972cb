#include "icim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "icim/error.hpp"

namespace icim {

CellLayout CellLayout::make(double radius, double intersite, int interferers) {
  CellLayout c{radius, intersite > 0.0 ? intersite : 2.0 * radius, interferers};
  c.validate();
  return c;
}

void CellLayout::validate() const {
  if (!(radius > 0.0)) throw DomainError("cell radius must be positive");
  if (!(intersite >= radius)) throw DomainError("intersite distance must be at least the cell radius");
  if (interferers < 0) throw DomainError("number of interfering cells must be non-negative");
}

double RingPartition::area(int k) const {
  const double a = inner(k), b = outer(k);
  return std::numbers::pi * (b * b - a * a);
}

double RingPartition::growth() const { return std::pow(10.0, kappa_db / (10.0 * beta)); }

int RingPartition::user_count() const {
  int n = 0;
  for (int u : users) n += u;
  return n;
}

int RingPartition::active_ring_count() const { return static_cast<int>(active_rings().size()); }

std::vector<int> RingPartition::active_rings() const {
  std::vector<int> out;
  for (int k = 1; k <= static_cast<int>(users.size()); ++k)
    if (users[k - 1] > 0) out.push_back(k);
  return out;
}

RingPartition RingPartition::with_users(int total_users) const {
  RingPartition p = *this;
  p.requested_users = total_users;
  p.raw_users = raw_users_per_ring(*this, total_users);
  p.users = users_per_ring(*this, total_users);
  return p;
}

RingPartition RingPartition::from_radii(std::vector<double> radii, double beta) {
  if (radii.size() < 2) throw DomainError("a partition needs at least two radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw DomainError("radii must be strictly increasing");
  if (radii.front() < 0.0) throw DomainError("radii must be non-negative");
  if (!(beta > 0.0)) throw DomainError("path-loss exponent must be positive");
  RingPartition p;
  p.radius = radii.back();
  p.beta = beta;
  p.min_radius = radii.front();
  p.kappa_db = radii.front() > 0.0 ? 10.0 * beta * std::log10(radii[1] / radii[0]) : 0.0;
  p.radii = std::move(radii);
  return p;
}

RingPartition build_ring_partition(double radius, double kappa_db, double beta, double min_radius, int max_rings) {
  if (!(radius > 0.0) || !(kappa_db > 0.0) || !(beta > 0.0) || !(min_radius > 0.0))
    throw DomainError("ring partition inputs must be positive");
  if (!(radius > min_radius)) throw DomainError("cell radius must exceed the innermost radius");
  // The small slack keeps exact boundary cases (kappa dividing the total decay)
  // from gaining a spurious ring through rounding.
  const double rings = 10.0 * beta * std::log10(radius / min_radius) / kappa_db;
  const int k_count = static_cast<int>(std::ceil(rings - 1e-9));
  if (k_count > max_rings)
    throw DomainError("ring partition too fine: " + std::to_string(k_count) + " rings exceeds the limit of " +
                      std::to_string(max_rings));
  RingPartition p;
  p.radius = radius;
  p.kappa_db = kappa_db;
  p.beta = beta;
  p.min_radius = min_radius;
  p.radii.resize(k_count + 1);
  const double log_g = kappa_db / (10.0 * beta) * std::log(10.0);
  for (int k = 0; k < k_count; ++k) p.radii[k] = radius * std::exp(-(k_count - k) * log_g);
  p.radii[k_count] = radius;
  return p;
}

std::vector<double> raw_users_per_ring(const RingPartition& partition, int total_users) {
  if (total_users < 1) throw DomainError("number of users must be at least 1");
  const int k_count = partition.ring_count();
  const double r2 = partition.radius * partition.radius;
  std::vector<double> raw(k_count);
  for (int k = 1; k <= k_count; ++k) {
    const double a = k == 1 ? 0.0 : partition.inner(k);
    const double b = partition.outer(k);
    raw[k - 1] = total_users * (b * b - a * a) / r2;
  }
  return raw;
}

std::vector<int> users_per_ring(const RingPartition& partition, int total_users) {
  const auto raw = raw_users_per_ring(partition, total_users);
  std::vector<int> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] <= 0.5 ? 0 : static_cast<int>(std::floor(raw[i] + 0.5));
  return out;
}

AngularGrid::AngularGrid(int intervals) : count(intervals) {
  if (intervals < 1) throw DomainError("angular grid needs at least one interval");
}

double AngularGrid::angle(int i) const { return (i + 0.5) * 2.0 * std::numbers::pi / count; }

std::vector<double> AngularGrid::angles() const {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = angle(i);
  return out;
}

double interfering_distance(double r, double theta, double intersite) {
  const double d2 = r * r + intersite * intersite - 2.0 * r * intersite * std::cos(theta);
  return std::sqrt(std::max(d2, 0.0));
}

std::vector<double> downlink_interferer_distances(double r, double theta, double intersite, int interferers) {
  if (interferers < 0) throw DomainError("number of interfering cells must be non-negative");
  std::vector<SiteOffset> sites(interferers);
  const double step = 2.0 * std::numbers::pi / std::max(interferers, 1);
  for (int l = 0; l < interferers; ++l) sites[l] = {intersite, l * step + 0.5 * step};
  return downlink_interferer_distances(r, theta, sites);
}

std::vector<double> downlink_interferer_distances(double r, double theta, const std::vector<SiteOffset>& sites) {
  std::vector<double> out;
  out.reserve(sites.size());
  for (const auto& s : sites) out.push_back(interfering_distance(r, s.angle - theta, s.distance));
  return out;
}

}  // namespace icim
