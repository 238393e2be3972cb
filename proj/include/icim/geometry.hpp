#pragma once

#include <vector>

namespace icim {

struct CellLayout {
  double radius = 500.0;     // R (m)
  double intersite = 1000.0;  // D (m), 2R under universal reuse
  int interferers = 6;        // L, one tier

  /// Builds a layout; intersite <= 0 means 2R.
  static CellLayout make(double radius, double intersite = 0.0, int interferers = 6);
  void validate() const;
};

/// Concentric rings with a fixed path-loss drop of kappa dB across each ring.
/// radii holds r_0 < r_1 < ... < r_K = R; ring k (1-based) is (r_{k-1}, r_k].
struct RingPartition {
  double radius = 0.0;
  double kappa_db = 0.0;
  double beta = 0.0;
  double min_radius = 0.0;
  std::vector<double> radii;

  // Filled by with_users(): per-ring expected counts before and after rounding,
  // indexed 0..K-1 for rings 1..K.
  int requested_users = 0;
  std::vector<double> raw_users;
  std::vector<int> users;

  int ring_count() const { return static_cast<int>(radii.size()) - 1; }
  /// Outer radius of ring k (1-based); users of the ring are placed here.
  double outer(int k) const { return radii.at(k); }
  double inner(int k) const { return radii.at(k - 1); }
  double width(int k) const { return radii.at(k) - radii.at(k - 1); }
  double area(int k) const;
  double growth() const;

  bool active(int k) const { return users.at(k - 1) > 0; }
  int user_count() const;
  int active_ring_count() const;
  /// 1-based indices of rings with at least one user.
  std::vector<int> active_rings() const;

  /// Copy with per-ring user counts for U users in the cell.
  RingPartition with_users(int total_users) const;

  /// Partition from explicit radii (r_0 first). kappa_db is derived from the
  /// first ring ratio and is only informational.
  static RingPartition from_radii(std::vector<double> radii, double beta);
};

inline constexpr int kDefaultMaxRings = 64;

/// K = ceil(10 beta log10(R / r_min) / kappa); r_K = R and r_{k-1} = r_k / g
/// with g = 10^{kappa / (10 beta)}.
RingPartition build_ring_partition(double radius, double kappa_db, double beta, double min_radius,
                                   int max_rings = kDefaultMaxRings);

/// u_k = round-half-up(U (r_k^2 - r_{k-1}^2) / R^2); raw values <= 0.5 give an
/// inactive ring. The region inside r_0 is counted with ring 1.
std::vector<int> users_per_ring(const RingPartition& partition, int total_users);
std::vector<double> raw_users_per_ring(const RingPartition& partition, int total_users);

/// I equal angular intervals on [0, 2 pi); each midpoint carries probability 1/I.
struct AngularGrid {
  int count = 720;

  explicit AngularGrid(int intervals = 720);
  double angle(int i) const;
  double probability() const { return 1.0 / count; }
  std::vector<double> angles() const;
};

/// Distance from a user at (r, theta) in one cell to the base station of a
/// cell at distance D (cosine law).
double interfering_distance(double r, double theta, double intersite);

/// Distances from a receiver at (r_k, theta_i) to the L interfering base
/// stations placed at angles 2 pi (l-1) / L + pi / L.
std::vector<double> downlink_interferer_distances(double r, double theta, double intersite, int interferers = 6);

/// Same, with caller-supplied (distance, angular offset) pairs for each
/// interfering base station (multi-tier layouts).
struct SiteOffset {
  double distance;
  double angle;
};
std::vector<double> downlink_interferer_distances(double r, double theta, const std::vector<SiteOffset>& sites);

}  // namespace icim
