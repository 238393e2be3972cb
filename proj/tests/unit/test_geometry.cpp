#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "icim/error.hpp"
#include "icim/geometry.hpp"

using namespace icim;

TEST_CASE("default partition has ten rings with geometric growth") {
  const auto p = build_ring_partition(500.0, 2.0, 2.6, 100.0);
  CHECK(p.ring_count() == 10);
  CHECK(p.radii.back() == 500.0);
  const double g = std::pow(10.0, 2.0 / 26.0);
  CHECK(g == doctest::Approx(1.193777).epsilon(1e-6));
  for (int k = 1; k <= p.ring_count(); ++k) {
    CHECK(std::abs(p.radii[k] / p.radii[k - 1] / g - 1.0) <= 1e-12);
    if (k > 1) CHECK(p.width(k) > p.width(k - 1));
  }
  // Frozen from an independent evaluation of R / g^K.
  CHECK(p.radii[0] == doctest::Approx(85.0627139926295).epsilon(1e-12));
  CHECK(p.radii[6] == doctest::Approx(246.19413158533703).epsilon(1e-12));
}

TEST_CASE("ring areas tile the disk minus the inner hole") {
  const auto p = build_ring_partition(500.0, 2.0, 2.6, 100.0);
  double total = 0.0;
  for (int k = 1; k <= p.ring_count(); ++k) total += p.area(k);
  const double expected = std::numbers::pi * (500.0 * 500.0 - p.radii[0] * p.radii[0]);
  CHECK(total == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("single-ring boundary case") {
  const double kappa = 10.0 * 2.6 * std::log10(500.0 / 100.0);
  const auto p = build_ring_partition(500.0, kappa, 2.6, 100.0);
  CHECK(p.ring_count() == 1);
  CHECK(p.radii[0] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(p.radii[1] == 500.0);
}

TEST_CASE("partition errors") {
  CHECK_THROWS_AS(build_ring_partition(-1.0, 2.0, 2.6, 100.0), DomainError);
  CHECK_THROWS_AS(build_ring_partition(500.0, 0.0, 2.6, 100.0), DomainError);
  CHECK_THROWS_AS(build_ring_partition(500.0, 2.0, 2.6, 600.0), DomainError);
  CHECK_THROWS_AS(build_ring_partition(500.0, 0.1, 2.6, 1.0), DomainError);
  CHECK_NOTHROW(build_ring_partition(500.0, 0.1, 2.6, 1.0, 1000));
}

TEST_CASE("users per ring") {
  const auto whole = RingPartition::from_radii({0.0, 500.0}, 2.6);
  CHECK(users_per_ring(whole, 50) == std::vector<int>{50});

  const auto two = RingPartition::from_radii({0.0, 250.0, 500.0}, 2.6);
  CHECK(users_per_ring(two, 50) == std::vector<int>{13, 38});

  // raw 0.4 -> inactive
  const auto thin = RingPartition::from_radii({0.0, 500.0 * std::sqrt(0.4 / 50.0), 500.0}, 2.6).with_users(50);
  CHECK(thin.raw_users[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(thin.users[0] == 0);
  CHECK_FALSE(thin.active(1));
  CHECK(thin.active_rings() == std::vector<int>{2});

  // Default configuration, frozen from an independent evaluation of the area rule.
  const auto p = build_ring_partition(500.0, 2.0, 2.6, 100.0).with_users(50);
  CHECK(p.users == std::vector<int>{2, 1, 1, 2, 3, 4, 5, 7, 10, 15});
  CHECK(p.user_count() == 50);
  CHECK(p.active_ring_count() == 10);
  CHECK_THROWS_AS(users_per_ring(p, 0), DomainError);
}

TEST_CASE("cosine-law distances") {
  CHECK(interfering_distance(100.0, 0.0, 1000.0) == doctest::Approx(900.0).epsilon(1e-14));
  CHECK(interfering_distance(100.0, std::numbers::pi, 1000.0) == doctest::Approx(1100.0).epsilon(1e-14));
  CHECK(interfering_distance(100.0, std::numbers::pi / 2.0, 1000.0) ==
        doctest::Approx(std::sqrt(1010000.0)).epsilon(1e-14));
  for (int i = 0; i < 100; ++i) {
    const double th = 0.0628 * i;
    const double d = interfering_distance(300.0, th, 1000.0);
    CHECK(d >= 700.0 - 1e-9);
    CHECK(d <= 1300.0 + 1e-9);
  }
}

TEST_CASE("downlink interferer distances") {
  for (double d : downlink_interferer_distances(0.0, 0.3, 1000.0)) CHECK(d == doctest::Approx(1000.0));
  const auto a = downlink_interferer_distances(250.0, std::numbers::pi / 6.0, 1000.0);
  CHECK(a[0] == doctest::Approx(750.0).epsilon(1e-13));

  auto base = downlink_interferer_distances(320.0, 0.41, 1000.0);
  auto shifted = downlink_interferer_distances(320.0, 0.41 + std::numbers::pi / 3.0, 1000.0);
  // Shifting by one sector rotates the list by one position.
  for (int l = 0; l < 6; ++l) CHECK(shifted[l] == doctest::Approx(base[(l + 5) % 6]).epsilon(1e-12));
  std::sort(base.begin(), base.end());
  std::sort(shifted.begin(), shifted.end());
  for (int l = 0; l < 6; ++l) CHECK(shifted[l] == doctest::Approx(base[l]).epsilon(1e-12));

  const auto custom = downlink_interferer_distances(0.0, 0.0, {{1000.0, 0.0}, {2000.0, 1.0}});
  CHECK(custom[1] == doctest::Approx(2000.0));
}

TEST_CASE("angular grid") {
  AngularGrid g(720);
  CHECK(g.angle(0) == doctest::Approx(std::numbers::pi / 720.0));
  CHECK(g.angle(719) < 2.0 * std::numbers::pi);
  CHECK(g.probability() * g.count == doctest::Approx(1.0));
  CHECK_THROWS_AS(AngularGrid(0), DomainError);
}
