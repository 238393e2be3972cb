#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "icim/error.hpp"
#include "icim/interference.hpp"

using namespace icim;

namespace {

const RingPartition& default_partition() {
  static const auto p = build_ring_partition(500.0, 2.0, 2.6, 100.0).with_users(50);
  return p;
}

LinkBudget part1_budget() { return LinkBudget::from_db(60.0, -174.0, 15000.0, 1.0, -23.0, false); }

const LocationPmf& greedy_pmf() {
  static const auto pmf =
      location_pmf({SchedulerKind::greedy}, default_partition(), FadingModel::gamma(1.5, 2.0 / 3.0));
  return pmf;
}

SingleCellIci default_single(const FadingModel& chi, double bin_width = 50.0) {
  const auto layout = CellLayout::make(500.0);
  const auto joint = joint_location_angle_pmf(greedy_pmf(), AngularGrid(720));
  const auto d = interferer_distance_pmf(joint, default_partition(), layout, bin_width);
  return SingleCellIci::uplink(d, default_partition(), chi, part1_budget());
}

}  // namespace

TEST_CASE("link budget conversions") {
  CHECK(dbm_to_watt(-23.0) == doctest::Approx(5.011872336e-6).epsilon(1e-9));
  const auto b = part1_budget();
  // 1e-6 / (10^{-17.4} mW * 15 kHz)
  CHECK(b.kbar() == doctest::Approx(1e-6 / (std::pow(10.0, -17.4) * 1e-3 * 15000.0)).epsilon(1e-12));
  LinkBudget pc{1.0, 1.0, dbm_to_watt(-23.0), true};
  const double rt = pc.power().threshold(2.2);
  CHECK(pc.transmit_power(rt, 2.2) == doctest::Approx(pc.p_max_w).epsilon(1e-12));
  CHECK(pc.p0_w * std::pow(rt, 2.2) == doctest::Approx(pc.p_max_w).epsilon(1e-12));
  CHECK(pc.transmit_power(rt * 1.5, 2.2) == pc.p_max_w);
}

TEST_CASE("interferer distance PMF binning") {
  const auto layout = CellLayout::make(500.0);
  const auto joint = joint_location_angle_pmf(greedy_pmf(), AngularGrid(720));
  const auto d = interferer_distance_pmf(joint, default_partition(), layout, 50.0);
  CHECK(d.bin_count() == 20);
  CHECK(std::abs(d.sum() - greedy_pmf().sum()) < 1e-12);
  CHECK(d.centers.front() == doctest::Approx(525.0));
  CHECK(d.centers.back() == doctest::Approx(1475.0));

  // Cell-center interferer: everything in the bin holding D.
  auto tiny = RingPartition::from_radii({0.0, 1e-3}, 2.6);
  tiny.users = {5};
  LocationPmf point{SchedulerKind::round_robin, 1, {1.0}, 0.0};
  // 40 m bins put D = 1000 m in the middle of bin 12.
  const auto dc = interferer_distance_pmf(joint_location_angle_pmf(point, AngularGrid(720)), tiny, layout, 40.0);
  CHECK(std::abs(dc.sum() - 1.0) < 1e-9);
  CHECK(dc.probs[dc.bin_index(1000.0)] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single-bin Rayleigh interference is exponential") {
  const double kbar = part1_budget().kbar(), D = 1000.0, beta = 2.6;
  SingleCellIci x({{1.0, kbar * std::pow(D, -beta)}}, FadingModel::rayleigh(1.0));
  CHECK(x.pdf(0.0) == doctest::Approx(std::pow(D, beta) / kbar).epsilon(1e-12));
  const double scale = kbar * std::pow(D, -beta);
  CHECK(x.cdf(scale) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(x.pdf(-1.0), DomainError);
}

TEST_CASE("single-cell interference density normalizes") {
  for (const auto& chi : {FadingModel::rayleigh(1.0), FadingModel::gamma(1.5, 2.0 / 3.0)}) {
    const auto x = default_single(chi);
    boost::math::quadrature::exp_sinh<double> rule;
    const double m = x.mean();
    const double total = rule.integrate([&](double v) { return m * x.pdf(m * v); }, 1e-12);
    CHECK(std::abs(total - greedy_pmf().sum()) < 1e-6);
  }
}

TEST_CASE("uplink MGF closed forms agree with quadrature") {
  SUBCASE("Rayleigh") {
    const auto x = default_single(FadingModel::rayleigh(1.0));
    for (double t : {-10.0, -3.0, -1.0, -0.1, -0.01, -1e-3}) {
      CAPTURE(t);
      CHECK(std::abs(x.mgf(t) / x.mgf_quadrature(t) - 1.0) <= 1e-8);
    }
  }
  SUBCASE("Gamma, including positive t") {
    const auto x = default_single(FadingModel::gamma(1.5, 2.0 / 3.0));
    const double lim = x.convergence_limit();
    CHECK(lim > 0.0);
    for (double t : {-10.0, -1.0, -0.05, 0.3 * lim, 0.9 * lim}) {
      CAPTURE(t);
      CHECK(std::abs(x.mgf(t) / x.mgf_quadrature(t) - 1.0) <= 1e-8);
    }
    CHECK_THROWS_AS(x.mgf(1.01 * lim), DivergenceError);
  }
  SUBCASE("Generalized-K") {
    const auto x = default_single(FadingModel::generalized_k(2.0, 2.0, 1.0));
    CHECK(x.convergence_limit() == 0.0);
    for (double t : {-10.0, -1.0, -0.05}) {
      CAPTURE(t);
      CHECK(std::abs(x.mgf_whittaker(t) / x.mgf(t) - 1.0) <= 1e-4);
    }
  }
}

TEST_CASE("cumulative uplink MGF") {
  const auto x = default_single(FadingModel::gamma(1.5, 2.0 / 3.0));
  const auto y3 = CumulativeIci::uplink(x, 3);
  const auto y6 = CumulativeIci::uplink(x, 6);
  CHECK(y6.mgf(0.0) == 1.0);
  for (double t : {-2.0, -0.3, -0.01}) {
    CHECK(y6.mgf(t) == doctest::Approx(y3.mgf(t) * y3.mgf(t)).epsilon(1e-13));
    CHECK(y6.mgf(t) == doctest::Approx(std::pow(x.mgf(t), 6)).epsilon(1e-13));
  }
  CHECK(y6.mean() == doctest::Approx(6.0 * x.mean()));
  // log-convexity of M_X on a grid
  double prev2 = std::log(x.mgf(-0.2)), prev1 = std::log(x.mgf(-0.196));
  for (int i = 2; i <= 49; ++i) {
    const double cur = std::log(x.mgf(-0.2 + 0.004 * i));
    CHECK(prev2 + cur - 2.0 * prev1 >= -1e-12);
    prev2 = prev1;
    prev1 = cur;
  }
  const auto none = CumulativeIci::uplink(x, 0);
  CHECK(none.mgf(-1.0) == 1.0);
  CHECK(none.cdf(0.0).probability == 1.0);
}

TEST_CASE("halving the bin width barely moves the MGF") {
  const auto a = default_single(FadingModel::gamma(1.5, 2.0 / 3.0), 50.0);
  const auto b = default_single(FadingModel::gamma(1.5, 2.0 / 3.0), 25.0);
  const double t = -1.0 / a.mean();
  CHECK(std::abs(a.mgf(t) - b.mgf(t)) < 1e-3);
}

TEST_CASE("power control uses per-ring transmit powers") {
  const auto p = build_ring_partition(500.0, 2.0, 2.2, 100.0).with_users(50);
  const auto chi = FadingModel::gamma(1.5, 2.0 / 3.0);
  LinkBudget budget{1.0, 1.0, dbm_to_watt(-23.0), true};
  const auto pmf = location_pmf({SchedulerKind::greedy_pc, 1, budget.power()}, p, FadingModel::gamma(1.0, 1.0));
  const auto joint = joint_location_angle_pmf(pmf, AngularGrid(720));
  const auto d = interferer_distance_pmf(joint, p, CellLayout::make(500.0), 50.0);
  const auto pc = SingleCellIci::uplink(d, p, chi, budget);
  auto full = budget;
  full.power_control = false;
  const auto nopc = SingleCellIci::uplink(d, p, chi, full);
  CHECK(pc.components().size() > nopc.components().size());
  CHECK(pc.mean() < nopc.mean());
  for (double x : {1e-9, 1e-8, 1e-7}) CHECK(pc.cdf(x) >= nopc.cdf(x));
}

TEST_CASE("downlink MGF") {
  const auto layout = CellLayout::make(500.0);
  const auto chi = FadingModel::gamma(1.5, 2.0 / 3.0);
  const auto budget = part1_budget();
  SUBCASE("receiver at the cell center") {
    auto tiny = RingPartition::from_radii({0.0, 1e-9}, 2.6);
    tiny.users = {1};
    LocationPmf point{SchedulerKind::round_robin, 1, {1.0}, 0.0};
    const auto y = CumulativeIci::downlink(joint_location_angle_pmf(point, AngularGrid(720)), tiny, layout, chi, budget);
    for (double t : {-1.0, -0.01, 0.0}) {
      const double expected = std::pow(chi.mgf(budget.kbar() * std::pow(1000.0, -2.6) * t), 6);
      CHECK(y.mgf(t) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("two rings, four angles, against a simulation") {
    auto p = RingPartition::from_radii({0.0, 250.0, 500.0}, 2.6);
    p.users = {5, 5};
    LocationPmf pmf{SchedulerKind::greedy, 1, {0.7, 0.3}, 0.0};
    const AngularGrid grid(4);
    const auto y = CumulativeIci::downlink(joint_location_angle_pmf(pmf, grid), p, layout, chi, budget);
    CHECK(y.mgf(0.0) == 1.0);
    const double t = -1.0 / y.mean();
    std::mt19937_64 rng(99);
    std::gamma_distribution<double> g(1.5, 2.0 / 3.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> angle(0, 3);
    const int n = 1000000;
    double acc = 0.0;
    for (int s = 0; s < n; ++s) {
      const double r = u(rng) < 0.7 ? 250.0 : 500.0;
      const double th = grid.angle(angle(rng));
      double total = 0.0;
      for (int l = 0; l < 6; ++l) {
        const double phi = l * M_PI / 3.0 + M_PI / 6.0 - th;
        const double d = std::sqrt(1e6 + r * r - 2.0 * r * 1000.0 * std::cos(phi));
        total += budget.kbar() * std::pow(d, -2.6) * g(rng);
      }
      acc += std::exp(t * total);
    }
    CHECK(std::abs(acc / n / y.mgf(t) - 1.0) < 0.01);
  }
  SUBCASE("power control is rejected") {
    auto b = budget;
    b.power_control = true;
    b.p0_w = 1e-6;
    const auto joint = joint_location_angle_pmf(greedy_pmf(), AngularGrid(720));
    CHECK_THROWS_AS(CumulativeIci::downlink(joint, default_partition(), layout, chi, b), DomainError);
  }
}

TEST_CASE("cumulative interference CDF grows with L") {
  const auto x = default_single(FadingModel::gamma(1.5, 2.0 / 3.0));
  const auto y1 = CumulativeIci::uplink(x, 1);
  const auto y6 = CumulativeIci::uplink(x, 6);
  for (double f : {0.5, 1.0, 3.0}) {
    const double v = f * y1.mean();
    CHECK(y1.cdf(v).probability >= y6.cdf(v).probability);
  }
  // Inversion against the direct mixture cdf for L = 1.
  for (double f : {0.2, 1.0, 4.0}) {
    const double v = f * y1.mean();
    CHECK(std::abs(y1.cdf(v).probability - x.cdf(v)) < 1e-4);
  }
}
