#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "icim/error.hpp"
#include "icim/fading.hpp"

using namespace icim;

namespace {

// Independent normalization/transform oracle: Boost's exp-sinh rule on the pdf.
double exp_sinh_integral(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate(f, 1e-12);
}

std::vector<FadingModel> sample_models() {
  return {FadingModel::rayleigh(1.0), FadingModel::rayleigh(2.5), FadingModel::gamma(1.5, 2.0 / 3.0),
          FadingModel::gamma(0.7, 3.0), FadingModel::generalized_k(1.0, 1.0, 1.0),
          FadingModel::generalized_k(2.0, 2.0, 1.0), FadingModel::generalized_k(1.5, 4.0, 2.0)};
}

}  // namespace

TEST_CASE("closed-form values at the origin and means") {
  auto ray = FadingModel::rayleigh(1.0);
  CHECK(ray.pdf(0.0) == 1.0);
  CHECK(ray.cdf(0.0) == 0.0);
  CHECK(eval(ray, DistributionKind::pdf, 0.0) == 1.0);
  CHECK(ray.mean() == 1.0);
  CHECK(FadingModel::rayleigh(4.0).mean() == doctest::Approx(0.25));
  CHECK(FadingModel::gamma(1.5, 2.0 / 3.0).mean() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(FadingModel::generalized_k(2.0, 3.0, 1.7).mean() == 1.7);
  CHECK_THROWS_AS(eval(ray, DistributionKind::cdf, -1.0), DomainError);
  CHECK_THROWS_AS(FadingModel::gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(FadingModel::generalized_k(1.0, -1.0, 1.0), DomainError);
}

TEST_CASE("pdf integrates to one and matches the mean") {
  for (const auto& m : sample_models()) {
    CAPTURE(m.describe());
    const double total = exp_sinh_integral([&](double x) { return m.pdf(x); });
    CHECK(std::abs(total - 1.0) < 1e-8);
    const double mean = exp_sinh_integral([&](double x) { return x * m.pdf(x); });
    CHECK(mean == doctest::Approx(m.mean()).epsilon(1e-7));
    const double second = exp_sinh_integral([&](double x) { return x * x * m.pdf(x); });
    CHECK(second == doctest::Approx(m.second_moment()).epsilon(1e-6));
  }
}

TEST_CASE("GK(1,1,1) reduces to 2 K0(2 sqrt x)") {
  auto gk = FadingModel::generalized_k(1.0, 1.0, 1.0);
  for (double x : {0.01, 0.3, 1.0, 4.0, 25.0}) {
    CAPTURE(x);
    const double ref = 2.0 * boost::math::cyl_bessel_k(0.0, 2.0 * std::sqrt(x));
    CHECK(gk.pdf(x) == doctest::Approx(ref).epsilon(1e-12));
  }
  // cdf(inf) = 1; numerically at a far point.
  CHECK(std::abs(gk.cdf(INFINITY) - 1.0) < 1e-8);
  CHECK(std::abs(gk.cdf(2000.0) - 1.0) < 1e-8);
  // Closed form: F(x) = 1 - 2 sqrt(x) K1(2 sqrt x) for m_c = m_s = 1, Omega = 1.
  for (double x : {0.05, 0.5, 2.0, 10.0}) {
    CAPTURE(x);
    const double ref = 1.0 - 2.0 * std::sqrt(x) * boost::math::cyl_bessel_k(1.0, 2.0 * std::sqrt(x));
    CHECK(gk.cdf(x) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(gk.ccdf(x) == doctest::Approx(1.0 - ref).epsilon(1e-9));
  }
}

TEST_CASE("cdf is nondecreasing and consistent with the pdf") {
  for (const auto& m : sample_models()) {
    CAPTURE(m.describe());
    double prev = 0.0;
    for (int i = 1; i <= 30; ++i) {
      const double x = 0.05 * i * i / 4.0;
      const double f = m.cdf(x);
      CHECK(f >= prev);
      CHECK(f <= 1.0);
      CHECK(f + m.ccdf(x) == doctest::Approx(1.0).epsilon(1e-9));
      prev = f;
    }
    // F(2) - F(1) = int_1^2 pdf
    boost::math::quadrature::exp_sinh<double> unused;
    (void)unused;
    const double inc = icim::numerics::integrate([&](double x) { return m.pdf(x); }, 1.0, 2.0).value;
    CHECK(m.cdf(2.0) - m.cdf(1.0) == doctest::Approx(inc).epsilon(1e-8));
    CHECK(std::exp(m.log_cdf(0.7)) == doctest::Approx(m.cdf(0.7)).epsilon(1e-12));
  }
}

TEST_CASE("log_cdf resolves both tails") {
  auto g = FadingModel::gamma(1.5, 2.0 / 3.0);
  CHECK(std::isfinite(g.log_cdf(1e-30)));
  CHECK(g.log_cdf(1e-30) < -60.0);
  CHECK(g.log_cdf(40.0) < 0.0);
  CHECK(g.log_cdf(40.0) > -1e-20);
  auto r = FadingModel::rayleigh(1.0);
  CHECK(r.log_cdf(30.0) == doctest::Approx(-std::exp(-30.0)).epsilon(1e-10));
}

TEST_CASE("Laplace transform closed forms") {
  auto g = FadingModel::gamma(1.5, 2.0 / 3.0);
  CHECK(g.laplace(0.0) == 1.0);
  CHECK(g.laplace(1.0) == doctest::Approx(std::pow(5.0 / 3.0, -1.5)).epsilon(1e-14));
  CHECK(g.laplace(1.0) == doctest::Approx(0.46476).epsilon(1e-5));
  CHECK(FadingModel::rayleigh(2.0).laplace(3.0) == doctest::Approx(0.4));
  CHECK(g.mgf(0.5) == doctest::Approx(std::pow(1.0 - 1.0 / 3.0, -1.5)));
  CHECK_THROWS_AS(g.laplace(-1.5), DivergenceError);
  CHECK_THROWS_AS(FadingModel::rayleigh(1.0).mgf(1.0), DivergenceError);
  CHECK_THROWS_AS(FadingModel::generalized_k(2.0, 2.0, 1.0).mgf(0.1), DivergenceError);
  try {
    (void)g.laplace(-2.0);
  } catch (const DivergenceError& e) {
    CHECK(e.pole() == doctest::Approx(-1.5));
  }
}

TEST_CASE("closed forms agree with the pdf quadrature, including the continuation") {
  for (const auto& m : {FadingModel::rayleigh(1.3), FadingModel::gamma(1.5, 2.0 / 3.0), FadingModel::gamma(0.6, 2.0)}) {
    CAPTURE(m.describe());
    for (double s : {-0.5 / m.mean(), 0.01, 0.3, 1.0, 7.0, 100.0}) {
      CAPTURE(s);
      CHECK(m.laplace_quadrature(s) == doctest::Approx(m.laplace(s)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Laplace transforms are completely monotone on a grid") {
  for (const auto& m : sample_models()) {
    CAPTURE(m.describe());
    std::vector<double> v;
    for (int i = 0; i <= 20; ++i) v.push_back(m.laplace(0.25 * i));
    CHECK(v[0] == 1.0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] < v[i - 1]);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) CHECK(v[i - 1] + v[i + 1] - 2.0 * v[i] >= -1e-12);
  }
}

TEST_CASE("GK Laplace: quadrature against the Whittaker closed form") {
  auto gk = FadingModel::generalized_k(2.0, 2.0, 1.0);
  CHECK(std::abs(gk.laplace_whittaker(1.0) - gk.laplace(1.0)) < 1e-6);
  for (const auto& m : {FadingModel::generalized_k(2.0, 2.0, 1.0), FadingModel::generalized_k(1.0, 1.0, 1.0),
                        FadingModel::generalized_k(1.5, 4.0, 2.0), FadingModel::generalized_k(3.0, 0.8, 0.5)}) {
    CAPTURE(m.describe());
    for (double s : {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0}) {
      CAPTURE(s);
      const double q = m.laplace(s);
      CHECK(std::abs(m.laplace_whittaker(s) - q) <= 1e-4 * q);
      // The complex-argument mixture representation on the real axis.
      CHECK(m.laplace(std::complex<double>(s, 0.0)).real() == doctest::Approx(q).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(FadingModel::gamma(1.0, 1.0).laplace_whittaker(1.0), DomainError);
}

TEST_CASE("characteristic functions match direct Fourier integrals") {
  for (const auto& m : sample_models()) {
    CAPTURE(m.describe());
    CHECK(std::abs(m.cf(0.0) - 1.0) < 1e-12);
    for (double w : {0.3, 1.0, 4.0}) {
      CAPTURE(w);
      const auto phi = m.cf(w);
      const double re = exp_sinh_integral([&](double x) { return std::cos(w * x) * m.pdf(x); });
      CHECK(phi.real() == doctest::Approx(re).epsilon(1e-6));
      CHECK(std::abs(phi) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("moment matching of GK onto Gamma") {
  auto g = gk_moment_match({1.0, 1.0, 1.0});
  CHECK(g.shape == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(g.scale == doctest::Approx(3.0).epsilon(1e-14));
  auto big = gk_moment_match({1e9, 2.5, 4.0});
  CHECK(big.shape == doctest::Approx(2.5).epsilon(1e-8));
  CHECK(big.scale == doctest::Approx(4.0 / 2.5).epsilon(1e-8));
  for (GeneralizedK k : {GeneralizedK{2.0, 3.0, 1.5}, GeneralizedK{0.7, 5.0, 0.2}}) {
    const auto m = gk_moment_match(k);
    const FadingModel gk(k), gm(m);
    CHECK(gm.mean() == doctest::Approx(gk.mean()).epsilon(1e-12));
    CHECK(gm.second_moment() == doctest::Approx(gk.second_moment()).epsilon(1e-12));
  }
}

TEST_CASE("describe/parse round trip") {
  for (const auto& m : sample_models()) {
    const auto text = m.describe();
    CHECK(FadingModel::parse(text).describe() == text);
  }
  CHECK(FadingModel::parse("gamma:1.5,0.6666666666666666").mean() == doctest::Approx(1.0));
  CHECK_THROWS_AS(FadingModel::parse("lognormal:1"), ConfigError);
  CHECK_THROWS_AS(FadingModel::parse("gamma:1"), ConfigError);
  CHECK_THROWS_AS(FadingModel::parse("gamma:x,1"), ConfigError);
  CHECK_THROWS_AS(FadingModel::parse("rayleigh:-1"), ConfigError);
}
