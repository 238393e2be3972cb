#include "icim/numerics/special.hpp"

#include <cmath>
#include <numbers>

#include "icim/error.hpp"
#include "icim/numerics/quadrature.hpp"

namespace icim::numerics {

double log_bessel_k(double nu, double z) {
  if (!(z > 0.0)) throw DomainError("log_bessel_k needs z > 0");
  nu = std::abs(nu);
  if (z < 600.0) {
    const double k = std::cyl_bessel_k(nu, z);
    if (k > 0.0 && std::isfinite(k)) return std::log(k);
  }
  // K_nu(z) ~ sqrt(pi / 2z) e^{-z} (1 + (4nu^2-1)/(8z) + (4nu^2-1)(4nu^2-9)/(2!(8z)^2) + ...)
  const double m = 4.0 * nu * nu;
  double term = 1.0;
  double series = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= (m - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * z);
    series += term;
    if (std::abs(term) < 1e-17) break;
  }
  return 0.5 * std::log(std::numbers::pi / (2.0 * z)) - z + std::log(series);
}

double hypergeometric_u(double a, double b, double z) {
  if (!(a > 0.0) || !(z > 0.0)) throw DomainError("hypergeometric_u needs a > 0 and z > 0");
  // t = v^{1/a} removes the t^{a-1} endpoint singularity: t^{a-1} dt = dv / a.
  const double inv_a = 1.0 / a;
  const double c = b - a - 1.0;
  const auto integrand = [&](double v) {
    if (v == 0.0) return 1.0;
    const double t = std::pow(v, inv_a);
    return std::exp(-z * t + c * std::log1p(t));
  };
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-300;
  cfg.rel_tol = 1e-12;
  const double scale = std::pow(std::max(z, 1e-300), -a);
  const double integral = integrate_semi_infinite(integrand, cfg, std::min(scale, 1e300)).value;
  return integral / std::tgamma(a + 1.0);
}

double log_whittaker_w(double kappa, double mu, double z) {
  const double a = mu - kappa + 0.5;
  return -0.5 * z + (mu + 0.5) * std::log(z) + std::log(hypergeometric_u(a, 1.0 + 2.0 * mu, z));
}

double whittaker_w(double kappa, double mu, double z) { return std::exp(log_whittaker_w(kappa, mu, z)); }

}  // namespace icim::numerics
