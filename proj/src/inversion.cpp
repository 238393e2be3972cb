#include "icim/numerics/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace icim::numerics {

InversionResult cdf_from_transform(const CharacteristicFunction& cf, double x,
                                   const InversionConfig& cfg) {
  if (!(cfg.scale > 0.0)) throw DomainError("inversion scale must be positive");
  const double unit = 1.0 / cfg.scale;
  const double spread = std::max(std::abs(x), cfg.scale);
  // Oscillation period of e^{-iwx} at the evaluation point; chunks are capped
  // at a fixed number of periods so each adaptive pass stays cheap.
  const double max_chunk = 32.0 * 2.0 * std::numbers::pi / spread;
  const double limit = cfg.max_frequency * unit;

  const auto integrand = [&](double w) {
    const std::complex<double> phase(std::cos(w * x), -std::sin(w * x));
    return (phase * cf(w)).imag() / w;
  };

  QuadratureConfig quad = cfg.quad;
  double total = 0.0;
  double quad_error = 0.0;
  double a = 0.0;
  double width = unit;
  double tail = INFINITY;
  int settled = 0;
  while (a < limit) {
    const double b = std::min(a + width, limit);
    quad.abs_tol = std::max(cfg.quad.abs_tol, 0.05 * cfg.tolerance);
    const auto piece = integrate(integrand, a, b, quad);
    total += piece.value;
    quad_error += piece.error;
    const double mag = std::max(std::abs(cf(b)), std::abs(cf(0.5 * (a + b))));
    tail = mag / (std::numbers::pi * b * spread);
    const double chunk_size = std::abs(piece.value) / std::numbers::pi;
    if (tail < cfg.tolerance && chunk_size < cfg.tolerance) {
      if (++settled >= 2) break;
    } else {
      settled = 0;
    }
    a = b;
    width = std::min(2.0 * width, max_chunk);
  }
  const double error = tail + quad_error / std::numbers::pi;
  const double value = std::clamp(0.5 - total / std::numbers::pi, 0.0, 1.0);
  if (error > cfg.failure_threshold) {
    throw AccuracyError("characteristic-function inversion did not converge", value, error);
  }
  return {value, error};
}

}  // namespace icim::numerics
