#pragma once

#include <complex>
#include <functional>

#include "icim/numerics/quadrature.hpp"

namespace icim::numerics {

using CharacteristicFunction = std::function<std::complex<double>(double)>;

struct InversionConfig {
  QuadratureConfig quad{1e-12, 1e-9, 4000, 2.0, 160};
  // Characteristic spread of the variable; sets the frequency unit 1/scale.
  double scale = 1.0;
  // Frequencies beyond max_frequency / scale are never visited.
  double max_frequency = 1e5;
  // Target absolute error on the probability.
  double tolerance = 1e-8;
  // Estimated error above which the inversion is reported as failed.
  double failure_threshold = 1e-3;
};

struct InversionResult {
  double probability = 0.0;
  double error = 0.0;
};

/// Gil-Pelaez inversion:
///   F(x) = 1/2 - (1/pi) int_0^inf Im(e^{-i w x} cf(w)) / w dw,
/// integrated chunk by chunk until the characteristic function has decayed.
/// The result is clamped to [0, 1]. Throws AccuracyError when the truncation
/// error estimate exceeds cfg.failure_threshold.
InversionResult cdf_from_transform(const CharacteristicFunction& cf, double x,
                                   const InversionConfig& cfg = {});

}  // namespace icim::numerics
