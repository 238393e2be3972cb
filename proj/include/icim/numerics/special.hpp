#pragma once

namespace icim::numerics {

/// log K_nu(z) for z > 0. Switches to the large-argument expansion where
/// K_nu underflows.
double log_bessel_k(double nu, double z);

/// Tricomi confluent hypergeometric U(a, b, z) for a > 0, z > 0, from
///   U = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt.
double hypergeometric_u(double a, double b, double z);

/// log of the Whittaker function W_{kappa,mu}(z), z > 0, mu - kappa + 1/2 > 0,
/// via W = e^{-z/2} z^{mu+1/2} U(mu - kappa + 1/2, 1 + 2 mu, z).
double log_whittaker_w(double kappa, double mu, double z);

double whittaker_w(double kappa, double mu, double z);

}  // namespace icim::numerics
