#pragma once

#include <complex>
#include <string>
#include <variant>

#include "icim/numerics/quadrature.hpp"

namespace icim {

/// Exponential power gain (Rayleigh amplitude) with rate lambda.
struct Rayleigh {
  double rate = 1.0;
};

/// Gamma power gain: shape m_s, scale m_c (mean m_s * m_c).
struct GammaComposite {
  double shape = 1.0;
  double scale = 1.0;
};

/// Generalized-K (Gamma-Gamma) power gain: fading shape m_c, shadowing
/// shape m_s, mean power Omega.
struct GeneralizedK {
  double m_c = 1.0;
  double m_s = 1.0;
  double omega = 1.0;

  double b() const;
};

enum class DistributionKind { pdf, cdf };

class FadingModel {
 public:
  using Params = std::variant<Rayleigh, GammaComposite, GeneralizedK>;

  explicit FadingModel(Params params);

  static FadingModel rayleigh(double rate) { return FadingModel(Rayleigh{rate}); }
  static FadingModel gamma(double shape, double scale) { return FadingModel(GammaComposite{shape, scale}); }
  static FadingModel generalized_k(double m_c, double m_s, double omega) {
    return FadingModel(GeneralizedK{m_c, m_s, omega});
  }

  const Params& params() const { return params_; }
  bool is_generalized_k() const { return std::holds_alternative<GeneralizedK>(params_); }

  /// Canonical text form, e.g. "gamma:1.5,0.666667". Parsed back by parse().
  std::string describe() const;
  static FadingModel parse(const std::string& text);

  double pdf(double x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  /// log F(x), accurate both where F is tiny and where F is close to one.
  double log_cdf(double x) const;
  double log_pdf(double x) const;

  double mean() const;
  double second_moment() const;

  /// Laplace transform E[e^{-sX}]. For Generalized-K this is the pdf quadrature.
  double laplace(double s) const;
  /// Laplace transform at complex s with Re(s) >= 0.
  std::complex<double> laplace(std::complex<double> s) const;
  /// E[e^{tX}] = laplace(-t).
  double mgf(double t) const { return laplace(-t); }
  /// E[e^{iwX}].
  std::complex<double> cf(double w) const { return laplace(std::complex<double>(0.0, -w)); }

  /// The transform exists for s > laplace_pole(): -lambda, -1/m_c, or 0 for
  /// Generalized-K (its tail is heavier than any exponential).
  double laplace_pole() const;

  /// Generic route: adaptive quadrature of int e^{-sx} f(x) dx.
  double laplace_quadrature(double s) const;
  /// Generalized-K only: the Whittaker-function closed form.
  double laplace_whittaker(double s) const;

 private:
  Params params_;
};

double eval(const FadingModel& model, DistributionKind kind, double x);

/// Two-moment Gamma approximation of a Generalized-K variable.
GammaComposite gk_moment_match(const GeneralizedK& gk);

}  // namespace icim
