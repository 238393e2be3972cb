#include "icim/fading.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "icim/error.hpp"
#include "icim/numerics/special.hpp"

namespace icim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using numerics::QuadratureConfig;
using numerics::integrate_semi_infinite;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

QuadratureConfig tight() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-300;
  cfg.rel_tol = 1e-11;
  cfg.max_subdivisions = 4000;
  return cfg;
}

// Integrates h(A) against A ~ Gamma(shape, 1/shape) (unit mean), with the
// substitution v = A^shape that removes the density's endpoint singularity.
template <class H>
auto unit_gamma_expectation(double shape, const H& h) {
  const double log_norm = shape * std::log(shape) - std::lgamma(shape + 1.0);
  const double inv = 1.0 / shape;
  const auto integrand = [&](double v) {
    const double a = std::pow(v, inv);
    return h(a) * std::exp(log_norm - shape * a);
  };
  return integrate_semi_infinite(integrand, tight(), 1.0).value;
}

// Small-argument exponent p of the density, f(x) ~ x^{p-1} near zero.
double origin_exponent(const FadingModel::Params& p) {
  return std::visit(Overloaded{[](const Rayleigh&) { return 1.0; },
                               [](const GammaComposite& g) { return g.shape; },
                               [](const GeneralizedK& k) { return std::min(k.m_c, k.m_s); }},
                    p);
}

}  // namespace

double GeneralizedK::b() const { return 2.0 * std::sqrt(m_c * m_s / omega); }

FadingModel::FadingModel(Params params) : params_(params) {
  std::visit(Overloaded{[](const Rayleigh& r) { require_positive(r.rate, "Rayleigh rate"); },
                        [](const GammaComposite& g) {
                          require_positive(g.shape, "Gamma shape");
                          require_positive(g.scale, "Gamma scale");
                        },
                        [](const GeneralizedK& k) {
                          require_positive(k.m_c, "Generalized-K m_c");
                          require_positive(k.m_s, "Generalized-K m_s");
                          require_positive(k.omega, "Generalized-K Omega");
                        }},
             params_);
}

std::string FadingModel::describe() const {
  return std::visit(Overloaded{[](const Rayleigh& r) { return "rayleigh:" + shortest(r.rate); },
                               [](const GammaComposite& g) {
                                 return "gamma:" + shortest(g.shape) + "," + shortest(g.scale);
                               },
                               [](const GeneralizedK& k) {
                                 return "gk:" + shortest(k.m_c) + "," + shortest(k.m_s) + "," +
                                        shortest(k.omega);
                               }},
                    params_);
}

FadingModel FadingModel::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("fading model needs the form name:p1[,p2,...]: " + text);
  const std::string name = text.substr(0, colon);
  std::vector<double> values;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    while (first < last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ConfigError("bad fading parameter '" + item + "' in " + text);
    values.push_back(v);
  }
  try {
    if (name == "rayleigh" && values.size() == 1) return rayleigh(values[0]);
    if (name == "gamma" && values.size() == 2) return gamma(values[0], values[1]);
    if ((name == "gk" || name == "generalized-k") && values.size() == 3)
      return generalized_k(values[0], values[1], values[2]);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown fading model or wrong parameter count: " + text);
}

double FadingModel::log_pdf(double x) const {
  if (x < 0.0) throw DomainError("fading pdf evaluated at negative power");
  return std::visit(
      Overloaded{[&](const Rayleigh& r) { return std::log(r.rate) - r.rate * x; },
                 [&](const GammaComposite& g) {
                   if (x == 0.0) {
                     if (g.shape < 1.0) return kInf;
                     if (g.shape > 1.0) return -kInf;
                     return -std::log(g.scale);
                   }
                   return (g.shape - 1.0) * std::log(x) - x / g.scale - std::lgamma(g.shape) -
                          g.shape * std::log(g.scale);
                 },
                 [&](const GeneralizedK& k) {
                   const double lo = std::min(k.m_c, k.m_s);
                   if (x == 0.0) {
                     const double nu = std::abs(k.m_s - k.m_c);
                     if (lo < 1.0 || (lo == 1.0 && nu == 0.0)) return kInf;
                     if (lo > 1.0) return -kInf;
                     return 2.0 * std::log(0.5 * k.b()) + std::lgamma(nu) - std::lgamma(k.m_c) -
                            std::lgamma(k.m_s);
                   }
                   const double b = k.b();
                   const double sum = k.m_c + k.m_s;
                   return std::log(2.0) + sum * std::log(0.5 * b) + (0.5 * sum - 1.0) * std::log(x) -
                          std::lgamma(k.m_c) - std::lgamma(k.m_s) +
                          numerics::log_bessel_k(k.m_s - k.m_c, b * std::sqrt(x));
                 }},
      params_);
}

double FadingModel::pdf(double x) const { return std::exp(log_pdf(x)); }

double FadingModel::cdf(double x) const {
  if (x < 0.0) throw DomainError("fading cdf evaluated at negative power");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return std::visit(Overloaded{[&](const Rayleigh& r) { return -std::expm1(-r.rate * x); },
                               [&](const GammaComposite& g) { return boost::math::gamma_p(g.shape, x / g.scale); },
                               [&](const GeneralizedK& k) {
                                 // Condition on the shadowing term: X = Omega * A * B.
                                 return unit_gamma_expectation(k.m_s, [&](double b) {
                                   return boost::math::gamma_p(k.m_c, k.m_c * x / (k.omega * b));
                                 });
                               }},
                    params_);
}

double FadingModel::ccdf(double x) const {
  if (x < 0.0) throw DomainError("fading ccdf evaluated at negative power");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return std::visit(Overloaded{[&](const Rayleigh& r) { return std::exp(-r.rate * x); },
                               [&](const GammaComposite& g) { return boost::math::gamma_q(g.shape, x / g.scale); },
                               [&](const GeneralizedK& k) {
                                 return unit_gamma_expectation(k.m_s, [&](double b) {
                                   return boost::math::gamma_q(k.m_c, k.m_c * x / (k.omega * b));
                                 });
                               }},
                    params_);
}

double FadingModel::log_cdf(double x) const {
  if (x == 0.0) return -kInf;
  if (const auto* r = std::get_if<Rayleigh>(&params_)) {
    const double e = -std::expm1(-r->rate * x);
    return e < 0.5 ? std::log(e) : std::log1p(-std::exp(-r->rate * x));
  }
  const double f = cdf(x);
  if (f < 0.5) return std::log(f);
  return std::log1p(-ccdf(x));
}

double FadingModel::mean() const {
  return std::visit(Overloaded{[](const Rayleigh& r) { return 1.0 / r.rate; },
                               [](const GammaComposite& g) { return g.shape * g.scale; },
                               [](const GeneralizedK& k) { return k.omega; }},
                    params_);
}

double FadingModel::second_moment() const {
  return std::visit(
      Overloaded{[](const Rayleigh& r) { return 2.0 / (r.rate * r.rate); },
                 [](const GammaComposite& g) { return g.shape * (g.shape + 1.0) * g.scale * g.scale; },
                 [](const GeneralizedK& k) { return k.omega * k.omega * (1.0 + 1.0 / k.m_c) * (1.0 + 1.0 / k.m_s); }},
      params_);
}

double FadingModel::laplace_pole() const {
  return std::visit(Overloaded{[](const Rayleigh& r) { return -r.rate; },
                               [](const GammaComposite& g) { return -1.0 / g.scale; },
                               [](const GeneralizedK&) { return 0.0; }},
                    params_);
}

double FadingModel::laplace(double s) const {
  if (s == 0.0) return 1.0;
  const double pole = laplace_pole();
  if (!(s > pole)) throw DivergenceError("Laplace transform diverges at s = " + shortest(s), pole);
  if (const auto* r = std::get_if<Rayleigh>(&params_)) return r->rate / (r->rate + s);
  if (const auto* g = std::get_if<GammaComposite>(&params_)) return std::pow(1.0 + g->scale * s, -g->shape);
  return laplace_quadrature(s);
}

std::complex<double> FadingModel::laplace(std::complex<double> s) const {
  if (s.imag() == 0.0 && !is_generalized_k()) return laplace(s.real());
  if (s.real() < 0.0 && s.imag() != 0.0 && !(s.real() > laplace_pole()))
    throw DivergenceError("Laplace transform diverges", laplace_pole());
  return std::visit(
      Overloaded{[&](const Rayleigh& r) { return r.rate / (r.rate + s); },
                 [&](const GammaComposite& g) { return std::pow(1.0 + g.scale * s, -g.shape); },
                 [&](const GeneralizedK& k) {
                   if (s.real() < 0.0) throw DivergenceError("Generalized-K transform needs Re(s) >= 0", 0.0);
                   if (s == 0.0) return std::complex<double>(1.0, 0.0);
                   // Gamma Laplace transform of the shadowing part, averaged over the fading part.
                   const std::complex<double> c = s * k.omega / k.m_s;
                   return unit_gamma_expectation(k.m_c, [&](double a) { return std::pow(1.0 + c * a, -k.m_s); });
                 }},
      params_);
}

double FadingModel::laplace_quadrature(double s) const {
  const double pole = laplace_pole();
  if (s != 0.0 && !(s > pole)) throw DivergenceError("Laplace transform diverges at s = " + shortest(s), pole);
  const double p = origin_exponent(params_);
  const double inv_p = 1.0 / p;
  // x = v^{1/p} flattens the x^{p-1} behaviour of the density at the origin.
  const auto integrand = [&](double v) {
    if (v == 0.0) return 0.0;
    const double x = std::pow(v, inv_p);
    return std::exp(-s * x + log_pdf(x) + (1.0 - p) * std::log(x)) * inv_p;
  };
  // Mean of the exponentially tilted density, exact for Rayleigh and Gamma.
  const double m = mean();
  const double tilt = m / (1.0 + s * m / p);
  const double x_scale = std::max(tilt, 1e-300);
  return integrate_semi_infinite(integrand, tight(), std::pow(x_scale, p)).value;
}

double FadingModel::laplace_whittaker(double s) const {
  const auto* k = std::get_if<GeneralizedK>(&params_);
  if (k == nullptr) throw DomainError("Whittaker closed form applies to Generalized-K only");
  if (s == 0.0) return 1.0;
  if (s < 0.0) throw DivergenceError("Generalized-K transform needs s >= 0", 0.0);
  const double z = k->b() * k->b() / (4.0 * s);
  const double kappa = 0.5 * (1.0 - k->m_c - k->m_s);
  const double mu = 0.5 * (k->m_c - k->m_s);
  return std::exp(0.5 * (k->m_c + k->m_s - 1.0) * std::log(z) + 0.5 * z + numerics::log_whittaker_w(kappa, mu, z));
}

double eval(const FadingModel& model, DistributionKind kind, double x) {
  if (x < 0.0 || std::isnan(x)) throw DomainError("fading distribution evaluated at negative power");
  return kind == DistributionKind::pdf ? model.pdf(x) : model.cdf(x);
}

GammaComposite gk_moment_match(const GeneralizedK& gk) {
  const double excess = (1.0 + 1.0 / gk.m_c) * (1.0 + 1.0 / gk.m_s) - 1.0;
  const double shape = 1.0 / excess;
  return {shape, gk.omega / shape};
}

}  // namespace icim
