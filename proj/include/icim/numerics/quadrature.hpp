#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "icim/error.hpp"

namespace icim::numerics {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  // Width ratio between consecutive tail chunks of a semi-infinite integral.
  double truncation_growth = 2.0;
  // Hard cap on the number of tail chunks (growth^max_tail_chunks * scale).
  int max_tail_chunks = 160;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
    if (!(truncation_growth > 1.0)) throw DomainError("truncation_growth must exceed 1");
  }

  double target(double magnitude) const { return std::max(abs_tol, rel_tol * magnitude); }
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// 21-point Kronrod rule with embedded 10-point Gauss rule.
template <class F, class T = std::invoke_result_t<const F&, double>>
Panel<T> kronrod21(const F& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  static const auto& kx = gauss_kronrod<double, 21>::abscissa();
  static const auto& kw = gauss_kronrod<double, 21>::weights();
  static const auto& gw = gauss<double, 10>::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kw[0];
  T gaus{};
  for (std::size_t i = 1; i < kx.size(); ++i) {
    const T s = f(c - h * kx[i]) + f(c + h * kx[i]);
    kron += s * kw[i];
    if (i % 2 == 1) gaus += s * gw[i / 2];
  }
  kron *= h;
  gaus *= h;
  using std::abs;
  return {a, b, kron, abs(kron - gaus)};
}

inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature on [a, b]. Throws AccuracyError
/// (with the best estimate) if the tolerance cannot be met.
template <class F, class T = std::invoke_result_t<const F&, double>>
QuadratureResult<T> integrate(const F& f, double a, double b, const QuadratureConfig& cfg = {}) {
  using std::abs;
  if (a == b) return {};
  if (b < a) {
    auto r = integrate(f, b, a, cfg);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Panel<T>> heap;
  heap.push(detail::kronrod21(f, a, b));
  T total = heap.top().value;
  double err = heap.top().error;
  int evals = 21;
  int panels = 1;
  while (err > cfg.target(abs(total))) {
    if (panels >= cfg.max_subdivisions) {
      throw AccuracyError("adaptive quadrature did not converge", std::real(total), err);
    }
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel at machine resolution; accept what we have.
      break;
    }
    heap.pop();
    auto left = detail::kronrod21(f, worst.a, mid);
    auto right = detail::kronrod21(f, mid, worst.b);
    evals += 42;
    ++panels;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed accumulated cancellation error from the running updates.
  T resum{};
  double reerr = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    reerr += heap.top().error;
    heap.pop();
  }
  if (!detail::finite_value(resum)) {
    throw AccuracyError("integrand produced a non-finite value", 0.0, INFINITY);
  }
  return {resum, reerr, evals};
}

/// Integral over [lower, inf). The first panel is [lower, lower + scale];
/// the tail is covered by chunks whose width grows by truncation_growth, until
/// a decreasing chunk contributes less than the tolerance.
template <class F, class T = std::invoke_result_t<const F&, double>>
QuadratureResult<T> integrate_semi_infinite(const F& f, const QuadratureConfig& cfg = {},
                                            double scale = 1.0, double lower = 0.0) {
  using std::abs;
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("integration scale must be positive");
  QuadratureResult<T> out;
  double a = lower;
  double width = scale;
  double previous = INFINITY;
  int small_run = 0;
  for (int chunk = 0; chunk < cfg.max_tail_chunks; ++chunk) {
    QuadratureConfig local = cfg;
    local.abs_tol = std::max(cfg.abs_tol, 0.1 * cfg.rel_tol * abs(out.value));
    const double b = a + width;
    auto piece = integrate(f, a, b, local);
    out.value += piece.value;
    out.error += piece.error;
    out.evaluations += piece.evaluations;
    const double size = abs(piece.value) + piece.error;
    const bool decreasing = size <= previous;
    if (decreasing && size <= cfg.target(abs(out.value))) {
      if (++small_run >= 2) return out;
    } else {
      small_run = 0;
    }
    previous = size;
    a = b;
    if (chunk > 0) width *= cfg.truncation_growth;
    if (!std::isfinite(a + width)) break;
  }
  if (abs(out.value) == 0.0) return out;
  throw AccuracyError("semi-infinite tail did not decay", std::real(out.value), out.error);
}

}  // namespace icim::numerics
