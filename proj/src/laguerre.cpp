#include "icim/numerics/laguerre.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "icim/error.hpp"

namespace icim::numerics {
namespace {

// L_n(x) and L_{n-1}(x) by the three-term recurrence.
std::pair<double, double> laguerre_pair(int n, double x) {
  double prev = 1.0;
  double cur = 1.0 - x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

LaguerreRule build_rule(int n) {
  // Golub-Welsch for starting values: Jacobi matrix of the Laguerre weight.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < n; ++i) off(i) = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd guess = solver.eigenvalues();

  LaguerreRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = guess(i);
    // Newton polish: L_n'(x) = n (L_n(x) - L_{n-1}(x)) / x.
    for (int it = 0; it < 8; ++it) {
      const auto [ln, lm] = laguerre_pair(n, x);
      const double d = n * (ln - lm) / x;
      const double step = ln / d;
      x -= step;
      if (std::abs(step) <= 1e-16 * x) break;
    }
    const auto [ln1, ln] = laguerre_pair(n + 1, x);
    (void)ln;
    rule.nodes[i] = x;
    rule.weights[i] = x / ((n + 1.0) * (n + 1.0) * ln1 * ln1);
  }
  return rule;
}

}  // namespace

const LaguerreRule& gauss_laguerre(int order) {
  if (order < 1 || order > kMaxLaguerreOrder)
    throw DomainError("Gauss-Laguerre order must be in [1, 128]");
  static std::array<std::once_flag, kMaxLaguerreOrder + 1> flags;
  static std::array<std::unique_ptr<LaguerreRule>, kMaxLaguerreOrder + 1> table;
  std::call_once(flags[order], [order] { table[order] = std::make_unique<LaguerreRule>(build_rule(order)); });
  return *table[order];
}

}  // namespace icim::numerics
