#pragma once

#include <vector>

namespace icim::numerics {

/// Gauss-Laguerre rule for the weight e^{-x} on [0, inf).
struct LaguerreRule {
  int order = 0;
  std::vector<double> nodes;    // roots of L_order, increasing
  std::vector<double> weights;  // sum to 1

  template <class F>
  auto apply(const F& f) const {
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

inline constexpr int kMaxLaguerreOrder = 128;

/// Cached rule of the given order (1 <= order <= 128). Thread-safe.
const LaguerreRule& gauss_laguerre(int order);

}  // namespace icim::numerics
