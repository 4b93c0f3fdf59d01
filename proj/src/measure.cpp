#include "cpmu/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cpmu {

HaarSystem counting_haar(const FiniteGroupoid& g) {
  return HaarSystem{std::vector<double>(static_cast<std::size_t>(g.size()), 1.0)};
}

InvarianceCheck check_left_invariance(const FiniteGroupoid& g, const HaarSystem& haar,
                                      double tol) {
  InvarianceCheck out;
  if (static_cast<int>(haar.weights.size()) != g.size()) {
    out.residual = 1.0;
    out.violations.push_back("Haar system has wrong length");
    return out;
  }
  const int n = g.size();
  for (int x = 0; x < n; ++x) {
    const int r = g.range[static_cast<std::size_t>(x)], s = g.source[static_cast<std::size_t>(x)];
    for (int z = 0; z < n; ++z) {
      if (g.range[static_cast<std::size_t>(z)] != r) continue;
      // f = delta_z: left side sums lambda(y) over y in G^{s(x)} with xy = z.
      double lhs = 0.0;
      for (int y = 0; y < n; ++y)
        if (g.range[static_cast<std::size_t>(y)] == s && g.mul(x, y) == z)
          lhs += haar.weights[static_cast<std::size_t>(y)];
      double rhs = haar.weights[static_cast<std::size_t>(z)];
      double d = std::abs(lhs - rhs);
      out.residual = std::max(out.residual, d);
      if (d > tol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " (defect %.3g)", d);
        out.violations.push_back("left invariance fails at x=" + g.arrows[static_cast<std::size_t>(x)] +
                                 ", f=delta_" + g.arrows[static_cast<std::size_t>(z)] + buf);
      }
    }
  }
  out.ok = out.violations.empty();
  return out;
}

double GroupoidMeasure::mu_of_arrow_unit(const FiniteGroupoid& g, int unit_arrow) const {
  return unit_weights[static_cast<std::size_t>(g.unit_position(unit_arrow))];
}

GroupoidMeasure build_measure(const FiniteGroupoid& g, const HaarSystem& haar,
                              const std::vector<double>& unit_weights) {
  if (static_cast<int>(unit_weights.size()) != g.unit_count())
    throw std::invalid_argument("build_measure: need one weight per unit");
  if (static_cast<int>(haar.weights.size()) != g.size())
    throw std::invalid_argument("build_measure: Haar system has wrong length");
  for (double w : unit_weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("build_measure: unit measure must be strictly positive");
  for (double w : haar.weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("build_measure: Haar weights must be strictly positive");
  GroupoidMeasure m;
  m.unit_weights = unit_weights;
  m.haar = haar.weights;
  const auto n = static_cast<std::size_t>(g.size());
  m.nu.resize(n);
  m.nu_inv.resize(n);
  m.modular.resize(n);
  for (std::size_t x = 0; x < n; ++x)
    m.nu[x] = m.mu_of_arrow_unit(g, g.range[x]) * m.haar[x];
  for (std::size_t x = 0; x < n; ++x) {
    m.nu_inv[x] = m.nu[static_cast<std::size_t>(g.inverse[x])];
    m.modular[x] = m.nu[x] / m.nu_inv[x];
  }
  return m;
}

double check_cocycle(const FiniteGroupoid& g, const GroupoidMeasure& m) {
  double worst = 0.0;
  for (auto [x, y] : composable_pairs(g, PairMode::SourceRange)) {
    int xy = g.mul(x, y);
    double d = std::abs(m.modular[static_cast<std::size_t>(xy)] -
                        m.modular[static_cast<std::size_t>(x)] * m.modular[static_cast<std::size_t>(y)]);
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace cpmu
