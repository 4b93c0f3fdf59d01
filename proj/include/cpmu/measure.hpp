#pragma once

#include "cpmu/groupoid.hpp"

#include <string>
#include <vector>

namespace cpmu {

/// Left Haar system, stored per arrow as the mass lambda^{r(x)}({x}).
struct HaarSystem {
  std::vector<double> weights;
};

HaarSystem counting_haar(const FiniteGroupoid& g);

struct InvarianceCheck {
  bool ok = false;
  double residual = 0.0;
  std::vector<std::string> violations;
};

/// Compares sum_{y in G^{s(x)}} f(xy) lambda(y) with sum_{z in G^{r(x)}} f(z) lambda(z)
/// for every arrow x and every delta function f.
InvarianceCheck check_left_invariance(const FiniteGroupoid& g, const HaarSystem& haar,
                                      double tol = 1e-9);

/// Measure data derived from a Haar system and a unit measure.
struct GroupoidMeasure {
  /// Indexed by unit position (order of FiniteGroupoid::units).
  std::vector<double> unit_weights;
  std::vector<double> haar;
  /// nu({x}) = mu(r(x)) lambda(x)
  std::vector<double> nu;
  /// nu^{-1}({x}) = nu({x^{-1}})
  std::vector<double> nu_inv;
  /// Radon-Nikodym derivative nu / nu^{-1}.
  std::vector<double> modular;

  double mu_of_arrow_unit(const FiniteGroupoid& g, int unit_arrow) const;
};

/// Throws std::invalid_argument on non-positive weights or length mismatch.
GroupoidMeasure build_measure(const FiniteGroupoid& g, const HaarSystem& haar,
                              const std::vector<double>& unit_weights);

/// max |D(xy) - D(x) D(y)| over composable pairs.
double check_cocycle(const FiniteGroupoid& g, const GroupoidMeasure& m);

}  // namespace cpmu
