#pragma once

#include "cpmu/groupoid.hpp"
#include "cpmu/measure.hpp"

#include <string>
#include <vector>

namespace cpmu {

/// A groupoid with its Haar system and unit measure.
struct GroupoidInstance {
  std::string name;
  FiniteGroupoid groupoid;
  HaarSystem haar;
  std::vector<double> unit_weights;
};

/// Built-in instances: z2, z3, z4, s3, pair2, pair3, bundle_z2_z3 and
/// action_z2_swap, each with the uniform unit measure, plus a "-nu" variant
/// with mu_k proportional to k + 1 (mu = 2 for a single unit).
std::vector<std::string> corpus_names();
/// Throws std::invalid_argument for unknown names.
GroupoidInstance corpus_instance(const std::string& name);

}  // namespace cpmu
