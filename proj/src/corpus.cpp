#include "cpmu/corpus.hpp"

#include <stdexcept>

namespace cpmu {

namespace {

const std::vector<std::string>& base_names() {
  static const std::vector<std::string> names{"z2",    "z3",    "z4",           "s3",
                                              "pair2", "pair3", "bundle_z2_z3", "action_z2_swap"};
  return names;
}

FiniteGroupoid make(const std::string& base) {
  if (base == "z2") return group_as_groupoid(cyclic_group(2));
  if (base == "z3") return group_as_groupoid(cyclic_group(3));
  if (base == "z4") return group_as_groupoid(cyclic_group(4));
  if (base == "s3") return group_as_groupoid(symmetric_group_3());
  if (base == "pair2") return pair_groupoid(2);
  if (base == "pair3") return pair_groupoid(3);
  if (base == "bundle_z2_z3") return group_bundle({cyclic_group(2), cyclic_group(3)});
  if (base == "action_z2_swap") return action_groupoid(cyclic_group(2), {"a", "b"}, {{0, 1}, {1, 0}});
  throw std::invalid_argument("unknown instance: " + base);
}

}  // namespace

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& n : base_names()) {
    out.push_back(n);
    out.push_back(n + "-nu");
  }
  return out;
}

GroupoidInstance corpus_instance(const std::string& name) {
  const bool skewed = name.size() > 3 && name.ends_with("-nu");
  const std::string base = skewed ? name.substr(0, name.size() - 3) : name;
  GroupoidInstance inst{name, make(base), {}, {}};
  inst.haar = counting_haar(inst.groupoid);
  const int n = inst.groupoid.unit_count();
  if (!skewed) {
    inst.unit_weights.assign(static_cast<std::size_t>(n), 1.0 / n);
  } else if (n == 1) {
    inst.unit_weights = {2.0};
  } else {
    const double total = n * (n + 1) / 2.0;
    for (int k = 0; k < n; ++k) inst.unit_weights.push_back((k + 1) / total);
  }
  return inst;
}

}  // namespace cpmu
