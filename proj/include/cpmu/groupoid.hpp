#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cpmu {

/// Finite groupoid on dense arrow indices.  Units are arrows; range and
/// source map every arrow to the index of a unit arrow.
struct FiniteGroupoid {
  std::vector<std::string> arrows;
  std::vector<int> units;
  std::vector<int> range;
  std::vector<int> source;
  std::vector<int> inverse;
  /// Row-major n x n table, -1 where source(x) != range(y).
  std::vector<int> compose;

  int size() const { return static_cast<int>(arrows.size()); }
  int unit_count() const { return static_cast<int>(units.size()); }
  int mul(int x, int y) const { return compose[static_cast<std::size_t>(x * size() + y)]; }
  /// Position of a unit arrow inside `units`, or -1.
  int unit_position(int arrow) const;
  int find(const std::string& label) const;
  bool is_unit(int arrow) const { return unit_position(arrow) >= 0; }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const FiniteGroupoid& g);

enum class PairMode { SourceRange, RangeRange };

/// (x, y) with s(x) = r(y) (SourceRange) or r(x) = r(y) (RangeRange),
/// in lexicographic order of arrow indices.
std::vector<std::pair<int, int>> composable_pairs(const FiniteGroupoid& g, PairMode mode);
/// Triples (x, y, z) with s(x) = r(y) and s(y) = r(z).
std::vector<std::vector<int>> composable_triples(const FiniteGroupoid& g);

/// Multiplication table of a finite group: table[a][b] = index of a*b.
struct GroupTable {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;
};

/// Checks closure, identity, inverses and associativity.
ValidationReport validate_group(const GroupTable& t);
GroupTable cyclic_group(int n);
GroupTable symmetric_group_3();

/// Arrows (i,j) for 0 <= i,j < n; r(i,j) = (i,i), s(i,j) = (j,j), (i,j)(j,k) = (i,k).
FiniteGroupoid pair_groupoid(int n);
FiniteGroupoid group_as_groupoid(const GroupTable& t);
/// Disjoint union of groups, one unit per component.
FiniteGroupoid group_bundle(const std::vector<GroupTable>& groups);
/// Transformation groupoid: arrows (g, p) from p to g.p.
/// action[g][p] is the index of g.p in points.
FiniteGroupoid action_groupoid(const GroupTable& group, const std::vector<std::string>& points,
                               const std::vector<std::vector<int>>& action);
/// Labels of the two parts get the given prefixes.
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b,
                              const std::string& prefix_a = "a.",
                              const std::string& prefix_b = "b.");

}  // namespace cpmu
