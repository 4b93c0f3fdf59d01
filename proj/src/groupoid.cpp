#include "cpmu/groupoid.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpmu {

int FiniteGroupoid::unit_position(int arrow) const {
  auto it = std::find(units.begin(), units.end(), arrow);
  return it == units.end() ? -1 : static_cast<int>(it - units.begin());
}

int FiniteGroupoid::find(const std::string& label) const {
  auto it = std::find(arrows.begin(), arrows.end(), label);
  return it == arrows.end() ? -1 : static_cast<int>(it - arrows.begin());
}

namespace {

std::string pair_name(const FiniteGroupoid& g, int x, int y) {
  return "(" + g.arrows[static_cast<std::size_t>(x)] + ", " +
         g.arrows[static_cast<std::size_t>(y)] + ")";
}

}  // namespace

ValidationReport validate(const FiniteGroupoid& g) {
  ValidationReport rep;
  auto& v = rep.violations;
  const int n = g.size();
  const auto un = static_cast<std::size_t>(n);
  if (g.range.size() != un || g.source.size() != un || g.inverse.size() != un ||
      g.compose.size() != un * un) {
    v.push_back("table sizes do not match the number of arrows");
    return rep;
  }
  auto in_range = [n](int x) { return x >= 0 && x < n; };
  for (int u : g.units)
    if (!in_range(u)) {
      v.push_back("unit index out of range");
      return rep;
    }
  for (int x = 0; x < n; ++x) {
    const auto& name = g.arrows[static_cast<std::size_t>(x)];
    int r = g.range[static_cast<std::size_t>(x)], s = g.source[static_cast<std::size_t>(x)];
    int inv = g.inverse[static_cast<std::size_t>(x)];
    if (!in_range(r) || !g.is_unit(r)) v.push_back("range of " + name + " is not a unit");
    if (!in_range(s) || !g.is_unit(s)) v.push_back("source of " + name + " is not a unit");
    if (!in_range(inv)) v.push_back("inverse of " + name + " out of range");
  }
  if (!v.empty()) return rep;
  for (int u : g.units) {
    if (g.range[static_cast<std::size_t>(u)] != u || g.source[static_cast<std::size_t>(u)] != u)
      v.push_back("unit " + g.arrows[static_cast<std::size_t>(u)] + " is not its own range and source");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      int xy = g.mul(x, y);
      bool composable = g.source[static_cast<std::size_t>(x)] == g.range[static_cast<std::size_t>(y)];
      if (composable && xy < 0) v.push_back("missing product " + pair_name(g, x, y));
      if (!composable && xy >= 0) v.push_back("product defined for non-composable " + pair_name(g, x, y));
      if (xy >= n) v.push_back("product out of range " + pair_name(g, x, y));
      if (!composable || xy < 0 || xy >= n) continue;
      if (g.range[static_cast<std::size_t>(xy)] != g.range[static_cast<std::size_t>(x)])
        v.push_back("range mismatch: r(xy) != r(x) for " + pair_name(g, x, y));
      if (g.source[static_cast<std::size_t>(xy)] != g.source[static_cast<std::size_t>(y)])
        v.push_back("source mismatch: s(xy) != s(y) for " + pair_name(g, x, y));
    }
  }
  if (!v.empty()) return rep;
  for (int x = 0; x < n; ++x) {
    const auto ux = static_cast<std::size_t>(x);
    int r = g.range[ux], s = g.source[ux], inv = g.inverse[ux];
    const auto& name = g.arrows[ux];
    if (g.mul(r, x) != x || g.mul(x, s) != x) v.push_back("unit law fails for " + name);
    if (g.range[static_cast<std::size_t>(inv)] != s || g.source[static_cast<std::size_t>(inv)] != r) {
      v.push_back("inverse of " + name + " has wrong range/source");
      continue;
    }
    if (g.mul(x, inv) != r || g.mul(inv, x) != s) v.push_back("inverse law fails for " + name);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xy = g.mul(x, y);
      if (xy < 0) continue;
      for (int z = 0; z < n; ++z) {
        int yz = g.mul(y, z);
        if (yz < 0) continue;
        if (g.mul(xy, z) != g.mul(x, yz))
          v.push_back("associativity fails for " + g.arrows[static_cast<std::size_t>(x)] + ", " +
                      g.arrows[static_cast<std::size_t>(y)] + ", " +
                      g.arrows[static_cast<std::size_t>(z)]);
      }
    }
  return rep;
}

std::vector<std::pair<int, int>> composable_pairs(const FiniteGroupoid& g, PairMode mode) {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      int left = mode == PairMode::SourceRange ? g.source[static_cast<std::size_t>(x)]
                                               : g.range[static_cast<std::size_t>(x)];
      if (left == g.range[static_cast<std::size_t>(y)]) out.emplace_back(x, y);
    }
  return out;
}

std::vector<std::vector<int>> composable_triples(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> out;
  for (auto [x, y] : composable_pairs(g, PairMode::SourceRange))
    for (int z = 0; z < g.size(); ++z)
      if (g.source[static_cast<std::size_t>(y)] == g.range[static_cast<std::size_t>(z)])
        out.push_back({x, y, z});
  return out;
}

ValidationReport validate_group(const GroupTable& t) {
  ValidationReport rep;
  const int n = static_cast<int>(t.labels.size());
  if (static_cast<int>(t.table.size()) != n) {
    rep.violations.push_back("group table has wrong number of rows");
    return rep;
  }
  for (const auto& row : t.table) {
    if (static_cast<int>(row.size()) != n) {
      rep.violations.push_back("group table has a row of wrong length");
      return rep;
    }
    for (int v : row)
      if (v < 0 || v >= n) {
        rep.violations.push_back("group table entry out of range");
        return rep;
      }
  }
  auto m = [&](int a, int b) { return t.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && m(a, b) == b && m(b, a) == b;
    if (ok) e = a;
  }
  if (e < 0) {
    rep.violations.push_back("group has no identity");
    return rep;
  }
  for (int a = 0; a < n; ++a) {
    bool has_inv = false;
    for (int b = 0; b < n; ++b) has_inv = has_inv || (m(a, b) == e && m(b, a) == e);
    if (!has_inv) rep.violations.push_back("element " + t.labels[static_cast<std::size_t>(a)] + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m(m(a, b), c) != m(a, m(b, c))) {
          rep.violations.push_back("group multiplication is not associative");
          return rep;
        }
  return rep;
}

GroupTable cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic_group: n must be positive");
  GroupTable t;
  for (int i = 0; i < n; ++i) t.labels.push_back(std::to_string(i));
  t.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return t;
}

GroupTable symmetric_group_3() {
  // Permutations of {0,1,2} in one-line notation; product is composition
  // (p q)(i) = p(q(i)).
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GroupTable t;
  for (const auto& q : perms)
    t.labels.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  const auto n = perms.size();
  t.table.assign(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<int> c(3);
      for (std::size_t i = 0; i < 3; ++i)
        c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      t.table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return t;
}

FiniteGroupoid pair_groupoid(int n) {
  if (n < 1) throw std::invalid_argument("pair_groupoid: n must be positive");
  FiniteGroupoid g;
  auto idx = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.arrows.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      g.range.push_back(idx(i, i));
      g.source.push_back(idx(j, j));
      g.inverse.push_back(idx(j, i));
    }
  for (int i = 0; i < n; ++i) g.units.push_back(idx(i, i));
  const int m = n * n;
  g.compose.assign(static_cast<std::size_t>(m * m), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        g.compose[static_cast<std::size_t>(idx(i, j) * m + idx(j, k))] = idx(i, k);
  return g;
}

FiniteGroupoid group_as_groupoid(const GroupTable& t) {
  auto rep = validate_group(t);
  if (!rep.ok()) throw std::invalid_argument("group_as_groupoid: " + rep.violations.front());
  return group_bundle({t});
}

FiniteGroupoid group_bundle(const std::vector<GroupTable>& groups) {
  FiniteGroupoid g;
  int offset = 0;
  std::vector<int> offsets;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    const auto& t = groups[c];
    auto rep = validate_group(t);
    if (!rep.ok()) throw std::invalid_argument("group_bundle: " + rep.violations.front());
    offsets.push_back(offset);
    offset += static_cast<int>(t.labels.size());
  }
  const int n = offset;
  g.compose.assign(static_cast<std::size_t>(n * n), -1);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    const auto& t = groups[c];
    const int k = static_cast<int>(t.labels.size()), off = offsets[c];
    auto m = [&](int a, int b) { return t.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
    int e = 0;
    for (int a = 0; a < k; ++a)
      if (m(a, a) == a) e = a;
    g.units.push_back(off + e);
    for (int a = 0; a < k; ++a) {
      g.arrows.push_back(groups.size() == 1 ? t.labels[static_cast<std::size_t>(a)]
                                            : "c" + std::to_string(c) + "." + t.labels[static_cast<std::size_t>(a)]);
      g.range.push_back(off + e);
      g.source.push_back(off + e);
      int inv = 0;
      for (int b = 0; b < k; ++b)
        if (m(a, b) == e) inv = b;
      g.inverse.push_back(off + inv);
      for (int b = 0; b < k; ++b)
        g.compose[static_cast<std::size_t>((off + a) * n + off + b)] = off + m(a, b);
    }
  }
  return g;
}

FiniteGroupoid action_groupoid(const GroupTable& group, const std::vector<std::string>& points,
                               const std::vector<std::vector<int>>& action) {
  auto rep = validate_group(group);
  if (!rep.ok()) throw std::invalid_argument("action_groupoid: " + rep.violations.front());
  const int k = static_cast<int>(group.labels.size()), np = static_cast<int>(points.size());
  auto m = [&](int a, int b) { return group.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
  auto act = [&](int a, int p) { return action[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)]; };
  if (static_cast<int>(action.size()) != k)
    throw std::invalid_argument("action_groupoid: action table needs one row per group element");
  int e = 0;
  for (int a = 0; a < k; ++a)
    if (m(a, a) == a) e = a;
  for (int a = 0; a < k; ++a) {
    if (static_cast<int>(action[static_cast<std::size_t>(a)].size()) != np)
      throw std::invalid_argument("action_groupoid: action row of wrong length");
    for (int p = 0; p < np; ++p) {
      if (act(a, p) < 0 || act(a, p) >= np) throw std::invalid_argument("action_groupoid: point out of range");
      for (int b = 0; b < k; ++b)
        if (act(m(a, b), p) != act(a, act(b, p)))
          throw std::invalid_argument("action_groupoid: table is not an action");
    }
  }
  for (int p = 0; p < np; ++p)
    if (act(e, p) != p) throw std::invalid_argument("action_groupoid: identity acts nontrivially");

  // Arrow (a, p) has index a * np + p, source p and range a.p.
  FiniteGroupoid g;
  auto idx = [np](int a, int p) { return a * np + p; };
  const int n = k * np;
  for (int a = 0; a < k; ++a)
    for (int p = 0; p < np; ++p) {
      g.arrows.push_back("(" + group.labels[static_cast<std::size_t>(a)] + "," +
                         points[static_cast<std::size_t>(p)] + ")");
      g.range.push_back(idx(e, act(a, p)));
      g.source.push_back(idx(e, p));
      int inv = 0;
      for (int b = 0; b < k; ++b)
        if (m(a, b) == e) inv = b;
      g.inverse.push_back(idx(inv, act(a, p)));
    }
  for (int p = 0; p < np; ++p) g.units.push_back(idx(e, p));
  g.compose.assign(static_cast<std::size_t>(n * n), -1);
  for (int a = 0; a < k; ++a)
    for (int p = 0; p < np; ++p)
      for (int b = 0; b < k; ++b) {
        int q = act(b, p);
        // (a, b.p)(b, p) = (ab, p)
        g.compose[static_cast<std::size_t>(idx(a, q) * n + idx(b, p))] = idx(m(a, b), p);
      }
  return g;
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b,
                              const std::string& prefix_a, const std::string& prefix_b) {
  FiniteGroupoid g;
  const int na = a.size(), nb = b.size(), n = na + nb;
  for (const auto& s : a.arrows) g.arrows.push_back(prefix_a + s);
  for (const auto& s : b.arrows) g.arrows.push_back(prefix_b + s);
  for (int u : a.units) g.units.push_back(u);
  for (int u : b.units) g.units.push_back(u + na);
  auto shift = [&](const std::vector<int>& va, const std::vector<int>& vb, std::vector<int>& out) {
    out = va;
    for (int v : vb) out.push_back(v + na);
  };
  shift(a.range, b.range, g.range);
  shift(a.source, b.source, g.source);
  shift(a.inverse, b.inverse, g.inverse);
  g.compose.assign(static_cast<std::size_t>(n * n), -1);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) g.compose[static_cast<std::size_t>(x * n + y)] = a.mul(x, y);
  for (int x = 0; x < nb; ++x)
    for (int y = 0; y < nb; ++y) {
      int v = b.mul(x, y);
      g.compose[static_cast<std::size_t>((x + na) * n + y + na)] = v < 0 ? -1 : v + na;
    }
  return g;
}

}  // namespace cpmu
