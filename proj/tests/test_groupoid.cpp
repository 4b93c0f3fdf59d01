#include "cpmu/corpus.hpp"
#include "cpmu/groupoid.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace cpmu;

namespace {

bool mentions(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

/// Random transformation groupoid of Z/n acting through a permutation of
/// order n on m <= 4 points.
FiniteGroupoid random_action(oracle::Rng& rng) {
  const int m = 1 + rng.below(4);
  std::vector<int> sigma(static_cast<std::size_t>(m));
  std::iota(sigma.begin(), sigma.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(rng.below(i + 1))]);
  // order of sigma
  std::vector<int> p = sigma;
  int order = 1;
  auto is_id = [](const std::vector<int>& q) {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] != static_cast<int>(i)) return false;
    return true;
  };
  while (!is_id(p)) {
    for (auto& v : p) v = sigma[static_cast<std::size_t>(v)];
    ++order;
  }
  std::vector<std::string> points;
  for (int i = 0; i < m; ++i) points.push_back("p" + std::to_string(i));
  std::vector<std::vector<int>> action;
  std::vector<int> cur(static_cast<std::size_t>(m));
  std::iota(cur.begin(), cur.end(), 0);
  for (int k = 0; k < order; ++k) {
    action.push_back(cur);
    for (auto& v : cur) v = sigma[static_cast<std::size_t>(v)];
  }
  return action_groupoid(cyclic_group(order), points, action);
}

/// Enumeration checks shared by the corpus and the random family.
void check_structure(const FiniteGroupoid& g) {
  REQUIRE(validate(g).ok());
  // left translation by x is a bijection G^{s(x)} -> G^{r(x)}
  for (int x = 0; x < g.size(); ++x) {
    std::set<int> image;
    int fibre = 0;
    for (int y = 0; y < g.size(); ++y) {
      if (g.range[static_cast<std::size_t>(y)] != g.source[static_cast<std::size_t>(x)]) continue;
      ++fibre;
      const int xy = g.mul(x, y);
      CHECK(g.range[static_cast<std::size_t>(xy)] == g.range[static_cast<std::size_t>(x)]);
      image.insert(xy);
    }
    int target = 0;
    for (int z = 0; z < g.size(); ++z) target += g.range[static_cast<std::size_t>(z)] == g.range[static_cast<std::size_t>(x)];
    CHECK(static_cast<int>(image.size()) == fibre);
    CHECK(fibre == target);
  }
  // |G2_sr| = sum_x |G^{s(x)}|, |G2_rr| = sum_u |G^u|^2
  std::vector<int> fibre_size(static_cast<std::size_t>(g.size()), 0);
  for (int x = 0; x < g.size(); ++x) ++fibre_size[static_cast<std::size_t>(g.range[static_cast<std::size_t>(x)])];
  std::size_t sr = 0, rr = 0;
  for (int x = 0; x < g.size(); ++x) sr += static_cast<std::size_t>(fibre_size[static_cast<std::size_t>(g.source[static_cast<std::size_t>(x)])]);
  for (int u : g.units) rr += static_cast<std::size_t>(fibre_size[static_cast<std::size_t>(u)] * fibre_size[static_cast<std::size_t>(u)]);
  const auto psr = composable_pairs(g, PairMode::SourceRange);
  const auto prr = composable_pairs(g, PairMode::RangeRange);
  CHECK(psr.size() == sr);
  CHECK(prr.size() == rr);
  CHECK(std::is_sorted(psr.begin(), psr.end()));
  CHECK(std::is_sorted(prr.begin(), prr.end()));
}

}  // namespace

TEST_CASE("validate accepts the standard constructions") {
  CHECK(validate(group_as_groupoid(cyclic_group(2))).ok());
  const auto p2 = pair_groupoid(2);
  CHECK(validate(p2).ok());
  CHECK(p2.size() == 4);
}

TEST_CASE("validate names the broken axiom") {
  auto p2 = pair_groupoid(2);
  const int a12 = p2.find("(1,2)"), a21 = p2.find("(2,1)"), a22 = p2.find("(2,2)");
  p2.compose[static_cast<std::size_t>(a12 * p2.size() + a21)] = a22;
  const auto r = validate(p2);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "range mismatch"));

  auto z2 = group_as_groupoid(cyclic_group(2));
  z2.compose[3] = 1;  // 1 + 1 = 1
  CHECK_FALSE(validate(z2).ok());

  auto bad_inverse = pair_groupoid(2);
  bad_inverse.inverse[static_cast<std::size_t>(a12)] = a12;
  CHECK(mentions(validate(bad_inverse), "inverse"));

  auto missing = pair_groupoid(2);
  missing.compose[static_cast<std::size_t>(a12 * missing.size() + a21)] = -1;
  CHECK(mentions(validate(missing), "missing product"));
}

TEST_CASE("constructions have the expected sizes") {
  const auto p3 = pair_groupoid(3);
  CHECK(p3.size() == 9);
  CHECK(p3.unit_count() == 3);
  const auto s3 = group_as_groupoid(symmetric_group_3());
  CHECK(s3.size() == 6);
  CHECK(s3.unit_count() == 1);
  const auto act = action_groupoid(cyclic_group(2), {"a", "b"}, {{0, 1}, {1, 0}});
  CHECK(act.size() == 4);
  CHECK(act.unit_count() == 2);
  const auto bundle = group_bundle({cyclic_group(2), cyclic_group(3)});
  CHECK(bundle.size() == 5);
  CHECK(bundle.unit_count() == 2);
  const auto u = disjoint_union(pair_groupoid(2), group_as_groupoid(cyclic_group(3)));
  CHECK(u.size() == 7);
  CHECK(u.unit_count() == 3);
  CHECK(validate(u).ok());
}

TEST_CASE("invalid group tables are rejected") {
  GroupTable t = cyclic_group(3);
  t.table[1][1] = 1;
  CHECK_FALSE(validate_group(t).ok());
  CHECK_THROWS(group_as_groupoid(t));
  // not an action: the generator acts trivially but squares to a swap
  CHECK_THROWS(action_groupoid(cyclic_group(2), {"a", "b"}, {{1, 0}, {1, 0}}));
}

TEST_CASE("composable pair counts") {
  CHECK(composable_pairs(group_as_groupoid(cyclic_group(2)), PairMode::SourceRange).size() == 4);
  const auto p2 = pair_groupoid(2);
  CHECK(composable_pairs(p2, PairMode::SourceRange).size() == 8);
  CHECK(composable_pairs(p2, PairMode::RangeRange).size() == 8);
  // triples: each composable pair extends by |G^{s(y)}|
  CHECK(composable_triples(p2).size() == 16);
}

TEST_CASE("structure of the corpus") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    check_structure(corpus_instance(name).groupoid);
  }
  CHECK_THROWS_AS(corpus_instance("z5"), std::invalid_argument);
}

TEST_CASE("structure of random transformation groupoids") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) check_structure(random_action(rng));
}
