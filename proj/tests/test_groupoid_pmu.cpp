#include "cpmu/groupoid_pmu.hpp"

#include "cpmu/corpus.hpp"

#include "brute.hpp"

#include <doctest.h>

#include <set>

using namespace cpmu;
using brute::at;

namespace {

GroupoidUnitary unitary_for(const std::string& name) {
  const auto inst = corpus_instance(name);
  return build_groupoid_unitary(inst.groupoid, build_measure(inst.groupoid, inst.haar, inst.unit_weights));
}

/// Center of C*_r(G) by counting: one summand per orbit, with as many
/// central projections as the isotropy group at any of its units has
/// conjugacy classes.
int center_oracle(const FiniteGroupoid& g) {
  std::set<int> seen;
  int total = 0;
  for (int u : g.units) {
    if (seen.count(u)) continue;
    for (int x = 0; x < g.size(); ++x)
      if (g.source[at(x)] == u) seen.insert(g.range[at(x)]);
    std::vector<int> iso;
    for (int x = 0; x < g.size(); ++x)
      if (g.source[at(x)] == u && g.range[at(x)] == u) iso.push_back(x);
    std::set<std::set<int>> classes;
    for (int x : iso) {
      std::set<int> c;
      for (int y : iso) c.insert(g.mul(g.mul(y, x), g.inverse[at(y)]));
      classes.insert(c);
    }
    total += static_cast<int>(classes.size());
  }
  return total;
}

}  // namespace

TEST_CASE("embeddings match their defining formulas") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto inst = corpus_instance(name);
    const auto& g = inst.groupoid;
    const auto m = build_measure(g, inst.haar, inst.unit_weights);
    const auto e = build_embeddings(g, m);
    CHECK(e.report.passed());
    for (int x = 0; x < g.size(); ++x) {
      // (j(d_x) z)(y) = [y = x] z(r(x)),  (j^(d_x) z)(y) = [y = x] D^{-1/2}(x) z(s(x))
      Mat j = Mat::Zero(g.size(), g.unit_count()), jh = Mat::Zero(g.size(), g.unit_count());
      j(x, g.unit_position(g.range[at(x)])) = 1;
      jh(x, g.unit_position(g.source[at(x)])) = 1 / std::sqrt(m.modular[at(x)]);
      CHECK((embed_j(g, e, x).coefficients() - j).norm() < 1e-14);
      CHECK((embed_j_hat(g, m, e, x).coefficients() - jh).norm() < 1e-14);
    }
    CHECK(e.alpha.rank() == g.size());
    CHECK(e.beta_hat.rank() == g.size());
  }
}

TEST_CASE("V is the map z(x, y) -> z(x, x^-1 y)") {
  for (const char* name : {"z2", "z4", "pair2-nu", "action_z2_swap-nu", "bundle_z2_z3-nu"}) {
    CAPTURE(name);
    const auto u = unitary_for(name);
    REQUIRE(u.report.passed());
    CHECK(brute::v_error(u) < 1e-12);
  }
}

TEST_CASE("legs and comultiplications against brute force") {
  for (const char* name : {"z3", "s3", "pair2", "pair2-nu", "action_z2_swap-nu", "bundle_z2_z3"}) {
    CAPTURE(name);
    const auto u = unitary_for(name);
    const auto rep = identify_legs(u);
    for (const auto& e : rep.entries()) {
      CAPTURE(e.name);
      CHECK(e.passed);
    }

    CHECK(span_equal(leg_hat(u.pmu), brute::multiplication_span(u)).holds);
    CHECK(span_equal(leg_a(u.pmu), brute::convolution_span(u)).holds);
    const double dh = brute::delta_hat_error(u), dd = brute::delta_error(u);
    CHECK(dh <= 1e-10);
    CHECK(dd <= 1e-10);
  }
}

TEST_CASE("centers of the legs") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto u = unitary_for(name);
    const auto a = leg_a(u.pmu), a_hat = leg_hat(u.pmu);
    CHECK(a.rank() == u.g.size());
    CHECK(center_dim(a_hat) == u.g.size());
    CHECK(center_dim(a) == center_oracle(u.g));
  }
  CHECK(center_oracle(pair_groupoid(3)) == 1);
  CHECK(center_oracle(group_as_groupoid(symmetric_group_3())) == 3);
}
