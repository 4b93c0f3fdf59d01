#include "cpmu/corpus.hpp"
#include "cpmu/measure.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace cpmu;

TEST_CASE("counting Haar systems are left invariant") {
  for (const auto& g : {pair_groupoid(2), group_as_groupoid(symmetric_group_3()),
                        group_bundle({cyclic_group(2), cyclic_group(3)})}) {
    const auto h = counting_haar(g);
    for (double w : h.weights) CHECK(w == 1.0);
    const auto inv = check_left_invariance(g, h);
    CHECK(inv.ok);
    CHECK(inv.residual == 0.0);
  }
}

TEST_CASE("left invariance violations") {
  const auto p2 = pair_groupoid(2);
  auto h = counting_haar(p2);
  h.weights[static_cast<std::size_t>(p2.find("(1,2)"))] = 2.0;
  const auto inv = check_left_invariance(p2, h);
  CHECK_FALSE(inv.ok);
  CHECK(inv.residual > 0.5);
  CHECK_FALSE(inv.violations.empty());

  // constant rescaling of a group's Haar measure stays invariant
  const auto s3 = group_as_groupoid(symmetric_group_3());
  HaarSystem c{std::vector<double>(6, 3.5)};
  CHECK(check_left_invariance(s3, c).ok);
}

TEST_CASE("Radon-Nikodym derivative on the pair groupoid") {
  const auto p2 = pair_groupoid(2);
  const auto m = build_measure(p2, counting_haar(p2), {1.0 / 3, 2.0 / 3});
  // oracle: nu({x}) = mu(r(x)), nu^-1({x}) = mu(s(x)) for counting Haar
  const std::vector<double> mu{1.0 / 3, 2.0 / 3};
  for (int x = 0; x < p2.size(); ++x) {
    const double nu = mu[static_cast<std::size_t>(p2.unit_position(p2.range[static_cast<std::size_t>(x)]))];
    const double nui = mu[static_cast<std::size_t>(p2.unit_position(p2.source[static_cast<std::size_t>(x)]))];
    CHECK(m.modular[static_cast<std::size_t>(x)] == doctest::Approx(nu / nui).epsilon(1e-14));
  }
  CHECK(m.modular[static_cast<std::size_t>(p2.find("(1,2)"))] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("trivial derivatives") {
  const auto s3 = group_as_groupoid(symmetric_group_3());
  for (double d : build_measure(s3, counting_haar(s3), {1.0}).modular) CHECK(d == 1.0);
  const auto p3 = pair_groupoid(3);
  for (double d : build_measure(p3, counting_haar(p3), {1.0, 1.0, 1.0}).modular) CHECK(d == 1.0);
}

TEST_CASE("build_measure rejects bad input") {
  const auto p2 = pair_groupoid(2);
  CHECK_THROWS_AS(build_measure(p2, counting_haar(p2), {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_measure(p2, counting_haar(p2), {1.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_measure(p2, counting_haar(p2), {1.0}), std::invalid_argument);
}

TEST_CASE("cocycle identity and its negative control") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto inst = corpus_instance(name);
    const auto m = build_measure(inst.groupoid, inst.haar, inst.unit_weights);
    CHECK(check_cocycle(inst.groupoid, m) <= 1e-14);
  }
  const auto p2 = pair_groupoid(2);
  auto m = build_measure(p2, counting_haar(p2), {0.25, 0.75});
  m.modular[static_cast<std::size_t>(p2.find("(1,2)"))] *= 1.5;
  CHECK(check_cocycle(p2, m) > 0.1);
}

TEST_CASE("measure invariants on random unit weights") {
  oracle::Rng rng(5);
  const std::vector<FiniteGroupoid> family{pair_groupoid(3), group_bundle({cyclic_group(2), cyclic_group(3)}),
                                           action_groupoid(cyclic_group(2), {"a", "b"}, {{0, 1}, {1, 0}}),
                                           disjoint_union(pair_groupoid(2), group_as_groupoid(cyclic_group(2)))};
  for (int trial = 0; trial < 20; ++trial) {
    const auto& g = family[static_cast<std::size_t>(rng.below(static_cast<int>(family.size())))];
    std::vector<double> mu;
    for (int k = 0; k < g.unit_count(); ++k) mu.push_back(rng.weight());
    const auto m = build_measure(g, counting_haar(g), mu);

    // nu(G) = sum_u mu(u) |G^u|
    double total = 0, expected = 0;
    for (double v : m.nu) total += v;
    for (int k = 0; k < g.unit_count(); ++k) {
      int fibre = 0;
      for (int x = 0; x < g.size(); ++x) fibre += g.range[static_cast<std::size_t>(x)] == g.units[static_cast<std::size_t>(k)];
      expected += mu[static_cast<std::size_t>(k)] * fibre;
    }
    CHECK(total == doctest::Approx(expected).epsilon(1e-13));

    for (int x = 0; x < g.size(); ++x) {
      const auto xi = static_cast<std::size_t>(x);
      const auto inv = static_cast<std::size_t>(g.inverse[xi]);
      // push-forward of delta functions under inversion
      CHECK(m.nu_inv[xi] == doctest::Approx(m.nu[inv]).epsilon(1e-14));
      CHECK(m.modular[xi] * m.modular[inv] == doctest::Approx(1.0).epsilon(1e-13));
      if (g.is_unit(x)) CHECK(m.modular[xi] == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(check_cocycle(g, m) <= 1e-13);
  }
}
