#include "cpmu/linalg.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace cpmu;
using oracle::unit;

namespace {

HilbertSpace c2() { return HilbertSpace::uniform("C2", {"1", "2"}); }

OperatorSpan span_of(std::vector<Operator> ops) { return span_normalize(ops); }

OperatorSpan matrices(const HilbertSpace& h) {
  std::vector<Operator> ops;
  for (Index i = 0; i < h.dim(); ++i)
    for (Index j = 0; j < h.dim(); ++j) ops.push_back(unit(h, i, j));
  return span_of(ops);
}

}  // namespace

TEST_CASE("span_normalize ranks") {
  const auto h = c2();
  const auto id = Operator::identity(h);
  CHECK(span_of({id, 2.0 * id}).rank() == 1);
  CHECK(span_of({unit(h, 0, 0), unit(h, 1, 1)}).rank() == 2);

  std::vector<Operator> g{unit(h, 0, 1), unit(h, 1, 0), unit(h, 0, 1) + unit(h, 1, 0)};
  CHECK(span_of(g).rank() == oracle::family_rank(g));
  CHECK(span_of(g).rank() == 2);

  CHECK(span_normalize(h, h, std::vector<Operator>{}).rank() == 0);
  const auto k = HilbertSpace::uniform("C3", {"a", "b", "c"});
  std::vector<Operator> mixed{id, Operator::identity(k)};
  CHECK_THROWS_AS(span_normalize(mixed), ShapeError);
}

TEST_CASE("span_product") {
  const auto h = c2();
  CHECK(span_product(matrices(h), matrices(h)).rank() == 4);
  const OperatorSpan zero(h, h, Mat(4, 0));
  CHECK(span_product(zero, matrices(h)).rank() == 0);

  // diag * offdiag: every product of a diagonal unit with an off-diagonal
  // one is an off-diagonal unit or zero.
  const auto diag = span_of({unit(h, 0, 0), unit(h, 1, 1)});
  const auto off = span_of({unit(h, 0, 1), unit(h, 1, 0)});
  std::vector<Operator> products;
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) products.push_back(unit(h, a, a) * unit(h, b, 1 - b));
  const auto brute = span_of(products);
  CHECK(span_equal(span_product(diag, off), brute).holds);
  CHECK(span_equal(span_product(diag, off), off).holds);

  const auto k = HilbertSpace::uniform("C3", {"a", "b", "c"});
  CHECK_THROWS_AS(span_product(matrices(h), matrices(k)), ShapeError);
}

TEST_CASE("span_equal and inclusion") {
  const auto h = c2();
  const auto s = matrices(h);
  const auto self = span_equal(s, s);
  CHECK(self.holds);
  CHECK(self.residual <= 1e-12);
  CHECK_FALSE(span_equal(span_of({unit(h, 0, 0)}), span_of({unit(h, 0, 0), unit(h, 1, 1)})).holds);

  oracle::Rng rng(7);
  const auto hw = rng.space("H", 3);
  const auto a = Operator(hw, hw, rng.matrix(3, 3));
  const auto b = Operator(hw, hw, rng.matrix(3, 3));
  CHECK(span_equal(span_of({a, b}), span_of({a + b, a - b})).holds);
}

TEST_CASE("span_intersect") {
  const auto h = c2();
  const auto m2 = matrices(h);
  const auto diag = span_of({unit(h, 0, 0), unit(h, 1, 1)});
  CHECK(span_equal(span_intersect(m2, m2), m2).holds);
  CHECK(span_intersect(span_of({unit(h, 0, 0)}), span_of({unit(h, 1, 1)})).rank() == 0);
  const auto i = span_intersect(m2, diag);
  CHECK(i.rank() == 2);
  CHECK(span_equal(i, diag).holds);
}

TEST_CASE("solve_operator_constraints") {
  const auto h = c2();
  CHECK(solve_operator_constraints(h, h, std::span<const Constraint>{}).rank() == 4);

  // T e1 in span{e1}: the (2,1) entry vanishes, three entries stay free.
  Mat e1 = Mat::Zero(2, 1);
  e1(0, 0) = 1.0;
  const auto line = HilbertSpace::uniform("C", {"0"});
  const Operator ket(line, h, e1);
  const auto target = span_of({ket});
  std::vector<Constraint> c{times_in(h, h, ket, target)};
  const auto sol = solve_operator_constraints(h, h, c);
  CHECK(sol.rank() == 3);
  for (const auto& t : sol.elements()) CHECK(std::abs(t.matrix()(1, 0)) < 1e-12);

  const auto id = Operator::identity(h);
  std::vector<Constraint> comm{intertwines(id, id)};
  CHECK(solve_operator_constraints(h, h, comm).rank() == 4);

  // Commutant of diag(1, 2) is the diagonal algebra.
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const Operator dop(h, h, d);
  std::vector<Constraint> cd{intertwines(dop, dop)};
  CHECK(span_equal(solve_operator_constraints(h, h, cd), span_of({unit(h, 0, 0), unit(h, 1, 1)})).holds);
}

TEST_CASE("gram_quotient") {
  auto q = gram_quotient(Mat::Identity(3, 3));
  CHECK(q.dim == 3);
  CHECK((q.synthesis.adjoint() * q.synthesis - Mat::Identity(3, 3)).norm() < 1e-12);

  q = gram_quotient(Mat::Ones(2, 2));
  CHECK(q.dim == 1);

  Mat bad = Mat::Identity(2, 2);
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(gram_quotient(bad), NumericError);
}

TEST_CASE("weighted adjoint agrees with the weighted inner products") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = rng.space("H", 1 + rng.below(4));
    const auto k = rng.space("K", 1 + rng.below(4));
    const Operator t = Operator::from_coefficients(h, k, rng.matrix(k.dim(), h.dim()));
    const Mat tc = t.coefficients(), ac = t.adjoint().coefficients();
    const cpmu::Vec x = rng.matrix(h.dim(), 1), y = rng.matrix(k.dim(), 1);
    const cplx lhs = oracle::inner(k, tc * x, y);
    const cplx rhs = oracle::inner(h, x, ac * y);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(lhs)));
    // involution is exact, HS norm is preserved
    CHECK(t.adjoint().adjoint().matrix() == t.matrix());
    CHECK(std::abs(t.adjoint().hs_norm() - t.hs_norm()) <= 1e-12 * (1 + t.hs_norm()));
  }
}

TEST_CASE("span properties on random families") {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 2 + rng.below(3), m = 1 + rng.below(4);
    const auto h = rng.space("H", n);
    const auto k = rng.space("K", m);
    const Index count = 1 + rng.below(6);
    const Index r = 1 + rng.below(static_cast<int>(std::min<Index>(count, n * m)));
    // count generators spanning an r-dimensional space
    const Mat coords = rng.low_rank(n * m, count, r);
    std::vector<Operator> gens;
    for (Index c = 0; c < count; ++c) gens.push_back(unvectorize(h, k, coords.col(c)));
    const auto s = span_normalize(gens);
    CHECK(s.rank() == oracle::family_rank(gens));
    for (const auto& g : gens) CHECK(s.residual(g) <= 1e-9);

    // idempotence: generators plus basis give the same span
    auto more = gens;
    for (const auto& e : s.elements()) more.push_back(e);
    CHECK(span_equal(span_normalize(more), s).holds);

    // intersection lies in both
    const Mat other = rng.low_rank(n * m, 4, 1 + rng.below(static_cast<int>(std::min<Index>(4, n * m))));
    std::vector<Operator> ogens;
    for (Index c = 0; c < other.cols(); ++c) ogens.push_back(unvectorize(h, k, other.col(c)));
    const auto t = span_sum(span_normalize(ogens), span_normalize(std::vector<Operator>{gens[0]}));
    const auto i = span_intersect(s, t);
    CHECK(span_included(i, s).holds);
    CHECK(span_included(i, t).holds);
    CHECK(i.rank() >= 1);  // gens[0] is in both
  }
}

TEST_CASE("gram_quotient reproduces random Gram matrices") {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + rng.below(8), r = 1 + rng.below(static_cast<int>(n));
    const Mat f = rng.matrix(r, n);
    const Mat gram = f.adjoint() * f;
    const auto q = gram_quotient(gram);
    CHECK(q.dim == oracle::jacobi_rank(gram));
    CHECK((q.synthesis.adjoint() * q.synthesis - gram).norm() <= 1e-9 * gram.norm());
  }
}

TEST_CASE("svd on structured input with repeated singular values") {
  // 0/1 incidence columns: many exactly equal singular values.  The range
  // must be spanned exactly and U must stay inside it.
  const Index rows = 96, cols = 48;
  Mat a = Mat::Zero(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    a((j * 7) % rows, j) = 0.5;
    a((j * 7 + 3) % rows, j) = 0.5;
    a((j * 5 + 1) % rows, j) = cplx(0, 0.5);
  }
  Mat b(rows, 2 * cols);
  b << a, a * Mat::Identity(cols, cols) * cplx(0, 1);  // duplicated directions
  const Mat u = column_range(b);
  CHECK(u.cols() == oracle::jacobi_rank(b));
  CHECK((u.adjoint() * u - Mat::Identity(u.cols(), u.cols())).norm() < 1e-10);
  CHECK((b - u * (u.adjoint() * b)).norm() < 1e-10 * b.norm());

  const Svd full = svd(b, SvdVectors::full, SvdVectors::full);
  CHECK(full.u.rows() == rows);
  CHECK(full.u.cols() == rows);
  CHECK(full.v.rows() == 2 * cols);
  CHECK(full.v.cols() == 2 * cols);
  Mat sigma = Mat::Zero(rows, 2 * cols);
  for (Index i = 0; i < full.s.size(); ++i) sigma(i, i) = full.s(i);
  CHECK((full.u * sigma * full.v.adjoint() - b).norm() < 1e-10 * b.norm());

  const Svd none = svd(Mat(0, 3), SvdVectors::thin, SvdVectors::full);
  CHECK(none.s.size() == 0);
  CHECK(none.v.rows() == 3);
}

TEST_CASE("unitarity residual") {
  const auto h = c2();
  Mat r(2, 2);
  r << 0, 1, 1, 0;
  CHECK(unitarity_residual(Operator(h, h, r)) < 1e-15);
  CHECK(unitarity_residual(Operator(h, h, 2.0 * r)) > 1.0);
}
