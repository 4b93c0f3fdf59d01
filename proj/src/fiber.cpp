#include "cpmu/fiber.hpp"

#include <algorithm>

namespace cpmu {

Report check_concrete_algebra(const ConcreteAlgebra& a, double tol) {
  Report rep;
  const OperatorSpan& s = a.algebra;
  rep.add("[AA] in A", span_inclusion_residual(span_product(s, s, tol), s), tol);
  rep.add("A* = A", span_equal(s.adjoint(), s, tol).residual, tol);
  Index r = image_rank(s, tol);
  rep.add_flag("[AH] = H", r == s.codomain().dim(),
               "rank " + std::to_string(r) + " of " + std::to_string(s.codomain().dim()));
  for (const auto& f : a.factorizations)
    rep.add("[rho_" + f.name() + " A] in A",
            span_inclusion_residual(span_product(f.rho_image(tol), s, tol), s), tol);
  return rep;
}

Operator LinearMap::apply(const Operator& a) const {
  Vec c = source.coordinates(a);
  if (images.empty()) throw ShapeError("LinearMap::apply: empty map");
  Operator out = Operator::zero(images.front().domain(), images.front().codomain());
  for (Index i = 0; i < c.size(); ++i) out += c(i) * images[static_cast<std::size_t>(i)];
  return out;
}

Report check_module(const OperatorSpan& gamma, double tol) {
  Report rep;
  OperatorSpan ggg = span_product(span_product(gamma, gamma.adjoint(), tol), gamma, tol);
  rep.add("[Gamma Gamma* Gamma] = Gamma", span_equal(ggg, gamma, tol).residual, tol);
  Index r = image_rank(gamma, tol);
  rep.add_flag("[Gamma H] = K", r == gamma.codomain().dim(),
               "rank " + std::to_string(r) + " of " + std::to_string(gamma.codomain().dim()));
  return rep;
}

OperatorSpan induce_by_spanning(const OperatorSpan& gamma, const OperatorSpan& a, double tol) {
  return span_product(span_product(gamma, a, tol), gamma.adjoint(), tol);
}

OperatorSpan induce_by_constraints(const OperatorSpan& gamma, const OperatorSpan& a, double tol) {
  const HilbertSpace& k = gamma.codomain();
  OperatorSpan ga = span_product(gamma, a, tol);
  std::vector<Constraint> cs;
  for (const auto& g : gamma.elements()) {
    cs.push_back(times_in(k, k, g, ga));
    cs.push_back(adjoint_times_in(k, k, g, ga));
  }
  return solve_operator_constraints(k, k, cs, tol);
}

OperatorSpan induce_by_compression(const OperatorSpan& gamma, const OperatorSpan& a, double tol) {
  const HilbertSpace &h = gamma.domain(), &k = gamma.codomain();
  const Index n = h.dim();
  OperatorSpan full(h, h, Mat::Identity(n * n, n * n));
  OperatorSpan gl = span_product(gamma, full, tol);
  std::vector<Constraint> cs;
  auto gs = gamma.elements();
  for (const auto& g : gs) {
    cs.push_back(times_in(k, k, g, gl));
    cs.push_back(adjoint_times_in(k, k, g, gl));
  }
  for (const auto& g1 : gs)
    for (const auto& g2 : gs) cs.push_back(sandwich_in(g1.adjoint(), g2, a));
  return solve_operator_constraints(k, k, cs, tol);
}

OperatorSpan induce(const OperatorSpan& gamma, const OperatorSpan& a, double tol) {
  return induce_by_spanning(gamma, a, tol);
}

InducedMembership::InducedMembership(const OperatorSpan& gamma, const OperatorSpan& a, double tol)
    : gamma_(gamma.elements()), gamma_a_(span_product(gamma, a, tol)) {}

double InducedMembership::residual(const Operator& t) const {
  const double scale = t.norm();
  if (scale == 0.0) return 0.0;
  const Mat& q = gamma_a_.basis();
  double worst = 0.0;
  Operator ta = t.adjoint();
  for (const auto& g : gamma_) {
    for (const Operator* x : std::initializer_list<const Operator*>{&t, &ta}) {
      Vec v = vectorize(*x * g);
      Vec r = q.cols() ? Vec(v - q * (q.adjoint() * v)) : v;
      worst = std::max(worst, r.norm() / (scale * g.hs_norm()));
    }
  }
  return worst;
}

FiberProduct fiber_product(const RelativeTensorSpace& p, const OperatorSpan& a,
                           const OperatorSpan& b, double tol) {
  FiberProduct out;
  OperatorSpan ind_b = induce(p.ket1_span(), b, tol);
  OperatorSpan ind_a = induce(p.ket2_span(), a, tol);
  out.algebra = span_intersect(ind_b, ind_a, tol);
  out.image_rank = image_rank(out.algebra, tol);
  out.nondegenerate = out.image_rank == p.space().dim();
  return out;
}

BracketingCheck compare_fiber_bracketings(const RtpPtr& p, const OperatorSpan& a, double tol) {
  BracketingCheck out;
  const FiberProduct aa = fiber_product(*p, a, a, tol);
  const Associator t = associator(p, p);
  const OperatorSpan left = fiber_product(*t.left, aa.algebra, a, tol).algebra;
  const OperatorSpan right = fiber_product(*t.right, a, aa.algebra, tol).algebra;
  out.left_dim = left.rank();
  out.right_dim = right.rank();
  out.report.add_flag("dim (A*A)*A = dim A*(A*A)", out.left_dim == out.right_dim,
                      std::to_string(out.left_dim) + " vs " + std::to_string(out.right_dim));
  const OperatorSpan moved = span_product(span_product(t.theta, left, tol), t.theta.adjoint(), tol);
  out.report.add("Theta ((A*A)*A) Theta* = A*(A*A)", span_equal(moved, right, tol).residual, tol);
  return out;
}

FiberMembership::FiberMembership(const RelativeTensorSpace& p, const OperatorSpan& a,
                                 const OperatorSpan& b, double tol)
    : left_(p.ket1_span(), b, tol), right_(p.ket2_span(), a, tol) {}

double FiberMembership::residual(const Operator& t) const {
  return std::max(left_.residual(t), right_.residual(t));
}

PushedFactorization push_factorization_through_fiber(const RelativeTensorSpace& p,
                                                     const Factorization& gamma,
                                                     const OperatorSpan& fiber, double tol) {
  PushedFactorization out;
  Factorization pushed = p.push_left(gamma);
  out.report.add("[rho_" + pushed.name() + " (A*B)] in A*B",
                 span_inclusion_residual(span_product(pushed.rho_image(tol), fiber, tol), fiber), tol);
  out.report.add("[(A*B) rho_" + pushed.name() + "] in A*B",
                 span_inclusion_residual(span_product(fiber, pushed.rho_image(tol), tol), fiber), tol);
  if (out.report.passed()) out.factorization = std::move(pushed);
  return out;
}

MorphismCheck check_morphism(const LinearMap& pi, const Factorization& alpha,
                             const Factorization& gamma, const OperatorSpan* target, double tol) {
  MorphismCheck out;
  Report& rep = out.report;
  const OperatorSpan& a = pi.source;
  auto basis = a.elements();
  double hom = 0.0, star = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Operator& pa = pi.images[i];
    star = std::max(star, (pi.apply(basis[i].adjoint()) - pa.adjoint()).norm());
    for (std::size_t j = 0; j < basis.size(); ++j)
      hom = std::max(hom, (pi.apply(basis[i] * basis[j]) - pa * pi.images[j]).norm());
  }
  rep.add("multiplicative", hom, tol);
  rep.add("adjoint preserving", star, tol);
  if (target) {
    double out_of = 0.0;
    for (const auto& img : pi.images) out_of = std::max(out_of, target->residual(img));
    rep.add("lands in target", out_of, tol);
  }
  double rho_def = 0.0;
  const OperatorSpan& dual = alpha.base().dual();
  for (Index m = 0; m < dual.rank(); ++m) {
    Operator b = dual.element(m);
    Operator ra = alpha.rho(b), rg = gamma.rho(b);
    for (std::size_t i = 0; i < basis.size(); ++i)
      rho_def = std::max(rho_def, (pi.apply(basis[i] * ra) - pi.images[i] * rg).norm());
  }
  rep.add("pi(a rho(b)) = pi(a) rho(b)", rho_def, tol);

  const HilbertSpace &h = alpha.target(), &k = gamma.target();
  // a morphism carries nondegenerate algebras to nondegenerate ones
  if (image_rank(a, tol) == h.dim()) {
    const Index r = image_rank(span_normalize(k, k, pi.images, tol), tol);
    rep.add_flag("[pi(A) K] = K", r == k.dim(), "rank " + std::to_string(r) + " of " + std::to_string(k.dim()));
  }
  std::vector<Constraint> cs;
  for (const auto& xi : alpha.span().elements()) cs.push_back(times_in(h, k, xi, gamma.span()));
  for (const auto& g : gamma.span().elements()) cs.push_back(adjoint_times_in(h, k, g, alpha.span()));
  for (std::size_t i = 0; i < basis.size(); ++i) cs.push_back(intertwines(pi.images[i], basis[i]));
  out.intertwiners = solve_operator_constraints(h, k, cs, tol);
  rep.add("[L^pi alpha] = gamma",
          span_equal(span_product(out.intertwiners, alpha.span(), tol), gamma.span(), tol).residual, tol,
          "dim L^pi = " + std::to_string(out.intertwiners.rank()));
  return out;
}

InducedMorphism::InducedMorphism(RtpPtr src, RtpPtr dst, const std::vector<Operator>& xs,
                                 const std::vector<Operator>& ys, double tol)
    : src_(std::move(src)), dst_(std::move(dst)) {
  for (const auto& x : xs)
    for (const auto& y : ys) xy_.push_back(tensor_op(*src_, *dst_, x, y).op);
  const Index ds = src_->space().dim();
  cat_.resize(dst_->space().dim(), static_cast<Index>(xy_.size()) * ds);
  for (std::size_t i = 0; i < xy_.size(); ++i) cat_.middleCols(static_cast<Index>(i) * ds, ds) = xy_[i].matrix();
  pinv_ = pseudo_inverse(cat_, tol);
  unique_ = column_range(cat_, tol).cols() == dst_->space().dim();
}

Operator InducedMorphism::apply(const Operator& t, double* residual) const {
  const Index ds = src_->space().dim();
  Mat rhs(cat_.rows(), cat_.cols());
  for (std::size_t i = 0; i < xy_.size(); ++i)
    rhs.middleCols(static_cast<Index>(i) * ds, ds) = xy_[i].matrix() * t.matrix();
  Mat z = rhs * pinv_;
  if (residual) {
    double rn = rhs.norm();
    *residual = rn > 0 ? (z * cat_ - rhs).norm() / rn : 0.0;
  }
  return Operator(dst_->space(), dst_->space(), std::move(z));
}

Report check_hopf_bimodule(const RtpPtr& p, const OperatorSpan& a, const LinearMap& delta,
                           double tol) {
  Report rep;
  const Factorization &alpha = p->left(), &beta = p->right();
  FiberProduct aa = fiber_product(*p, a, a, tol);
  rep.add_flag("A*A nondegenerate", aa.nondegenerate,
               "dim A*A = " + std::to_string(aa.algebra.rank()) + ", rank " +
                   std::to_string(aa.image_rank) + " of " + std::to_string(p->space().dim()));
  double outside = 0.0;
  for (const auto& img : delta.images) outside = std::max(outside, aa.algebra.residual(img));
  rep.add("Delta(A) in A*A", outside, tol);

  Factorization aa_alpha = p->push_right(alpha);
  Factorization bb_beta = p->push_left(beta);
  MorphismCheck m1 = check_morphism(delta, alpha, aa_alpha, &aa.algebra, tol);
  MorphismCheck m2 = check_morphism(delta, beta, bb_beta, nullptr, tol);
  rep.merge(m1.report, "Delta morphism alpha");
  rep.merge(m2.report, "Delta morphism beta");

  Associator as = associator(p, p);
  rep.add("associator unitary", unitarity_residual(as.theta), tol);
  const HilbertSpace& h = alpha.target();
  std::vector<Operator> id{Operator::identity(h)};
  InducedMorphism left(p, as.left, m1.intertwiners.elements(), id, tol);
  InducedMorphism right(p, as.right, id, m2.intertwiners.elements(), tol);
  rep.add_flag("(Delta*id) unique", left.unique(), left.unique() ? "" : "uniqueness not certified");
  rep.add_flag("(id*Delta) unique", right.unique(), right.unique() ? "" : "uniqueness not certified");

  InducedMembership in_left_a(as.left->ket1_span(), a, tol);
  InducedMembership in_left_aa(as.left->ket2_span(), aa.algebra, tol);
  InducedMembership in_right_aa(as.right->ket1_span(), aa.algebra, tol);
  InducedMembership in_right_a(as.right->ket2_span(), a, tol);

  double coassoc = 0.0, solve_res = 0.0, contain = 0.0, slice = 0.0;
  for (std::size_t i = 0; i < delta.images.size(); ++i) {
    const Operator& t = delta.images[i];
    double r1 = 0.0, r2 = 0.0;
    Operator l = left.apply(t, &r1);
    Operator r = right.apply(t, &r2);
    solve_res = std::max({solve_res, r1, r2});
    const double scale = std::max(t.norm(), 1e-300);
    coassoc = std::max(coassoc, (as.theta * l * as.theta.adjoint() - r).norm() / scale);
    contain = std::max({contain, in_left_a.residual(l), in_left_aa.residual(l),
                        in_right_aa.residual(r), in_right_a.residual(r)});
    for (Index j = 0; j < beta.rank(); ++j)
      for (Index j2 = 0; j2 < beta.rank(); ++j2) {
        Operator lhs = as.left->ket2(j).adjoint() * l * as.left->ket2(j2);
        Operator rhs = delta.apply(p->ket2(j).adjoint() * t * p->ket2(j2));
        slice = std::max(slice, (lhs - rhs).norm() / scale);
      }
  }
  rep.add("induced morphisms well defined", solve_res, tol);
  rep.add("coassociativity", coassoc, tol);
  rep.add("iterated fiber products contain both sides", contain, tol);
  rep.add("slice identity", slice, tol);
  return rep;
}

}  // namespace cpmu
