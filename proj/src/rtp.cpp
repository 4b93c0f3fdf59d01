#include "cpmu/rtp.hpp"

#include <algorithm>

namespace cpmu {

Mat pseudo_inverse(const Mat& m, double tol) {
  if (m.size() == 0) return Mat::Zero(m.cols(), m.rows());
  const Svd d = svd(m, SvdVectors::thin, SvdVectors::thin);
  const auto& s = d.s;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) inv(i) = 1.0 / s(i);
  return d.v * inv.cast<cplx>().asDiagonal() * d.u.adjoint();
}

namespace {

Eigen::Map<const Mat> basis_matrix(const OperatorSpan& s, Index i) {
  return Eigen::Map<const Mat>(s.basis().col(i).data(), s.codomain().dim(), s.domain().dim());
}

double rel_residual(const Mat& x, const Mat& b, const Mat& c) {
  double cn = c.norm();
  double rn = (x * b - c).norm();
  return cn > 0 ? rn / cn : rn;
}

}  // namespace

Index RelativeTensorSpace::triple_index(Index i, Index k, Index j) const {
  return (i * base().space().dim() + k) * right_.rank() + j;
}

RtpPtr RelativeTensorSpace::build(const Factorization& left, const Factorization& right,
                                  double tol, const std::string& name) {
  if (!left.base().is_opposite_of(right.base(), tol))
    throw ShapeError("relative tensor product: right factorization must live over the opposite base");
  std::shared_ptr<RelativeTensorSpace> p(new RelativeTensorSpace());
  p->left_ = left;
  p->right_ = right;
  p->tol_ = tol;
  const OperatorSpan &a = left.span(), &b = right.span();
  const Index na = a.rank(), nb = b.rank(), d = left.base().space().dim();
  const Index dh = left.target().dim(), dk = right.target().dim();
  const Index n = na * d * nb;

  std::vector<Mat> pa(static_cast<std::size_t>(na * na)), qb(static_cast<std::size_t>(nb * nb));
  for (Index i = 0; i < na; ++i)
    for (Index i2 = 0; i2 < na; ++i2)
      pa[static_cast<std::size_t>(i * na + i2)] = basis_matrix(a, i).adjoint() * basis_matrix(a, i2);
  for (Index j = 0; j < nb; ++j)
    for (Index j2 = 0; j2 < nb; ++j2)
      qb[static_cast<std::size_t>(j * nb + j2)] = basis_matrix(b, j).adjoint() * basis_matrix(b, j2);

  Mat gram(n, n);
  Mat blk(d, d);
  for (Index i = 0; i < na; ++i)
    for (Index i2 = 0; i2 < na; ++i2) {
      const Mat& pm = pa[static_cast<std::size_t>(i * na + i2)];
      for (Index j = 0; j < nb; ++j)
        for (Index j2 = 0; j2 < nb; ++j2) {
          blk.noalias() = pm * qb[static_cast<std::size_t>(j * nb + j2)];
          for (Index k = 0; k < d; ++k)
            for (Index k2 = 0; k2 < d; ++k2)
              gram((i * d + k) * nb + j, (i2 * d + k2) * nb + j2) = blk(k, k2);
        }
    }
  GramQuotient q = gram_quotient(gram, tol);
  p->synthesis_ = std::move(q.synthesis);
  p->space_ = HilbertSpace::fresh(name, q.dim);
  const Index r = q.dim;

  // Legs from the spanning families {eta_j e_k} of K and {xi_i e_k} of H.
  Mat mk(dk, nb * d), mh(dh, na * d);
  for (Index j = 0; j < nb; ++j) mk.middleCols(j * d, d) = basis_matrix(b, j);
  for (Index i = 0; i < na; ++i) mh.middleCols(i * d, d) = basis_matrix(a, i);
  const Mat mk_pinv = pseudo_inverse(mk, tol), mh_pinv = pseudo_inverse(mh, tol);
  double worst = 0.0;
  for (Index i = 0; i < na; ++i) {
    Mat rhs(r, nb * d);
    for (Index j = 0; j < nb; ++j)
      for (Index k = 0; k < d; ++k) rhs.col(j * d + k) = p->synthesis_.col(p->triple_index(i, k, j));
    Mat x = rhs * mk_pinv;
    worst = std::max(worst, rel_residual(x, mk, rhs));
    p->ket1_.emplace_back(right.target(), p->space_, std::move(x));
  }
  for (Index j = 0; j < nb; ++j) {
    Mat rhs(r, na * d);
    for (Index i = 0; i < na; ++i)
      for (Index k = 0; k < d; ++k) rhs.col(i * d + k) = p->synthesis_.col(p->triple_index(i, k, j));
    Mat x = rhs * mh_pinv;
    worst = std::max(worst, rel_residual(x, mh, rhs));
    p->ket2_.emplace_back(left.target(), p->space_, std::move(x));
  }
  p->build_residual_ = worst;
  if (worst > tol)
    throw NumericError("relative tensor product: legs are inconsistent (residual " +
                       std::to_string(worst) + ")");

  p->ket1_cat_.resize(r, na * dk);
  for (Index i = 0; i < na; ++i) p->ket1_cat_.middleCols(i * dk, dk) = p->ket1_[static_cast<std::size_t>(i)].matrix();
  p->ket2_cat_.resize(r, nb * dh);
  for (Index j = 0; j < nb; ++j) p->ket2_cat_.middleCols(j * dh, dh) = p->ket2_[static_cast<std::size_t>(j)].matrix();
  p->ket1_pinv_ = pseudo_inverse(p->ket1_cat_, tol);
  p->ket2_pinv_ = pseudo_inverse(p->ket2_cat_, tol);
  return p;
}

Operator RelativeTensorSpace::ket1(const Operator& xi) const {
  double res = left_.span().residual(xi);
  if (res > tol_) throw PreconditionError("ket1: operator is not in the left factorization", res);
  Vec c = left_.span().coordinates(xi);
  Mat m = Mat::Zero(space_.dim(), right_space().dim());
  for (Index i = 0; i < c.size(); ++i) m += c(i) * ket1_[static_cast<std::size_t>(i)].matrix();
  return Operator(right_space(), space_, std::move(m));
}

Operator RelativeTensorSpace::ket2(const Operator& eta) const {
  double res = right_.span().residual(eta);
  if (res > tol_) throw PreconditionError("ket2: operator is not in the right factorization", res);
  Vec c = right_.span().coordinates(eta);
  Mat m = Mat::Zero(space_.dim(), left_space().dim());
  for (Index j = 0; j < c.size(); ++j) m += c(j) * ket2_[static_cast<std::size_t>(j)].matrix();
  return Operator(left_space(), space_, std::move(m));
}

OperatorSpan RelativeTensorSpace::ket1_span() const {
  return span_normalize(right_space(), space_, ket1_, tol_);
}

OperatorSpan RelativeTensorSpace::ket2_span() const {
  return span_normalize(left_space(), space_, ket2_, tol_);
}

RightSolve RelativeTensorSpace::solve_on_ket1(const Mat& rhs) const {
  RightSolve s;
  s.x = rhs * ket1_pinv_;
  s.residual = rel_residual(s.x, ket1_cat_, rhs);
  s.unique = true;
  return s;
}

RightSolve RelativeTensorSpace::solve_on_ket2(const Mat& rhs) const {
  RightSolve s;
  s.x = rhs * ket2_pinv_;
  s.residual = rel_residual(s.x, ket2_cat_, rhs);
  s.unique = true;
  return s;
}

Operator RelativeTensorSpace::left_leg(const Operator& s) const {
  if (s.domain() != left_space() || s.codomain() != left_space())
    throw ShapeError("left_leg: operator must act on the left factor");
  const Index dh = left_space().dim();
  Mat rhs(space_.dim(), right_.rank() * dh);
  for (Index j = 0; j < right_.rank(); ++j)
    rhs.middleCols(j * dh, dh) = ket2_[static_cast<std::size_t>(j)].matrix() * s.matrix();
  RightSolve sol = solve_on_ket2(rhs);
  if (sol.residual > tol_)
    throw PreconditionError("left_leg: operator does not commute with rho of the left factorization",
                            sol.residual);
  return Operator(space_, space_, std::move(sol.x));
}

Operator RelativeTensorSpace::right_leg(const Operator& t) const {
  if (t.domain() != right_space() || t.codomain() != right_space())
    throw ShapeError("right_leg: operator must act on the right factor");
  const Index dk = right_space().dim();
  Mat rhs(space_.dim(), left_.rank() * dk);
  for (Index i = 0; i < left_.rank(); ++i)
    rhs.middleCols(i * dk, dk) = ket1_[static_cast<std::size_t>(i)].matrix() * t.matrix();
  RightSolve sol = solve_on_ket1(rhs);
  if (sol.residual > tol_)
    throw PreconditionError("right_leg: operator does not commute with rho of the right factorization",
                            sol.residual);
  return Operator(space_, space_, std::move(sol.x));
}

namespace {

void require_compatible(const Factorization& a, const Factorization& b, double tol,
                        const char* what) {
  Report rep = check_compatible(a, b, tol);
  if (!rep.passed()) {
    double worst = 0.0;
    for (const auto& e : rep.entries()) worst = std::max(worst, e.residual);
    throw PreconditionError(std::string(what) + ": factorizations are not compatible", worst);
  }
}

}  // namespace

Factorization RelativeTensorSpace::push_left(const Factorization& gamma) const {
  if (gamma.target() != left_space()) throw ShapeError("push_left: factorization must live on the left factor");
  require_compatible(gamma, left_, tol_, "push_left");
  std::vector<Operator> gens;
  for (const auto& k2 : ket2_)
    for (const auto& g : gamma.span().elements()) gens.push_back(k2 * g);
  return make_factorization(span_normalize(gamma.base().space(), space_, gens, tol_), gamma.base(),
                            tol_, gamma.name() + "<" + right_.name());
}

Factorization RelativeTensorSpace::push_right(const Factorization& delta) const {
  if (delta.target() != right_space()) throw ShapeError("push_right: factorization must live on the right factor");
  require_compatible(delta, right_, tol_, "push_right");
  std::vector<Operator> gens;
  for (const auto& k1 : ket1_)
    for (const auto& g : delta.span().elements()) gens.push_back(k1 * g);
  return make_factorization(span_normalize(delta.base().space(), space_, gens, tol_), delta.base(),
                            tol_, left_.name() + ">" + delta.name());
}

// ------------------------------------------------------- internal tensors

InternalTensor left_internal_tensor(const RelativeTensorSpace& p) {
  const Factorization& a = p.left();
  const Index na = a.rank(), dk = p.right_space().dim();
  const Index n = na * dk;
  Mat gram(n, n);
  for (Index i = 0; i < na; ++i)
    for (Index i2 = 0; i2 < na; ++i2) {
      Operator b = a.span().element(i).adjoint() * a.span().element(i2);
      Mat r = p.right().rho(b).matrix();
      gram.block(i * dk, i2 * dk, dk, dk) = r;
    }
  GramQuotient q = gram_quotient(gram, p.tol());
  InternalTensor out;
  out.space = HilbertSpace::fresh("alpha|>K", q.dim);
  Mat rhs(p.space().dim(), n);
  for (Index i = 0; i < na; ++i) rhs.middleCols(i * dk, dk) = p.ket1(i).matrix();
  RightSolve s = solve_right(q.synthesis, rhs, p.tol());
  out.unitary = Operator(out.space, p.space(), std::move(s.x));
  return out;
}

InternalTensor right_internal_tensor(const RelativeTensorSpace& p) {
  const Factorization& b = p.right();
  const Index nb = b.rank(), dh = p.left_space().dim();
  const Index n = nb * dh;
  Mat gram(n, n);
  for (Index j = 0; j < nb; ++j)
    for (Index j2 = 0; j2 < nb; ++j2) {
      Operator c = b.span().element(j).adjoint() * b.span().element(j2);
      gram.block(j * dh, j2 * dh, dh, dh) = p.left().rho(c).matrix();
    }
  GramQuotient q = gram_quotient(gram, p.tol());
  InternalTensor out;
  out.space = HilbertSpace::fresh("H<|beta", q.dim);
  Mat rhs(p.space().dim(), n);
  for (Index j = 0; j < nb; ++j) rhs.middleCols(j * dh, dh) = p.ket2(j).matrix();
  RightSolve s = solve_right(q.synthesis, rhs, p.tol());
  out.unitary = Operator(out.space, p.space(), std::move(s.x));
  return out;
}

// -------------------------------------------------------- tensor operators

namespace {

double worst_outside(const OperatorSpan& target, const Operator& map, const OperatorSpan& src) {
  double w = 0.0;
  for (Index i = 0; i < src.rank(); ++i) w = std::max(w, target.residual(map * src.element(i)));
  return w;
}

double rho_defect(const Operator& t, const Factorization& from, const Factorization& to) {
  double w = 0.0;
  const double scale = std::max(1.0, t.norm());
  const OperatorSpan& dual = from.base().dual();
  for (Index m = 0; m < dual.rank(); ++m) {
    Operator b = dual.element(m);
    w = std::max(w, (t * from.rho(b) - to.rho(b) * t).norm() / scale);
  }
  return w;
}

}  // namespace

TensorOp tensor_op(const RelativeTensorSpace& src, const RelativeTensorSpace& dst,
                   const Operator& s, const Operator& t) {
  if (s.domain() != src.left_space() || s.codomain() != dst.left_space() ||
      t.domain() != src.right_space() || t.codomain() != dst.right_space())
    throw ShapeError("tensor_op: operators do not match the factors");
  const double tol = std::max(src.tol(), dst.tol());
  TensorOp out;
  // Case i): S in L(H_alpha, L_gamma), T rho_beta = rho_delta T.
  double pre1 = std::max({worst_outside(dst.left().span(), s, src.left().span()),
                          worst_outside(src.left().span(), s.adjoint(), dst.left().span()),
                          rho_defect(t, src.right(), dst.right())});
  double pre2 = std::max({worst_outside(dst.right().span(), t, src.right().span()),
                          worst_outside(src.right().span(), t.adjoint(), dst.right().span()),
                          rho_defect(s, src.left(), dst.left())});
  if (pre1 <= tol) {
    const Index dk = src.right_space().dim();
    Mat rhs(dst.space().dim(), src.left().rank() * dk);
    for (Index i = 0; i < src.left().rank(); ++i)
      rhs.middleCols(i * dk, dk) = (dst.ket1(s * src.left().span().element(i)) * t).matrix();
    RightSolve sol = src.solve_on_ket1(rhs);
    out.op = Operator(src.space(), dst.space(), std::move(sol.x));
    out.which = TensorCase::LeftIntertwiner;
    out.precondition_residual = pre1;
    out.residual = sol.residual;
  } else if (pre2 <= tol) {
    const Index dh = src.left_space().dim();
    Mat rhs(dst.space().dim(), src.right().rank() * dh);
    for (Index j = 0; j < src.right().rank(); ++j)
      rhs.middleCols(j * dh, dh) = (dst.ket2(t * src.right().span().element(j)) * s).matrix();
    RightSolve sol = src.solve_on_ket2(rhs);
    out.op = Operator(src.space(), dst.space(), std::move(sol.x));
    out.which = TensorCase::RightIntertwiner;
    out.precondition_residual = pre2;
    out.residual = sol.residual;
  } else {
    throw PreconditionError("tensor_op: neither factor intertwines the factorizations",
                            std::min(pre1, pre2));
  }
  if (out.residual > tol)
    throw PreconditionError("tensor_op: S (x) T is not well defined", out.residual);
  return out;
}

Flip flip(const RelativeTensorSpace& src, RtpPtr target) {
  Flip out;
  if (!target) target = RelativeTensorSpace::build(src.right(), src.left(), src.tol(), "flip");
  if (target->left_space() != src.right_space() || target->right_space() != src.left_space())
    throw ShapeError("flip: target does not have the factors swapped");
  // Sigma |xi>_1 = |xi>_2 on the target.
  const Index dk = src.right_space().dim();
  Mat rhs(target->space().dim(), src.left().rank() * dk);
  for (Index i = 0; i < src.left().rank(); ++i)
    rhs.middleCols(i * dk, dk) = target->ket2(src.left().span().element(i)).matrix();
  RightSolve sol = src.solve_on_ket1(rhs);
  out.sigma = Operator(src.space(), target->space(), std::move(sol.x));
  out.residual = sol.residual;
  out.target = std::move(target);
  return out;
}

UnitMap unit_left(const Factorization& beta) {
  UnitMap out;
  const double tol = kDefaultTol;
  Factorization b = base_factorization(beta.base().opposite(), tol);
  out.source = RelativeTensorSpace::build(b, beta, tol, "h(x)K");
  const Index dk = beta.target().dim();
  Mat rhs(dk, b.rank() * dk);
  for (Index i = 0; i < b.rank(); ++i) rhs.middleCols(i * dk, dk) = beta.rho(b.span().element(i)).matrix();
  RightSolve sol = out.source->solve_on_ket1(rhs);
  out.map = Operator(out.source->space(), beta.target(), std::move(sol.x));
  out.residual = sol.residual;
  return out;
}

UnitMap unit_right(const Factorization& alpha) {
  UnitMap out;
  const double tol = kDefaultTol;
  Factorization bd = dual_base_factorization(alpha.base(), tol);
  out.source = RelativeTensorSpace::build(alpha, bd, tol, "H(x)h");
  const Index dh = alpha.target().dim();
  Mat rhs(dh, bd.rank() * dh);
  for (Index j = 0; j < bd.rank(); ++j) rhs.middleCols(j * dh, dh) = alpha.rho(bd.span().element(j)).matrix();
  RightSolve sol = out.source->solve_on_ket2(rhs);
  out.map = Operator(out.source->space(), alpha.target(), std::move(sol.x));
  out.residual = sol.residual;
  return out;
}

Associator associator(const RtpPtr& hk, const RtpPtr& kl) {
  if (hk->right_space() != kl->left_space())
    throw ShapeError("associator: middle factors differ");
  const double tol = std::max(hk->tol(), kl->tol());
  Associator out;
  out.left = RelativeTensorSpace::build(hk->push_right(kl->left()), kl->right(), tol, "(HK)L");
  out.right = RelativeTensorSpace::build(hk->left(), kl->push_left(hk->right()), tol, "H(KL)");
  // (w <| eta) <| eps  ->  w <| (eta <| eps)
  const Index dh = hk->left_space().dim();
  const Index nb = hk->right().rank(), nd = kl->right().rank();
  Mat b(out.left->space().dim(), nb * nd * dh), rhs(out.right->space().dim(), nb * nd * dh);
  for (Index l = 0; l < nd; ++l)
    for (Index j = 0; j < nb; ++j) {
      const Index c = (l * nb + j) * dh;
      b.middleCols(c, dh) = (out.left->ket2(l) * hk->ket2(j)).matrix();
      Operator theta_elem = kl->ket2(l) * hk->right().span().element(j);
      rhs.middleCols(c, dh) = out.right->ket2(theta_elem).matrix();
    }
  RightSolve sol = solve_right(b, rhs, tol);
  out.theta = Operator(out.left->space(), out.right->space(), std::move(sol.x));
  out.residual = sol.residual;
  return out;
}

}  // namespace cpmu
