#include "cpmu/cstar_base.hpp"

#include <algorithm>

namespace cpmu {

CStarBase::CStarBase(HilbertSpace h, OperatorSpan b, OperatorSpan b_dagger)
    : h_(std::move(h)), b_(std::move(b)), bdag_(std::move(b_dagger)) {
  for (const OperatorSpan* s : {&b_, &bdag_})
    if (s->domain() != h_ || s->codomain() != h_)
      throw ShapeError("CStarBase: algebras must act on the base space");
}

CStarBase CStarBase::opposite() const { return CStarBase(h_, bdag_, b_); }

bool CStarBase::same_as(const CStarBase& other, double tol) const {
  if (h_ != other.h_) return false;
  auto same = [tol](const OperatorSpan& x, const OperatorSpan& y) {
    if (&x.basis() == &y.basis()) return true;
    return x.rank() == y.rank() && span_equal(x, y, tol).holds;
  };
  return same(b_, other.b_) && same(bdag_, other.bdag_);
}

Report CStarBase::validate(double tol) const {
  Report rep;
  for (auto [name, s] : {std::pair{"B", &b_}, std::pair{"B_dagger", &bdag_}}) {
    const std::string n = name;
    rep.add(n + " product closed", span_inclusion_residual(span_product(*s, *s, tol), *s), tol);
    rep.add(n + " adjoint closed", span_equal(s->adjoint(), *s, tol).residual, tol);
    Index r = image_rank(*s, tol);
    rep.add_flag(n + " nondegenerate", r == h_.dim(),
                 "rank " + std::to_string(r) + " of " + std::to_string(h_.dim()));
  }
  double comm = 0.0;
  for (Index i = 0; i < b_.rank(); ++i)
    for (Index j = 0; j < bdag_.rank(); ++j) {
      Operator x = b_.element(i), y = bdag_.element(j);
      comm = std::max(comm, (x * y - y * x).hs_norm());
    }
  rep.add("B and B_dagger commute", comm, tol);
  return rep;
}

CStarBase base_from_weight(const std::vector<std::string>& labels,
                           const std::vector<double>& weights, const std::string& name) {
  HilbertSpace h(name, labels, weights);
  const Index n = h.dim();
  Mat basis = Mat::Zero(n * n, n);
  for (Index u = 0; u < n; ++u) basis(u * n + u, u) = 1.0;
  OperatorSpan diag(h, h, basis);
  return CStarBase(h, diag, diag);
}

Operator Factorization::rho(const Operator& b_dagger) const {
  Vec c = base_.dual().coordinates(b_dagger);
  Operator out = Operator::zero(h_, h_);
  for (Index i = 0; i < c.size(); ++i) out += c(i) * rho_[static_cast<std::size_t>(i)];
  return out;
}

OperatorSpan Factorization::rho_image(double tol) const {
  if (rho_.empty()) return OperatorSpan(h_, h_, Mat(h_.dim() * h_.dim(), 0));
  return span_normalize(h_, h_, rho_, tol);
}

struct FactorizationBuilder {
  static Factorization make(const CStarBase& base, const OperatorSpan& span,
                            std::vector<Operator> rho, std::string name) {
    Factorization f;
    f.base_ = base;
    f.h_ = span.codomain();
    f.span_ = span;
    f.rho_ = std::move(rho);
    f.name_ = std::move(name);
    return f;
  }
};

FactorizationCheck check_factorization(const OperatorSpan& alpha, const CStarBase& base,
                                       double tol, std::string name) {
  FactorizationCheck out;
  Report& rep = out.report;
  if (alpha.domain() != base.space())
    throw ShapeError("check_factorization: " + name + " must be defined on the base space");
  const HilbertSpace& h = alpha.codomain();

  rep.add("[a*a] = B", span_equal(span_product(alpha.adjoint(), alpha, tol), base.algebra(), tol).residual, tol);
  rep.add("[aB] = a", span_equal(span_product(alpha, base.algebra(), tol), alpha, tol).residual, tol);
  Mat m = concat_columns(alpha);
  Index r = column_range(m, tol).cols();
  rep.add_flag("[a h] = H", r == h.dim(), "rank " + std::to_string(r) + " of " + std::to_string(h.dim()));

  // rho(b') xi z = xi b' z on the spanning family {xi_i e_k}.
  std::vector<Operator> rho;
  double rho_res = 0.0;
  const Index dh = base.space().dim();
  for (Index l = 0; l < base.dual().rank(); ++l) {
    Operator bl = base.dual().element(l);
    Mat rhs(h.dim(), alpha.rank() * dh);
    for (Index i = 0; i < alpha.rank(); ++i)
      rhs.middleCols(i * dh, dh) =
          Eigen::Map<const Mat>(alpha.basis().col(i).data(), h.dim(), dh) * bl.matrix();
    RightSolve s = solve_right(m, rhs, tol);
    rho_res = std::max(rho_res, s.residual);
    rho.emplace_back(h, h, std::move(s.x));
  }
  rep.add("rho well defined", rho_res, tol);
  if (rep.passed())
    out.factorization = FactorizationBuilder::make(base, alpha, std::move(rho), std::move(name));
  return out;
}

Factorization make_factorization(const OperatorSpan& alpha, const CStarBase& base, double tol,
                                 std::string name) {
  auto chk = check_factorization(alpha, base, tol, name);
  if (!chk.factorization) {
    double worst = 0.0;
    std::string what;
    for (const auto& e : chk.report.entries())
      if (!e.passed) {
        worst = std::max(worst, e.residual);
        what += (what.empty() ? "" : "; ") + e.name;
      }
    throw PreconditionError(name + " is not a C*-factorization: " + what, worst);
  }
  return *chk.factorization;
}

Factorization base_factorization(const CStarBase& base, double tol) {
  return make_factorization(base.algebra(), base, tol, "B");
}

Factorization dual_base_factorization(const CStarBase& base, double tol) {
  return make_factorization(base.dual(), base.opposite(), tol, "B_dagger");
}

Report check_compatible(const Factorization& a, const Factorization& b, double tol) {
  Report rep;
  if (a.target() != b.target()) throw ShapeError("check_compatible: factorizations act on different spaces");
  rep.add("[rho_a b] = b", span_inclusion_residual(span_product(a.rho_image(tol), b.span(), tol), b.span()), tol);
  rep.add("[rho_b a] = a", span_inclusion_residual(span_product(b.rho_image(tol), a.span(), tol), a.span()), tol);
  double comm = 0.0;
  for (const auto& x : a.rho_basis())
    for (const auto& y : b.rho_basis()) comm = std::max(comm, (x * y - y * x).norm());
  rep.add("rho_a and rho_b commute", comm, tol);
  return rep;
}

OperatorSpan intertwiner_space(const Factorization& a, const Factorization& b, double tol) {
  const HilbertSpace &h = a.target(), &k = b.target();
  std::vector<Constraint> cs;
  for (const auto& xi : a.span().elements()) cs.push_back(times_in(h, k, xi, b.span()));
  for (const auto& eta : b.span().elements()) cs.push_back(adjoint_times_in(h, k, eta, a.span()));
  return solve_operator_constraints(h, k, cs, tol);
}

Factorization push_unitary(const Operator& u, const Factorization& a, double tol) {
  return make_factorization(span_product(u, a.span(), tol), a.base(), tol, "U" + a.name());
}

}  // namespace cpmu
