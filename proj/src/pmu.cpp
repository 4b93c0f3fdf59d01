#include "cpmu/pmu.hpp"

#include <algorithm>
#include <functional>

namespace cpmu {

PmuData make_pmu_data(const Factorization& alpha, const Factorization& beta_hat,
                      const Factorization& beta, double tol) {
  if (alpha.target() != beta_hat.target() || alpha.target() != beta.target())
    throw ShapeError("make_pmu_data: factorizations act on different spaces");
  if (!beta_hat.base().is_opposite_of(alpha.base(), tol) || !beta.base().is_opposite_of(alpha.base(), tol))
    throw ShapeError("make_pmu_data: beta_hat and beta must live over the opposite base");
  PmuData d{alpha, beta_hat, beta, nullptr, nullptr, {}};
  d.source = RelativeTensorSpace::build(beta_hat, alpha, tol, "Hs");
  d.range = RelativeTensorSpace::build(alpha, beta, tol, "Hr");
  return d;
}

namespace {

OperatorSpan span_of(const HilbertSpace& dom, const HilbertSpace& cod,
                     const std::vector<Operator>& gens, double tol) {
  return span_normalize(dom, cod, gens, tol);
}

double equal_residual(const OperatorSpan& a, const OperatorSpan& b, double tol) {
  return span_equal(a, b, tol).residual;
}

// Runs one arrow and rethrows failures with its name attached.
Operator arrow(const std::string& name, const std::function<Operator()>& f) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    throw PreconditionError(name + ": " + e.what(), e.residual);
  }
}

std::shared_ptr<PentagonFrame> build_frame(const PmuData& d, double tol) {
  auto f = std::make_shared<PentagonFrame>();
  const RtpPtr &ps = d.source, &pr = d.range;
  const Operator id = Operator::identity(d.space());
  const Operator& v = d.v;

  f->flipped_range = RelativeTensorSpace::build(d.beta, d.alpha, tol, "Hf");
  f->range_flip = flip(*pr, f->flipped_range);
  f->assoc_ss = associator(ps, ps);
  f->assoc_rs = associator(pr, ps);
  f->assoc_rr = associator(pr, pr);
  f->assoc_sf = associator(ps, f->flipped_range);
  f->t4p = RelativeTensorSpace::build(d.beta_hat, pr->push_right(d.alpha), tol, "t4p");
  f->t6 = RelativeTensorSpace::build(pr->push_left(d.beta_hat), d.alpha, tol, "t6");
  f->t7 = RelativeTensorSpace::build(ps->push_left(d.alpha), d.beta, tol, "t7");

  const auto& t1 = f->assoc_ss.left;
  f->v12_t1_t2 = arrow("V (x) Id on the upper left", [&] {
    return tensor_op(*t1, *f->assoc_rs.left, v, id).op;
  });
  f->v23_t2p_t3p = arrow("Id (x) V on the upper right", [&] {
    return tensor_op(*f->assoc_rs.right, *f->assoc_rr.right, id, v).op;
  });
  f->v23_t1p_t4p = arrow("Id (x) V on the lower left", [&] {
    return tensor_op(*f->assoc_ss.right, *f->t4p, id, v).op;
  });
  f->id_flip_t4p_t5p = arrow("Id (x) Sigma", [&] {
    return tensor_op(*f->t4p, *f->assoc_sf.right, id, f->range_flip.sigma).op;
  });
  f->v12_t5_t6 = arrow("V (x) Id on the bottom", [&] {
    return tensor_op(*f->assoc_sf.left, *f->t6, v, id).op;
  });
  f->v12_t7_t3 = arrow("V (x) Id on the lower right", [&] {
    return tensor_op(*f->t7, *f->assoc_rr.left, v, id).op;
  });

  // Sigma_23 : (z <| xi) <| eta -> (z <| eta) <| xi for xi in beta, eta in alpha.
  const Index dh = d.space().dim();
  const Index na = d.alpha.rank(), nb = d.beta.rank();
  Mat b(f->t6->space().dim(), na * nb * dh), c(f->t7->space().dim(), na * nb * dh);
  for (Index l = 0; l < na; ++l)
    for (Index j = 0; j < nb; ++j) {
      const Index col = (l * nb + j) * dh;
      b.middleCols(col, dh) = (f->t6->ket2(l) * pr->ket2(j)).matrix();
      c.middleCols(col, dh) = (f->t7->ket2(j) * ps->ket2(l)).matrix();
    }
  RightSolve s23 = solve_right(b, c, tol);
  f->sigma23_t6_t7 = Operator(f->t6->space(), f->t7->space(), std::move(s23.x));
  f->sigma23_residual = s23.residual;
  if (s23.residual > tol) throw PreconditionError("Sigma_23 is not well defined", s23.residual);

  f->upper = f->assoc_rr.theta.adjoint() * f->v23_t2p_t3p * f->assoc_rs.theta * f->v12_t1_t2;
  f->lower = f->v12_t7_t3 * f->sigma23_t6_t7 * f->v12_t5_t6 * f->assoc_sf.theta.adjoint() *
             f->id_flip_t4p_t5p * f->v23_t1p_t4p * f->assoc_ss.theta;
  f->v13_v23 = f->v12_t7_t3.adjoint() * f->upper;
  return f;
}

}  // namespace

PmuCheck check_pmu(const PmuData& d, double tol) {
  PmuCheck out;
  Report& rep = out.report;
  rep.add("V unitary", unitarity_residual(d.v), tol);
  rep.merge(check_compatible(d.alpha, d.beta_hat, tol), "alpha, beta_hat");
  rep.merge(check_compatible(d.alpha, d.beta, tol), "alpha, beta");
  rep.merge(check_compatible(d.beta_hat, d.beta, tol), "beta_hat, beta");
  if (!rep.passed()) return out;

  const RtpPtr &ps = d.source, &pr = d.range;
  auto transported = [&](const Factorization& f) { return span_product(d.v, f.span(), tol); };
  try {
    rep.add("V(a<a) = a>a", equal_residual(transported(ps->push_left(d.alpha)), pr->push_right(d.alpha).span(), tol), tol);
    rep.add("V(b^>b) = b^<b", equal_residual(transported(ps->push_right(d.beta)), pr->push_left(d.beta_hat).span(), tol), tol);
    rep.add("V(b^>b^) = a>b^", equal_residual(transported(ps->push_right(d.beta_hat)), pr->push_right(d.beta_hat).span(), tol), tol);
    rep.add("V(b<a) = b<b", equal_residual(transported(ps->push_left(d.beta)), pr->push_left(d.beta).span(), tol), tol);
  } catch (const PreconditionError& e) {
    rep.add("intertwining", e.residual, tol, e.what());
    return out;
  }
  if (!rep.passed()) return out;

  try {
    auto frame = build_frame(d, tol);
    double assoc = std::max({unitarity_residual(frame->assoc_ss.theta), unitarity_residual(frame->assoc_rs.theta),
                             unitarity_residual(frame->assoc_rr.theta), unitarity_residual(frame->assoc_sf.theta)});
    rep.add("associators unitary", assoc, tol);
    rep.add("Sigma_23 unitary", unitarity_residual(frame->sigma23_t6_t7), tol);
    rep.add("pentagon", distance(frame->upper, frame->lower), tol,
            "triple space dim " + std::to_string(frame->upper.domain().dim()));
    out.frame = std::move(frame);
  } catch (const PreconditionError& e) {
    rep.add("pentagon arrows well defined", e.residual, tol, e.what());
  } catch (const NumericError& e) {
    rep.add_flag("pentagon arrows well defined", false, e.what());
  }
  return out;
}

PmuData opposite(const PmuData& d, double tol) {
  PmuData op{d.alpha, d.beta, d.beta_hat, nullptr, nullptr, {}};
  Flip fs = flip(*d.source);
  op.range = fs.target;
  op.source = RelativeTensorSpace::build(d.beta, d.alpha, tol, "Hs_op");
  Flip fr = flip(*op.source, d.range);
  op.v = fs.sigma * d.v.adjoint() * fr.sigma;
  return op;
}

Regularity check_regular(const PmuData& d, double tol) {
  Regularity out;
  std::vector<Operator> gens;
  for (Index i = 0; i < d.alpha.rank(); ++i)
    for (Index j = 0; j < d.alpha.rank(); ++j)
      gens.push_back(d.range->ket1(i).adjoint() * d.v * d.source->ket2(j));
  out.c = span_of(d.space(), d.space(), gens, tol);
  OperatorSpan aa = span_product(d.alpha.span(), d.alpha.span().adjoint(), tol);
  out.residual = equal_residual(out.c, aa, tol);
  out.regular = out.residual <= tol;
  return out;
}

OperatorSpan leg_hat(const PmuData& d, double tol) {
  std::vector<Operator> gens;
  for (Index j = 0; j < d.beta.rank(); ++j)
    for (Index i = 0; i < d.alpha.rank(); ++i)
      gens.push_back(d.range->ket2(j).adjoint() * d.v * d.source->ket2(i));
  return span_of(d.space(), d.space(), gens, tol);
}

OperatorSpan leg_a(const PmuData& d, double tol) {
  std::vector<Operator> gens;
  for (Index i = 0; i < d.alpha.rank(); ++i)
    for (Index j = 0; j < d.beta_hat.rank(); ++j)
      gens.push_back(d.range->ket1(i).adjoint() * d.v * d.source->ket1(j));
  return span_of(d.space(), d.space(), gens, tol);
}

namespace {

void leg_checks(Report& rep, const std::string& n, const OperatorSpan& a, const Factorization& carrier,
                const Factorization& other, const Factorization& alpha, bool regular, double tol) {
  rep.add("[" + n + n + "] = " + n, equal_residual(span_product(a, a, tol), a, tol), tol);
  if (regular) rep.add(n + "* = " + n, equal_residual(a.adjoint(), a, tol), tol);
  OperatorSpan ro = other.rho_image(tol), ra = alpha.rho_image(tol);
  rep.add("[" + n + " rho_" + other.name() + "] = " + n, equal_residual(span_product(a, ro, tol), a, tol), tol);
  rep.add("[rho_" + other.name() + " " + n + "] = " + n, equal_residual(span_product(ro, a, tol), a, tol), tol);
  rep.add("[" + n + " rho_alpha] = " + n, equal_residual(span_product(a, ra, tol), a, tol), tol);
  rep.add("[rho_alpha " + n + "] = " + n, equal_residual(span_product(ra, a, tol), a, tol), tol);
  const OperatorSpan& c = carrier.span();
  rep.add("[" + n + " " + carrier.name() + "] = " + carrier.name(),
          equal_residual(span_product(a, c, tol), c, tol), tol);
  rep.add("[" + n + "* " + carrier.name() + "] = " + carrier.name(),
          equal_residual(span_product(a.adjoint(), c, tol), c, tol), tol);
  Index r = image_rank(a, tol);
  rep.add_flag("[" + n + " H] = H", r == a.codomain().dim(),
               "rank " + std::to_string(r) + " of " + std::to_string(a.codomain().dim()));
}

}  // namespace

Report check_legs(const PmuData& d, const OperatorSpan& a_hat, const OperatorSpan& a, bool regular,
                  double tol) {
  Report rep;
  // A^ is a module for rho_beta_hat and rho_alpha and sits in L(H_beta);
  // A likewise for rho_beta and rho_alpha inside L(H_beta_hat).
  leg_checks(rep, "A^", a_hat, d.beta, d.beta_hat, d.alpha, regular, tol);
  leg_checks(rep, "A", a, d.beta_hat, d.beta, d.alpha, regular, tol);
  return rep;
}

Operator delta_hat(const PmuData& d, const Operator& y) {
  return d.v.adjoint() * d.range->right_leg(y) * d.v;
}

Operator delta(const PmuData& d, const Operator& z) {
  return d.v * d.source->left_leg(z) * d.v.adjoint();
}

LinearMap delta_hat_map(const PmuData& d, const OperatorSpan& a_hat) {
  return make_linear_map(a_hat, [&](const Operator& y) { return delta_hat(d, y); });
}

LinearMap delta_map(const PmuData& d, const OperatorSpan& a) {
  return make_linear_map(a, [&](const Operator& z) { return delta(d, z); });
}

Report check_delta_transport(const PmuData& d, double tol) {
  Report rep;
  auto law = [&](const std::string& name, const Factorization& f, const Factorization& pushed,
                 const std::function<Operator(const Operator&)>& map) {
    double w = 0.0;
    const OperatorSpan& dual = f.base().dual();
    for (Index m = 0; m < dual.rank(); ++m) {
      Operator b = dual.element(m);
      w = std::max(w, distance(map(f.rho(b)), pushed.rho(b)));
    }
    rep.add(name, w, tol);
  };
  auto dh = [&](const Operator& y) { return delta_hat(d, y); };
  auto dd = [&](const Operator& z) { return delta(d, z); };
  law("Delta^(rho_alpha) = rho_a<a", d.alpha, d.source->push_left(d.alpha), dh);
  law("Delta^(rho_b^) = rho_b^>b^", d.beta_hat, d.source->push_right(d.beta_hat), dh);
  law("Delta(rho_beta) = rho_b<b", d.beta, d.range->push_left(d.beta), dd);
  law("Delta(rho_alpha) = rho_a>a", d.alpha, d.range->push_right(d.alpha), dd);
  return rep;
}

Report verify_hopf(const PmuData& d, const PentagonFrame& frame, double tol) {
  Regularity reg = check_regular(d, tol);
  if (!reg.regular)
    throw PreconditionError("verify_hopf: V is not regular (see check_regular)", reg.residual);
  Report rep;
  OperatorSpan a_hat = leg_hat(d, tol), a = leg_a(d, tol);
  LinearMap dh = delta_hat_map(d, a_hat);
  LinearMap dd = delta_map(d, a);
  rep.merge(check_hopf_bimodule(d.source, a_hat, dh, tol), "A^");
  rep.merge(check_hopf_bimodule(d.range, a, dd, tol), "A");

  OperatorSpan image = span_normalize(d.source->space(), d.source->space(), dh.images, tol);
  OperatorSpan ket_alpha = d.source->ket2_span();
  rep.add("[Delta^(A^) |alpha>_2] = [|alpha>_2 A^]",
          equal_residual(span_product(image, ket_alpha, tol), span_product(ket_alpha, a_hat, tol), tol), tol);

  std::vector<Operator> gens;
  const RtpPtr& t1 = frame.assoc_ss.left;
  for (Index j = 0; j < d.beta.rank(); ++j)
    for (Index l = 0; l < d.alpha.rank(); ++l)
      gens.push_back(frame.t7->ket2(j).adjoint() * frame.v13_v23 * t1->ket2(l));
  OperatorSpan composed = span_normalize(d.source->space(), d.source->space(), gens, tol);
  rep.add("Delta^(A^) = [<beta|_3 V_13 V_23 |alpha>_3]", equal_residual(composed, image, tol), tol);
  return rep;
}

}  // namespace cpmu
