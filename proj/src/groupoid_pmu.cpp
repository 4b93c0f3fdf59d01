#include "cpmu/groupoid_pmu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cpmu {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

Operator unit_projection(const HilbertSpace& h, Index u) {
  Mat c = Mat::Zero(h.dim(), h.dim());
  c(u, u) = 1.0;
  return Operator::from_coefficients(h, h, c);
}

Operator diagonal(const HilbertSpace& h, const std::vector<cplx>& d) {
  Mat c = Mat::Zero(h.dim(), h.dim());
  for (Index i = 0; i < h.dim(); ++i) c(i, i) = d[static_cast<std::size_t>(i)];
  return Operator::from_coefficients(h, h, c);
}

double max_entry_error(const Operator& a, const Operator& b) {
  return (a.coefficients() - b.coefficients()).cwiseAbs().maxCoeff();
}

}  // namespace

Operator embed_j(const FiniteGroupoid& g, const GroupoidEmbeddings& e, int x) {
  Mat c = Mat::Zero(g.size(), g.unit_count());
  c(x, g.unit_position(g.range[at(x)])) = 1.0;
  return Operator::from_coefficients(e.base.space(), e.h, c);
}

Operator embed_j_hat(const FiniteGroupoid& g, const GroupoidMeasure& m, const GroupoidEmbeddings& e,
                     int x) {
  Mat c = Mat::Zero(g.size(), g.unit_count());
  c(x, g.unit_position(g.source[at(x)])) = 1.0 / std::sqrt(m.modular[at(x)]);
  return Operator::from_coefficients(e.base.space(), e.h, c);
}

GroupoidEmbeddings build_embeddings(const FiniteGroupoid& g, const GroupoidMeasure& m, double tol) {
  GroupoidEmbeddings e;
  std::vector<std::string> unit_labels;
  for (int u : g.units) unit_labels.push_back(g.arrows[at(u)]);
  e.base = base_from_weight(unit_labels, m.unit_weights, "h");
  e.h = HilbertSpace("H", g.arrows, m.nu);
  const HilbertSpace& hb = e.base.space();

  std::vector<Operator> js, jhats;
  for (int x = 0; x < g.size(); ++x) {
    js.push_back(embed_j(g, e, x));
    jhats.push_back(embed_j_hat(g, m, e, x));
  }
  e.alpha = make_factorization(span_normalize(hb, e.h, js, tol), e.base, tol, "alpha");
  e.beta_hat = make_factorization(span_normalize(hb, e.h, jhats, tol), e.base.opposite(), tol, "beta_hat");
  e.beta = make_factorization(e.alpha.span(), e.base.opposite(), tol, "beta");
  e.report.merge(check_compatible(e.alpha, e.beta_hat, tol), "alpha, beta_hat");

  // j and j^ against the module inner products of L^2(G, lambda) and
  // L^2(G, lambda^{-1}): <j(d_x'), j(d_x)> = [x = x'] lambda(x) at r(x).
  double iso = 0.0, iso_hat = 0.0;
  for (int x = 0; x < g.size(); ++x)
    for (int x2 = 0; x2 < g.size(); ++x2) {
      std::vector<cplx> f(at(g.unit_count()), 0.0), fh(at(g.unit_count()), 0.0);
      if (x == x2) {
        f[at(g.unit_position(g.range[at(x)]))] = m.haar[at(x)];
        fh[at(g.unit_position(g.source[at(x)]))] = m.haar[at(g.inverse[at(x)])];
      }
      iso = std::max(iso, distance(js[at(x2)].adjoint() * js[at(x)], diagonal(hb, f)));
      iso_hat = std::max(iso_hat, distance(jhats[at(x2)].adjoint() * jhats[at(x)], diagonal(hb, fh)));
    }
  e.report.add("j isometric", iso, tol);
  e.report.add("j^ isometric", iso_hat, tol);

  // rho_alpha = r and rho_beta_hat = s as multiplication operators.
  double rr = 0.0, rs = 0.0;
  for (int k = 0; k < g.unit_count(); ++k) {
    Operator p = unit_projection(hb, k);
    std::vector<cplx> by_range(at(g.size())), by_source(at(g.size()));
    for (int x = 0; x < g.size(); ++x) {
      by_range[at(x)] = g.unit_position(g.range[at(x)]) == k ? 1.0 : 0.0;
      by_source[at(x)] = g.unit_position(g.source[at(x)]) == k ? 1.0 : 0.0;
    }
    rr = std::max(rr, distance(e.alpha.rho(p), diagonal(e.h, by_range)));
    rs = std::max(rs, distance(e.beta_hat.rho(p), diagonal(e.h, by_source)));
  }
  e.report.add("rho_alpha = r", rr, tol);
  e.report.add("rho_beta_hat = s", rs, tol);
  return e;
}

namespace {

HilbertSpace pair_space(const std::string& name, const FiniteGroupoid& g, const GroupoidMeasure& m,
                        const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::string> labels;
  std::vector<double> weights;
  for (auto [x, y] : pairs) {
    labels.push_back("(" + g.arrows[at(x)] + "," + g.arrows[at(y)] + ")");
    weights.push_back(m.nu[at(x)] * m.haar[at(y)]);
  }
  return HilbertSpace(name, std::move(labels), std::move(weights));
}

// Unitary from the relative tensor product onto functions on pairs, fixed by
// xi (x) e_k (x) eta -> (x, y) -> (xi e_k)(x) eta~(y), where eta = j(eta~).
Operator identify(const FiniteGroupoid& g, const RelativeTensorSpace& p, const HilbertSpace& l2,
                  const std::vector<std::pair<int, int>>& pairs, double tol, double* residual) {
  const OperatorSpan &left = p.left().span(), &right = p.right().span();
  const Eigen::VectorXd& sw_h = p.base().space().sqrt_weights();
  const Eigen::VectorXd& sw_l2 = l2.sqrt_weights();
  std::vector<Mat> lc, rc;
  for (const auto& op : left.elements()) lc.push_back(op.coefficients());
  for (const auto& op : right.elements()) rc.push_back(op.coefficients());
  Mat f(l2.dim(), p.triple_count());
  for (Index i = 0; i < left.rank(); ++i)
    for (Index k = 0; k < p.base().space().dim(); ++k)
      for (Index j = 0; j < right.rank(); ++j) {
        const Index t = p.triple_index(i, k, j);
        for (std::size_t q = 0; q < pairs.size(); ++q) {
          auto [x, y] = pairs[q];
          cplx v = lc[at(static_cast<int>(i))](x, k) / sw_h(k) *
                   rc[at(static_cast<int>(j))](y, g.unit_position(g.range[at(y)]));
          f(static_cast<Index>(q), t) = v * sw_l2(static_cast<Index>(q));
        }
      }
  RightSolve s = solve_right(p.synthesis(), f, tol);
  if (residual) *residual = s.residual;
  return Operator(p.space(), l2, std::move(s.x));
}

}  // namespace

GroupoidUnitary build_groupoid_unitary(const FiniteGroupoid& g, const GroupoidMeasure& m, double tol) {
  GroupoidUnitary u;
  u.g = g;
  u.m = m;
  u.emb = build_embeddings(g, m, tol);
  u.report.merge(u.emb.report, "embeddings");
  u.pmu = make_pmu_data(u.emb.alpha, u.emb.beta_hat, u.emb.beta, tol);

  u.pairs_sr = composable_pairs(g, PairMode::SourceRange);
  u.pairs_rr = composable_pairs(g, PairMode::RangeRange);
  u.l2_sr = pair_space("L2(G2sr)", g, m, u.pairs_sr);
  u.l2_rr = pair_space("L2(G2rr)", g, m, u.pairs_rr);
  u.report.add_flag("dim source = |G2sr|", u.pmu.source->space().dim() == u.l2_sr.dim(),
                    std::to_string(u.pmu.source->space().dim()) + " vs " + std::to_string(u.l2_sr.dim()));
  u.report.add_flag("dim range = |G2rr|", u.pmu.range->space().dim() == u.l2_rr.dim(),
                    std::to_string(u.pmu.range->space().dim()) + " vs " + std::to_string(u.l2_rr.dim()));
  if (!u.report.passed()) return u;

  double rs = 0.0, rr = 0.0;
  u.ident_source = identify(g, *u.pmu.source, u.l2_sr, u.pairs_sr, tol, &rs);
  u.ident_range = identify(g, *u.pmu.range, u.l2_rr, u.pairs_rr, tol, &rr);
  u.report.add("source identification well defined", rs, tol);
  u.report.add("range identification well defined", rr, tol);
  u.report.add("source identification unitary", unitarity_residual(u.ident_source), tol);
  u.report.add("range identification unitary", unitarity_residual(u.ident_range), tol);

  std::map<std::pair<int, int>, Index> rr_index;
  for (std::size_t q = 0; q < u.pairs_rr.size(); ++q) rr_index[u.pairs_rr[q]] = static_cast<Index>(q);
  Mat c = Mat::Zero(u.l2_rr.dim(), u.l2_sr.dim());
  for (std::size_t q = 0; q < u.pairs_sr.size(); ++q) {
    auto [x, z] = u.pairs_sr[q];
    c(rr_index.at({x, g.mul(x, z)}), static_cast<Index>(q)) = 1.0;
  }
  u.v_fun = Operator::from_coefficients(u.l2_sr, u.l2_rr, c);
  u.pmu.v = u.ident_range.adjoint() * u.v_fun * u.ident_source;
  u.report.add("V unitary", unitarity_residual(u.pmu.v), tol);
  return u;
}

Operator swap_candidate(const GroupoidUnitary& u) {
  if (u.g.unit_count() != 1) throw PreconditionError("swap_candidate: only defined for groups", 0.0);
  std::map<std::pair<int, int>, Index> rr_index;
  for (std::size_t q = 0; q < u.pairs_rr.size(); ++q) rr_index[u.pairs_rr[q]] = static_cast<Index>(q);
  Mat c = Mat::Zero(u.l2_rr.dim(), u.l2_sr.dim());
  for (std::size_t q = 0; q < u.pairs_sr.size(); ++q) {
    auto [x, y] = u.pairs_sr[q];
    c(rr_index.at({y, x}), static_cast<Index>(q)) = 1.0;
  }
  return u.ident_range.adjoint() * Operator::from_coefficients(u.l2_sr, u.l2_rr, c) * u.ident_source;
}

Operator mult_rep(const GroupoidUnitary& u, const std::vector<cplx>& f) {
  return diagonal(u.emb.h, f);
}

Operator conv_op(const GroupoidUnitary& u, const std::vector<cplx>& gf) {
  const FiniteGroupoid& g = u.g;
  Mat c = Mat::Zero(g.size(), g.size());
  for (int y = 0; y < g.size(); ++y)
    for (int x = 0; x < g.size(); ++x) {
      if (g.range[at(x)] != g.range[at(y)]) continue;
      const int xy = g.mul(g.inverse[at(x)], y);
      c(y, xy) += gf[at(x)] / std::sqrt(u.m.modular[at(x)]) * u.m.haar[at(x)];
    }
  return Operator::from_coefficients(u.emb.h, u.emb.h, c);
}

Operator expected_delta_hat(const GroupoidUnitary& u, const std::vector<cplx>& f) {
  std::vector<cplx> d;
  for (auto [x, y] : u.pairs_sr) d.push_back(f[at(u.g.mul(x, y))]);
  return diagonal(u.l2_sr, d);
}

Operator expected_delta(const GroupoidUnitary& u, const std::vector<cplx>& gf) {
  const FiniteGroupoid& g = u.g;
  std::map<std::pair<int, int>, Index> idx;
  for (std::size_t q = 0; q < u.pairs_rr.size(); ++q) idx[u.pairs_rr[q]] = static_cast<Index>(q);
  Mat c = Mat::Zero(u.l2_rr.dim(), u.l2_rr.dim());
  for (std::size_t q = 0; q < u.pairs_rr.size(); ++q) {
    auto [x, y] = u.pairs_rr[q];
    for (int w = 0; w < g.size(); ++w) {
      if (g.range[at(w)] != g.range[at(x)]) continue;
      const int wi = g.inverse[at(w)];
      c(static_cast<Index>(q), idx.at({g.mul(wi, x), g.mul(wi, y)})) +=
          gf[at(w)] / std::sqrt(u.m.modular[at(w)]) * u.m.haar[at(w)];
    }
  }
  return Operator::from_coefficients(u.l2_rr, u.l2_rr, c);
}

Index center_dim(const OperatorSpan& a, double tol) {
  std::vector<Constraint> cs;
  for (const auto& x : a.elements()) cs.push_back(intertwines(x, x));
  OperatorSpan comm = solve_operator_constraints(a.domain(), a.codomain(), cs, tol);
  return span_intersect(a, comm, tol).rank();
}

Report identify_legs(const GroupoidUnitary& u, double tol) {
  Report rep;
  const int n = u.g.size();
  OperatorSpan a_hat = leg_hat(u.pmu, tol), a = leg_a(u.pmu, tol);
  std::vector<Operator> ms, ls;
  std::vector<std::vector<cplx>> deltas;
  for (int x = 0; x < n; ++x) {
    std::vector<cplx> d(at(n), 0.0);
    d[at(x)] = 1.0;
    ms.push_back(mult_rep(u, d));
    ls.push_back(conv_op(u, d));
    deltas.push_back(std::move(d));
  }
  OperatorSpan m_span = span_normalize(ms, tol), l_span = span_normalize(ls, tol);
  rep.add("A^ = m(C(G))", span_equal(a_hat, m_span, tol).residual, tol,
          "dim A^ = " + std::to_string(a_hat.rank()));
  rep.add_flag("dim A^ = |G|", a_hat.rank() == n, std::to_string(a_hat.rank()));
  rep.add("A = C*_r(G)", span_equal(a, l_span, tol).residual, tol, "dim A = " + std::to_string(a.rank()));

  double dh_err = 0.0, d_err = 0.0;
  for (int x = 0; x < n; ++x) {
    Operator got = u.ident_source * delta_hat(u.pmu, ms[at(x)]) * u.ident_source.adjoint();
    dh_err = std::max(dh_err, max_entry_error(got, expected_delta_hat(u, deltas[at(x)])));
    Operator got2 = u.ident_range * delta(u.pmu, ls[at(x)]) * u.ident_range.adjoint();
    d_err = std::max(d_err, max_entry_error(got2, expected_delta(u, deltas[at(x)])));
  }
  rep.add("Delta^(m(f)) = m(f(xy))", dh_err, tol);
  rep.add("Delta(L(g)) = convolution formula", d_err, tol);
  return rep;
}

}  // namespace cpmu
