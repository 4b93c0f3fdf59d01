#pragma once

#include "cpmu/cstar_base.hpp"
#include "cpmu/groupoid.hpp"
#include "cpmu/measure.hpp"
#include "cpmu/pmu.hpp"
#include "cpmu/report.hpp"

#include <utility>
#include <vector>

namespace cpmu {

/// Base h = l^2(G^0, mu), H = l^2(G, nu) and the two embeddings
/// (j(xi) z)(x) = xi(x) z(r(x)) and (j^(xi) z)(x) = xi(x) D^{-1/2}(x) z(s(x)).
struct GroupoidEmbeddings {
  CStarBase base;
  HilbertSpace h;
  Factorization alpha;     // image of j, over the base
  Factorization beta_hat;  // image of j^, over the opposite base
  Factorization beta;      // alpha again, over the opposite base
  Report report;
};
GroupoidEmbeddings build_embeddings(const FiniteGroupoid& g, const GroupoidMeasure& m,
                                    double tol = kDefaultTol);

/// j(delta_x) and j^(delta_x) as operators h -> H.
Operator embed_j(const FiniteGroupoid& g, const GroupoidEmbeddings& e, int x);
Operator embed_j_hat(const FiniteGroupoid& g, const GroupoidMeasure& m, const GroupoidEmbeddings& e,
                     int x);

/// The canonical unitary of a finite groupoid together with the function
/// pictures of its source and range:
///   H b^(x)a H = l^2({(x,y) : s(x) = r(y)}, nu(x) lambda(y)),
///   H a(x)b H  = l^2({(x,y) : r(x) = r(y)}, nu(x) lambda(y)).
struct GroupoidUnitary {
  FiniteGroupoid g;
  GroupoidMeasure m;
  GroupoidEmbeddings emb;
  PmuData pmu;
  std::vector<std::pair<int, int>> pairs_sr, pairs_rr;
  HilbertSpace l2_sr, l2_rr;
  Operator ident_source;  // source -> l2_sr
  Operator ident_range;   // range -> l2_rr
  Operator v_fun;         // (V z)(x, y) = z(x, x^{-1} y) on the function pictures
  Report report;          // embeddings and identification unitarity
};
GroupoidUnitary build_groupoid_unitary(const FiniteGroupoid& g, const GroupoidMeasure& m,
                                       double tol = kDefaultTol);

/// Swap (x, y) -> (y, x) transported like V; only defined for groups.
/// A negative control that must fail the pentagon.
Operator swap_candidate(const GroupoidUnitary& u);

/// Multiplication by f on l^2(G, nu).
Operator mult_rep(const GroupoidUnitary& u, const std::vector<cplx>& f);
/// (L(g) z)(y) = sum_{x in G^{r(y)}} g(x) D^{-1/2}(x) z(x^{-1} y) lambda(x).
Operator conv_op(const GroupoidUnitary& u, const std::vector<cplx>& g);

/// Expected Delta^(m(f)) on l2_sr: multiplication by f(xy).
Operator expected_delta_hat(const GroupoidUnitary& u, const std::vector<cplx>& f);
/// Expected Delta(L(g)) on l2_rr:
/// z(x, y) -> sum_{w in G^{r(x)}} g(w) D^{-1/2}(w) z(w^{-1} x, w^{-1} y) lambda(w).
Operator expected_delta(const GroupoidUnitary& u, const std::vector<cplx>& g);

/// Legs against span{m(delta_x)} and span{L(delta_x)}, and both
/// comultiplications entrywise against the formulas above.
Report identify_legs(const GroupoidUnitary& u, double tol = kDefaultTol);

/// Dimension of the center of an algebra (intersection with its commutant).
Index center_dim(const OperatorSpan& a, double tol = kDefaultTol);

}  // namespace cpmu
