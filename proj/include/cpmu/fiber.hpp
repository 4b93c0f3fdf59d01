#pragma once

#include "cpmu/cstar_base.hpp"
#include "cpmu/linalg.hpp"
#include "cpmu/report.hpp"
#include "cpmu/rtp.hpp"

#include <optional>
#include <vector>

namespace cpmu {

/// Algebra A in L(H) together with the factorizations it is a module over.
struct ConcreteAlgebra {
  OperatorSpan algebra;
  std::vector<Factorization> factorizations;
};

/// Closure under products and adjoints, [A H] = H and [rho(B') A] = A for
/// every listed factorization.
Report check_concrete_algebra(const ConcreteAlgebra& a, double tol = kDefaultTol);

/// Linear map given on the orthonormal basis of its source span.
struct LinearMap {
  OperatorSpan source;
  std::vector<Operator> images;

  Operator apply(const Operator& a) const;
};

/// Images of a function on the basis of `source`.
template <class F>
LinearMap make_linear_map(const OperatorSpan& source, F&& f) {
  LinearMap m{source, {}};
  for (Index i = 0; i < source.rank(); ++i) m.images.push_back(f(source.element(i)));
  return m;
}

/// [Gamma Gamma* Gamma] = Gamma and [Gamma H] = K.
Report check_module(const OperatorSpan& gamma, double tol = kDefaultTol);

/// Ind_Gamma(A) = {T : T Gamma, T* Gamma in [Gamma A]} solved as linear constraints.
OperatorSpan induce_by_constraints(const OperatorSpan& gamma, const OperatorSpan& a,
                                   double tol = kDefaultTol);
/// [Gamma A Gamma*].
OperatorSpan induce_by_spanning(const OperatorSpan& gamma, const OperatorSpan& a,
                                double tol = kDefaultTol);
/// {T in Ind_Gamma(L(H)) : Gamma* T Gamma in A}.
OperatorSpan induce_by_compression(const OperatorSpan& gamma, const OperatorSpan& a,
                                   double tol = kDefaultTol);
/// Default route (spanning), valid because all spaces are finite dimensional.
OperatorSpan induce(const OperatorSpan& gamma, const OperatorSpan& a, double tol = kDefaultTol);

/// Membership test for Ind_Gamma(A) that never forms the induced span, for
/// use on spaces too large for explicit spans.
class InducedMembership {
 public:
  InducedMembership(const OperatorSpan& gamma, const OperatorSpan& a, double tol = kDefaultTol);
  /// Worst relative residual of T gamma and T* gamma against [Gamma A].
  double residual(const Operator& t) const;

 private:
  std::vector<Operator> gamma_;
  OperatorSpan gamma_a_;
};

/// A *_{alpha,beta} B = Ind_{|alpha>_1}(B) cap Ind_{|beta>_2}(A) on H (x) K.
struct FiberProduct {
  OperatorSpan algebra;
  bool nondegenerate = false;
  Index image_rank = 0;
};
FiberProduct fiber_product(const RelativeTensorSpace& p, const OperatorSpan& a,
                           const OperatorSpan& b, double tol = kDefaultTol);

/// (A*A)*A and A*(A*A) on the two triple spaces of p = H (x) H, compared
/// through the associator.  Nothing forces them to agree, so this reports
/// rather than assumes.  Forms explicit spans on triple spaces: small
/// instances only.
struct BracketingCheck {
  Index left_dim = 0, right_dim = 0;
  Report report;
};
BracketingCheck compare_fiber_bracketings(const RtpPtr& p, const OperatorSpan& a,
                                          double tol = kDefaultTol);

/// Membership in A * B via the two induced-algebra oracles.
class FiberMembership {
 public:
  FiberMembership(const RelativeTensorSpace& p, const OperatorSpan& a, const OperatorSpan& b,
                  double tol = kDefaultTol);
  double residual(const Operator& t) const;

 private:
  InducedMembership left_, right_;
};

/// gamma <| beta is a factorization for A * B when gamma is one for A and is
/// compatible with alpha.  Returns the pushed factorization and the module check.
struct PushedFactorization {
  std::optional<Factorization> factorization;
  Report report;
};
PushedFactorization push_factorization_through_fiber(const RelativeTensorSpace& p,
                                                     const Factorization& gamma,
                                                     const OperatorSpan& fiber,
                                                     double tol = kDefaultTol);

/// Morphism conditions for pi : (H, A, alpha) -> (K, B, gamma):
/// *-homomorphism, pi(a rho_alpha(b')) = pi(a) rho_gamma(b'), and
/// gamma = [L^pi(H_alpha, K_gamma) alpha].
struct MorphismCheck {
  Report report;
  OperatorSpan intertwiners;
};
MorphismCheck check_morphism(const LinearMap& pi, const Factorization& alpha,
                             const Factorization& gamma, const OperatorSpan* target = nullptr,
                             double tol = kDefaultTol);

/// The map phi * psi : T -> Z with Z (X (x) Y) = (X (x) Y) T for all listed
/// intertwiners X of phi and Y of psi.
class InducedMorphism {
 public:
  InducedMorphism(RtpPtr src, RtpPtr dst, const std::vector<Operator>& xs,
                  const std::vector<Operator>& ys, double tol = kDefaultTol);
  Operator apply(const Operator& t, double* residual = nullptr) const;
  /// True when the products (X (x) Y) jointly span the target, so the
  /// defining relation has exactly one solution.
  bool unique() const { return unique_; }
  const std::vector<Operator>& tensors() const { return xy_; }

 private:
  RtpPtr src_, dst_;
  std::vector<Operator> xy_;
  Mat cat_, pinv_;
  bool unique_ = false;
};

/// Conditions of a concrete Hopf C*-bimodule (base, H, A, alpha, beta, Delta)
/// with alpha = p.left(), beta = p.right() and Delta : A -> L(p):
/// nondegenerate A * A, Delta into A * A, both morphism conditions and
/// coassociativity through the associator.
Report check_hopf_bimodule(const RtpPtr& p, const OperatorSpan& a, const LinearMap& delta,
                           double tol = kDefaultTol);

}  // namespace cpmu
