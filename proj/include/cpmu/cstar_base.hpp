#pragma once

#include "cpmu/linalg.hpp"
#include "cpmu/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpmu {

/// Pair of mutually commuting nondegenerate C*-algebras B, B' on a space h.
/// `algebra()` is B, `dual()` is the algebra commuting with it (B-dagger).
class CStarBase {
 public:
  CStarBase() = default;
  CStarBase(HilbertSpace h, OperatorSpan b, OperatorSpan b_dagger);

  const HilbertSpace& space() const { return h_; }
  const OperatorSpan& algebra() const { return b_; }
  const OperatorSpan& dual() const { return bdag_; }

  /// Same space with the two algebras swapped.
  CStarBase opposite() const;
  bool same_as(const CStarBase& other, double tol = kDefaultTol) const;
  bool is_opposite_of(const CStarBase& other, double tol = kDefaultTol) const {
    return same_as(other.opposite(), tol);
  }

  Report validate(double tol = kDefaultTol) const;

 private:
  HilbertSpace h_;
  OperatorSpan b_, bdag_;
};

/// h = l^2(units, weights); both algebras are the diagonal multiplication
/// operators.
CStarBase base_from_weight(const std::vector<std::string>& labels,
                           const std::vector<double>& weights,
                           const std::string& name = "h");

/// Closed subspace alpha of L(h, H) satisfying the factorization axioms, with
/// its representation rho of the dual algebra on H.
class Factorization {
 public:
  const CStarBase& base() const { return base_; }
  const HilbertSpace& target() const { return h_; }
  const OperatorSpan& span() const { return span_; }
  Index rank() const { return span_.rank(); }
  const std::string& name() const { return name_; }

  /// rho applied to the i-th basis element of base().dual().
  const std::vector<Operator>& rho_basis() const { return rho_; }
  Operator rho(const Operator& b_dagger) const;
  OperatorSpan rho_image(double tol = kDefaultTol) const;

 private:
  friend struct FactorizationBuilder;
  CStarBase base_;
  HilbertSpace h_;
  OperatorSpan span_;
  std::vector<Operator> rho_;
  std::string name_;
};

struct FactorizationCheck {
  std::optional<Factorization> factorization;
  Report report;
};

/// Checks [a* a] = B, [a B] = a, [a h] = H and solves for rho by least squares.
FactorizationCheck check_factorization(const OperatorSpan& alpha, const CStarBase& base,
                                       double tol = kDefaultTol, std::string name = "alpha");
/// As check_factorization, throwing PreconditionError on failure.
Factorization make_factorization(const OperatorSpan& alpha, const CStarBase& base,
                                 double tol = kDefaultTol, std::string name = "alpha");

/// B itself as a factorization of h over the base; rho is the identity.
Factorization base_factorization(const CStarBase& base, double tol = kDefaultTol);
/// B-dagger as a factorization of h over the opposite base.
Factorization dual_base_factorization(const CStarBase& base, double tol = kDefaultTol);

/// [rho_a(dual of a's base) b] = b, [rho_b(dual of b's base) a] = a, and the
/// two representations commute.
Report check_compatible(const Factorization& a, const Factorization& b,
                        double tol = kDefaultTol);

/// L(H_a, K_b) = {T : T a in b, T* b in a}.
OperatorSpan intertwiner_space(const Factorization& a, const Factorization& b,
                               double tol = kDefaultTol);

/// U a for a unitary U : H -> K.
Factorization push_unitary(const Operator& u, const Factorization& a, double tol = kDefaultTol);

}  // namespace cpmu
