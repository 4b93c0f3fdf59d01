#pragma once

#include "cpmu/cstar_base.hpp"
#include "cpmu/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cpmu {

class RelativeTensorSpace;
using RtpPtr = std::shared_ptr<const RelativeTensorSpace>;

/// H (x) K relative to a factorization `left` of H over a base and a
/// factorization `right` of K over the opposite base.  Built as the Gram
/// quotient of all triples (xi_i, e_k, eta_j) of basis elements with
/// <xi (x) z (x) eta, xi' (x) z' (x) eta'> = <z, (xi* xi')(eta* eta') z'>.
class RelativeTensorSpace {
 public:
  static RtpPtr build(const Factorization& left, const Factorization& right,
                      double tol = kDefaultTol, const std::string& name = "HK");

  const HilbertSpace& space() const { return space_; }
  const Factorization& left() const { return left_; }
  const Factorization& right() const { return right_; }
  const CStarBase& base() const { return left_.base(); }
  const HilbertSpace& left_space() const { return left_.target(); }
  const HilbertSpace& right_space() const { return right_.target(); }
  double tol() const { return tol_; }
  /// Worst relative residual of the least-squares solves defining the legs.
  double build_residual() const { return build_residual_; }

  Index triple_count() const { return synthesis_.cols(); }
  Index triple_index(Index i, Index k, Index j) const;
  /// Columns are the images of the formal triples in orthonormal coordinates.
  const Mat& synthesis() const { return synthesis_; }

  /// |xi_i>_1 : K -> H (x) K, eta z -> xi_i (x) z (x) eta.
  const Operator& ket1(Index i) const { return ket1_[static_cast<std::size_t>(i)]; }
  /// |eta_j>_2 : H -> H (x) K, xi z -> xi (x) z (x) eta_j.
  const Operator& ket2(Index j) const { return ket2_[static_cast<std::size_t>(j)]; }
  /// Legs for arbitrary elements of the factorizations (throws if outside).
  Operator ket1(const Operator& xi) const;
  Operator ket2(const Operator& eta) const;
  Operator bra1(const Operator& xi) const { return ket1(xi).adjoint(); }
  Operator bra2(const Operator& eta) const { return ket2(eta).adjoint(); }
  OperatorSpan ket1_span() const;
  OperatorSpan ket2_span() const;

  /// s (x) id for s commuting with rho_left.
  Operator left_leg(const Operator& s) const;
  /// id (x) t for t commuting with rho_right.
  Operator right_leg(const Operator& t) const;

  /// gamma <| right = [|right>_2 gamma] for gamma compatible with left.
  Factorization push_left(const Factorization& gamma) const;
  /// left |> delta = [|left>_1 delta] for delta compatible with right.
  Factorization push_right(const Factorization& delta) const;

  /// Solves X [ket1_i]_i = rhs (block per basis element of left).
  RightSolve solve_on_ket1(const Mat& rhs) const;
  RightSolve solve_on_ket2(const Mat& rhs) const;

 private:
  RelativeTensorSpace() = default;
  Factorization left_, right_;
  HilbertSpace space_;
  Mat synthesis_;
  std::vector<Operator> ket1_, ket2_;
  Mat ket1_cat_, ket2_cat_, ket1_pinv_, ket2_pinv_;
  double tol_ = kDefaultTol;
  double build_residual_ = 0.0;
};

/// Internal tensor product realised on its own Gram quotient together with
/// the unitary onto the relative tensor product.
struct InternalTensor {
  HilbertSpace space;
  Operator unitary;
};
/// left |>_{rho_right} K  (pairs xi_i, orthonormal vectors of K).
InternalTensor left_internal_tensor(const RelativeTensorSpace& p);
/// H_{rho_left} <| right  (pairs orthonormal vectors of H, eta_j).
InternalTensor right_internal_tensor(const RelativeTensorSpace& p);

enum class TensorCase { LeftIntertwiner, RightIntertwiner };

struct TensorOp {
  Operator op;
  TensorCase which = TensorCase::LeftIntertwiner;
  double precondition_residual = 0.0;
  double residual = 0.0;
};

/// S (x) T : src -> dst.  Case i) needs S in L(H_left, L_left') and
/// T rho_right = rho_right' T; case ii) is the mirror image.  Throws
/// PreconditionError when neither case applies.
TensorOp tensor_op(const RelativeTensorSpace& src, const RelativeTensorSpace& dst,
                   const Operator& s, const Operator& t);

/// Flip H (x) K -> K (x) H, xi (x) z (x) eta -> eta (x) z (x) xi.  The target
/// space is built unless supplied.
struct Flip {
  RtpPtr target;
  Operator sigma;
  double residual = 0.0;
};
Flip flip(const RelativeTensorSpace& src, RtpPtr target = nullptr);

/// h (x)_{B, right} K -> K, b (x) z (x) eta -> eta b z.
struct UnitMap {
  RtpPtr source;
  Operator map;
  double residual = 0.0;
};
UnitMap unit_left(const Factorization& beta);
/// H (x)_{alpha, B_dagger} h -> H, xi (x) z (x) b -> xi b z.
UnitMap unit_right(const Factorization& alpha);

/// (H (x) K) (x) L -> H (x) (K (x) L) for hk = H (x)_{alpha,beta} K and
/// kl = K (x)_{gamma,delta} L.
struct Associator {
  RtpPtr left;   // (H (x) K) (x)_{alpha |> gamma, delta} L
  RtpPtr right;  // H (x)_{alpha, beta <| delta} (K (x) L)
  Operator theta;
  double residual = 0.0;
};
Associator associator(const RtpPtr& hk, const RtpPtr& kl);

/// Pseudo-inverse with singular values below tol * sigma_max treated as zero.
Mat pseudo_inverse(const Mat& m, double tol = kDefaultTol);

}  // namespace cpmu
