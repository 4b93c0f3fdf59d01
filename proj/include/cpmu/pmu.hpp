#pragma once

#include "cpmu/cstar_base.hpp"
#include "cpmu/fiber.hpp"
#include "cpmu/linalg.hpp"
#include "cpmu/report.hpp"
#include "cpmu/rtp.hpp"

#include <memory>

namespace cpmu {

/// Candidate pseudo-multiplicative unitary V : H b^(x)a H -> H a(x)b H.
/// alpha lives over the base, beta_hat and beta over its opposite.
struct PmuData {
  Factorization alpha, beta_hat, beta;
  RtpPtr source;  // H beta_hat (x) alpha H
  RtpPtr range;   // H alpha (x) beta H
  Operator v;

  const HilbertSpace& space() const { return alpha.target(); }
  const CStarBase& base() const { return alpha.base(); }
};

/// Builds source and range; `v` is left empty for the caller to fill in.
PmuData make_pmu_data(const Factorization& alpha, const Factorization& beta_hat,
                      const Factorization& beta, double tol = kDefaultTol);

/// Every space and arrow of the pentagon diagram.  Triple spaces are named
/// by their bracketing:
///   t1  = (H b^(x)a H) b^(x)a H        t1p = H b^(x)a (H b^(x)a H)
///   t2  = (H a(x)b H) b^(x)a H         t2p = H a(x)b (H b^(x)a H)
///   t3  = (H a(x)b H) a(x)b H          t3p = H a(x)b (H a(x)b H)
///   t4p = H b^(x)a (H a(x)b H)         t5  = (H b^(x)a H) b(x)a H
///   t5p = H b^(x)a (H b(x)a H)         t6  = (H a(x)b H) b^<b (x)a H
///   t7  = (H b^(x)a H) a<a (x)b H
struct PentagonFrame {
  RtpPtr flipped_range;  // H beta (x) alpha H
  Flip range_flip;       // H a(x)b H -> H b(x)a H
  Associator assoc_ss, assoc_rs, assoc_rr, assoc_sf;
  RtpPtr t4p, t6, t7;

  Operator v12_t1_t2, v23_t2p_t3p;  // upper path
  Operator v23_t1p_t4p, id_flip_t4p_t5p, v12_t5_t6, sigma23_t6_t7, v12_t7_t3;  // lower path
  double sigma23_residual = 0.0;

  Operator upper;  // t1 -> t3
  Operator lower;  // t1 -> t3
  /// V_13 V_23 : t1 -> t7, read off the upper path.
  Operator v13_v23;
};

struct PmuCheck {
  Report report;
  std::shared_ptr<const PentagonFrame> frame;  // null when an arrow is ill defined
};

/// Unitarity, compatibility, the four intertwining equalities and the
/// pentagon.  An ill-defined arrow becomes a failed entry naming it.
PmuCheck check_pmu(const PmuData& v, double tol = kDefaultTol);

/// V^op = Sigma V* Sigma : H b(x)a H -> H a(x)b^ H, with beta_hat and beta
/// swapped.
PmuData opposite(const PmuData& v, double tol = kDefaultTol);

struct Regularity {
  bool regular = false;
  double residual = 0.0;
  OperatorSpan c;  // [<alpha|_1 V |alpha>_2]
};
Regularity check_regular(const PmuData& v, double tol = kDefaultTol);

/// [<beta|_2 V |alpha>_2] on H.
OperatorSpan leg_hat(const PmuData& v, double tol = kDefaultTol);
/// [<alpha|_1 V |beta_hat>_1] on H.
OperatorSpan leg_a(const PmuData& v, double tol = kDefaultTol);

/// Closure, module and strong nondegeneracy properties of both legs.
/// *-closure is only required when `regular` is set.
Report check_legs(const PmuData& v, const OperatorSpan& a_hat, const OperatorSpan& a,
                  bool regular, double tol = kDefaultTol);

/// V* (1 (x) y) V for y commuting with rho_beta; throws PreconditionError
/// otherwise.
Operator delta_hat(const PmuData& v, const Operator& y);
/// V (z (x) 1) V* for z commuting with rho_beta_hat.
Operator delta(const PmuData& v, const Operator& z);
LinearMap delta_hat_map(const PmuData& v, const OperatorSpan& a_hat);
LinearMap delta_map(const PmuData& v, const OperatorSpan& a);

/// Delta_hat(rho_alpha(b')) = rho_{a<a}(b'), Delta_hat(rho_b^(b)) = rho_{b^>b^}(b),
/// Delta(rho_beta(b)) = rho_{b<b}(b), Delta(rho_alpha(b')) = rho_{a>a}(b').
Report check_delta_transport(const PmuData& v, double tol = kDefaultTol);

/// Both Hopf C*-bimodule audits plus the extra identities for Delta_hat(A^).
/// Throws PreconditionError when V is not regular.
Report verify_hopf(const PmuData& v, const PentagonFrame& frame, double tol = kDefaultTol);

}  // namespace cpmu
