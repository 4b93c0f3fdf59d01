#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpmu {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-9;

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Raised when an operation's structural precondition fails numerically.
struct PreconditionError : std::runtime_error {
  PreconditionError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

/// Finite-dimensional weighted l^2 space: <e_i, e_j> = w_i delta_ij.
class HilbertSpace {
 public:
  HilbertSpace();
  HilbertSpace(std::string name, std::vector<std::string> labels,
               std::vector<double> weights);
  static HilbertSpace uniform(std::string name, std::vector<std::string> labels);
  /// A space with orthonormal basis and a name that is unique per process,
  /// so two separately built spaces never compare equal.
  static HilbertSpace fresh(const std::string& stem, Index dim);

  Index dim() const;
  const std::string& name() const;
  const std::vector<std::string>& labels() const;
  const std::vector<double>& weights() const;
  /// sqrt of the weights; maps delta coordinates to orthonormal coordinates.
  const Eigen::VectorXd& sqrt_weights() const;

  bool operator==(const HilbertSpace& other) const;
  bool operator!=(const HilbertSpace& other) const { return !(*this == other); }

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Linear map between Hilbert spaces.  The matrix is stored in orthonormal
/// coordinates (delta basis rescaled by sqrt of the weights), so adjoints and
/// Hilbert-Schmidt products are the plain Euclidean ones.
class Operator {
 public:
  Operator() = default;
  Operator(HilbertSpace domain, HilbertSpace codomain, Mat on_matrix);
  static Operator from_coefficients(HilbertSpace domain, HilbertSpace codomain,
                                    const Mat& coefficients);
  static Operator identity(const HilbertSpace& h);
  static Operator zero(const HilbertSpace& domain, const HilbertSpace& codomain);

  const HilbertSpace& domain() const { return dom_; }
  const HilbertSpace& codomain() const { return cod_; }
  const Mat& matrix() const { return m_; }
  /// Matrix with respect to the delta bases (the weighted representation).
  Mat coefficients() const;

  Operator adjoint() const;
  double norm() const;
  double hs_norm() const { return m_.norm(); }

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cplx s);

 private:
  HilbertSpace dom_, cod_;
  Mat m_;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(cplx s, Operator a);

/// Distance of two operators in operator norm.
double distance(const Operator& a, const Operator& b);

/// Linear span of operators H -> K, kept as a Hilbert-Schmidt orthonormal basis
/// (columns are vectorised orthonormal-coordinate matrices, column major).
class OperatorSpan {
 public:
  OperatorSpan() = default;
  OperatorSpan(HilbertSpace domain, HilbertSpace codomain, Mat orthonormal_basis);

  const HilbertSpace& domain() const { return dom_; }
  const HilbertSpace& codomain() const { return cod_; }
  Index rank() const;
  Index ambient_dim() const { return dom_.dim() * cod_.dim(); }
  const Mat& basis() const { return *basis_; }
  Operator element(Index i) const;
  std::vector<Operator> elements() const;

  /// Hilbert-Schmidt coordinates of t in the orthonormal basis.
  Vec coordinates(const Operator& t) const;
  Operator combine(const Vec& coords) const;
  /// ||t - P t||_HS / max(||t||_HS, 1e-300); 0 for t = 0.
  double residual(const Operator& t) const;
  bool contains(const Operator& t, double tol = kDefaultTol) const {
    return residual(t) <= tol;
  }
  OperatorSpan adjoint() const;

 private:
  HilbertSpace dom_, cod_;
  std::shared_ptr<const Mat> basis_;
};

struct SpanCheck {
  bool holds = false;
  double residual = 0.0;
};

Vec vectorize(const Operator& t);
Operator unvectorize(const HilbertSpace& dom, const HilbertSpace& cod, const Vec& v);

/// Orthonormal basis of the span; singular values below tol * sigma_max drop.
OperatorSpan span_normalize(const HilbertSpace& dom, const HilbertSpace& cod,
                            std::span<const Operator> generators,
                            double tol = kDefaultTol);
OperatorSpan span_normalize(std::span<const Operator> generators,
                            double tol = kDefaultTol);
OperatorSpan span_of_columns(const HilbertSpace& dom, const HilbertSpace& cod,
                             const Mat& columns, double tol = kDefaultTol);

/// [S T] = span{s t}.
OperatorSpan span_product(const OperatorSpan& s, const OperatorSpan& t,
                          double tol = kDefaultTol);
OperatorSpan span_product(const Operator& a, const OperatorSpan& t,
                          double tol = kDefaultTol);
OperatorSpan span_product(const OperatorSpan& s, const Operator& b,
                          double tol = kDefaultTol);
OperatorSpan span_sum(const OperatorSpan& s, const OperatorSpan& t,
                      double tol = kDefaultTol);

/// Largest sine of a principal angle from s into t.
double span_inclusion_residual(const OperatorSpan& s, const OperatorSpan& t);
SpanCheck span_included(const OperatorSpan& s, const OperatorSpan& t,
                        double tol = kDefaultTol);
SpanCheck span_equal(const OperatorSpan& s, const OperatorSpan& t,
                     double tol = kDefaultTol);
OperatorSpan span_intersect(const OperatorSpan& s, const OperatorSpan& t,
                            double tol = kDefaultTol);

/// Singular value decomposition through LAPACK's zgesvd.  Eigen's BDCSVD
/// returns singular vectors outside the range on some structured inputs with
/// repeated singular values, and JacobiSVD is far too slow at n ~ 700.
enum class SvdVectors { none, thin, full };
struct Svd {
  Eigen::VectorXd s;  // descending
  Mat u, v;           // empty unless requested
};
Svd svd(const Mat& m, SvdVectors u, SvdVectors v);

/// Orthonormal basis (columns) of the range of the listed vectors.
Mat column_range(const Mat& columns, double tol = kDefaultTol);
/// Columns of all basis elements side by side: codomain x (rank * dim domain).
Mat concat_columns(const OperatorSpan& s);
/// Rank of [S H] = span{s v : s in S, v in H} inside the codomain.
Index image_rank(const OperatorSpan& s, double tol = kDefaultTol);

/// Linear conditions on an unknown T : H -> K.
struct Constraint {
  enum class Kind { Sandwich, Commute };
  Kind kind = Kind::Sandwich;
  // Sandwich: left * T * right lies in target.
  Operator left, right;
  OperatorSpan target;
  // Commute: a * T = T * b.
  Operator a, b;
};

/// T gamma in target.
Constraint times_in(const HilbertSpace& h, const HilbertSpace& k,
                    const Operator& gamma, const OperatorSpan& target);
/// T* gamma in target (encoded as gamma* T in target*).
Constraint adjoint_times_in(const HilbertSpace& h, const HilbertSpace& k,
                            const Operator& gamma, const OperatorSpan& target);
/// left T right in target.
Constraint sandwich_in(const Operator& left, const Operator& right,
                       const OperatorSpan& target);
/// a T = T b.
Constraint intertwines(const Operator& a, const Operator& b);

/// Solution subspace {T : H -> K satisfying all constraints}.
OperatorSpan solve_operator_constraints(const HilbertSpace& h, const HilbertSpace& k,
                                        std::span<const Constraint> constraints,
                                        double tol = kDefaultTol);

/// Quotient of formal combinations by the kernel of a PSD Gram matrix.
struct GramQuotient {
  Index dim = 0;
  /// dim x n; synthesis.adjoint() * synthesis reproduces the Gram matrix.
  Mat synthesis;
  double min_eigenvalue = 0.0;
};
GramQuotient gram_quotient(const Mat& gram, double tol = kDefaultTol);

/// Least-squares solution of X * B = C.  Reports the relative residual and
/// whether B has full row rank (then X is unique).
struct RightSolve {
  Mat x;
  double residual = 0.0;
  bool unique = false;
};
RightSolve solve_right(const Mat& b, const Mat& c, double tol = kDefaultTol);

/// Unitarity defect max(||U*U - 1||, ||UU* - 1||).
double unitarity_residual(const Operator& u);

}  // namespace cpmu
