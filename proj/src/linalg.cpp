#include "cpmu/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

// Keep LAPACKE on std::complex instead of C99 complex.h.
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace cpmu {

struct HilbertSpace::Impl {
  std::string name;
  std::vector<std::string> labels;
  std::vector<double> weights;
  Eigen::VectorXd sqrtw;
  bool fresh = false;
};

namespace {

std::shared_ptr<const HilbertSpace::Impl> make_impl(std::string name,
                                                    std::vector<std::string> labels,
                                                    std::vector<double> weights,
                                                    bool fresh) {
  if (labels.size() != weights.size())
    throw ShapeError("HilbertSpace '" + name + "': labels and weights differ in length");
  auto impl = std::make_shared<HilbertSpace::Impl>();
  impl->sqrtw.resize(static_cast<Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw ShapeError("HilbertSpace '" + name + "': weight of '" + labels[i] +
                       "' must be positive");
    impl->sqrtw[static_cast<Index>(i)] = std::sqrt(weights[i]);
  }
  impl->name = std::move(name);
  impl->labels = std::move(labels);
  impl->weights = std::move(weights);
  impl->fresh = fresh;
  return impl;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void require_same(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": space mismatch ('" << a.name() << "' dim " << a.dim() << " vs '"
       << b.name() << "' dim " << b.dim() << ")";
    throw ShapeError(os.str());
  }
}

}  // namespace

HilbertSpace::HilbertSpace() {
  static const auto empty = make_impl("0", {}, {}, false);
  impl_ = empty;
}

HilbertSpace::HilbertSpace(std::string name, std::vector<std::string> labels,
                           std::vector<double> weights)
    : impl_(make_impl(std::move(name), std::move(labels), std::move(weights), false)) {}

HilbertSpace HilbertSpace::uniform(std::string name, std::vector<std::string> labels) {
  std::vector<double> w(labels.size(), 1.0);
  return HilbertSpace(std::move(name), std::move(labels), std::move(w));
}

HilbertSpace HilbertSpace::fresh(const std::string& stem, Index dim) {
  static std::atomic<long> serial{0};
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) labels.push_back(std::to_string(i));
  HilbertSpace h;
  h.impl_ = make_impl(stem + "#" + std::to_string(serial.fetch_add(1)), std::move(labels),
                      std::vector<double>(static_cast<std::size_t>(dim), 1.0), true);
  return h;
}

Index HilbertSpace::dim() const { return static_cast<Index>(impl_->labels.size()); }
const std::string& HilbertSpace::name() const { return impl_->name; }
const std::vector<std::string>& HilbertSpace::labels() const { return impl_->labels; }
const std::vector<double>& HilbertSpace::weights() const { return impl_->weights; }
const Eigen::VectorXd& HilbertSpace::sqrt_weights() const { return impl_->sqrtw; }

bool HilbertSpace::operator==(const HilbertSpace& other) const {
  if (impl_ == other.impl_) return true;
  if (impl_->fresh || other.impl_->fresh) return false;
  return impl_->name == other.impl_->name && impl_->labels == other.impl_->labels &&
         impl_->weights == other.impl_->weights;
}

// ---------------------------------------------------------------- Operator

Operator::Operator(HilbertSpace domain, HilbertSpace codomain, Mat on_matrix)
    : dom_(std::move(domain)), cod_(std::move(codomain)), m_(std::move(on_matrix)) {
  if (m_.rows() != cod_.dim() || m_.cols() != dom_.dim()) {
    std::ostringstream os;
    os << "Operator: matrix " << m_.rows() << "x" << m_.cols() << " does not fit "
       << dom_.name() << " -> " << cod_.name();
    throw ShapeError(os.str());
  }
}

Operator Operator::from_coefficients(HilbertSpace domain, HilbertSpace codomain,
                                     const Mat& coefficients) {
  if (coefficients.rows() != codomain.dim() || coefficients.cols() != domain.dim())
    throw ShapeError("Operator::from_coefficients: shape mismatch");
  Mat on = codomain.sqrt_weights().cast<cplx>().asDiagonal() * coefficients *
           domain.sqrt_weights().cwiseInverse().cast<cplx>().asDiagonal();
  return Operator(std::move(domain), std::move(codomain), std::move(on));
}

Operator Operator::identity(const HilbertSpace& h) {
  return Operator(h, h, Mat::Identity(h.dim(), h.dim()));
}

Operator Operator::zero(const HilbertSpace& domain, const HilbertSpace& codomain) {
  return Operator(domain, codomain, Mat::Zero(codomain.dim(), domain.dim()));
}

Mat Operator::coefficients() const {
  return cod_.sqrt_weights().cwiseInverse().cast<cplx>().asDiagonal() * m_ *
         dom_.sqrt_weights().cast<cplx>().asDiagonal();
}

Operator Operator::adjoint() const { return Operator(cod_, dom_, m_.adjoint()); }

double Operator::norm() const {
  if (m_.size() == 0) return 0.0;
  return svd(m_, SvdVectors::none, SvdVectors::none).s(0);
}

Operator& Operator::operator+=(const Operator& o) {
  require_same(dom_, o.dom_, "Operator +");
  require_same(cod_, o.cod_, "Operator +");
  m_ += o.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require_same(dom_, o.dom_, "Operator -");
  require_same(cod_, o.cod_, "Operator -");
  m_ -= o.m_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same(a.domain(), b.codomain(), "Operator composition");
  return Operator(b.domain(), a.codomain(), a.matrix() * b.matrix());
}
Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }
Operator operator*(cplx s, Operator a) { return a *= s; }

double distance(const Operator& a, const Operator& b) { return (a - b).norm(); }

double unitarity_residual(const Operator& u) {
  const Mat& m = u.matrix();
  auto spec = [](const Mat& x) {
    if (x.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(x, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };
  return std::max(spec(m.adjoint() * m - Mat::Identity(m.cols(), m.cols())),
                  spec(m * m.adjoint() - Mat::Identity(m.rows(), m.rows())));
}

// ------------------------------------------------------------ OperatorSpan

Vec vectorize(const Operator& t) {
  return Eigen::Map<const Vec>(t.matrix().data(), t.matrix().size());
}

Operator unvectorize(const HilbertSpace& dom, const HilbertSpace& cod, const Vec& v) {
  return Operator(dom, cod, Eigen::Map<const Mat>(v.data(), cod.dim(), dom.dim()));
}

OperatorSpan::OperatorSpan(HilbertSpace domain, HilbertSpace codomain, Mat basis)
    : dom_(std::move(domain)), cod_(std::move(codomain)),
      basis_(std::make_shared<const Mat>(std::move(basis))) {
  if (basis_->rows() != dom_.dim() * cod_.dim())
    throw ShapeError("OperatorSpan: basis rows do not match ambient dimension");
}

Index OperatorSpan::rank() const { return basis_ ? basis_->cols() : 0; }

Operator OperatorSpan::element(Index i) const {
  return unvectorize(dom_, cod_, basis_->col(i));
}

std::vector<Operator> OperatorSpan::elements() const {
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(rank()));
  for (Index i = 0; i < rank(); ++i) out.push_back(element(i));
  return out;
}

Vec OperatorSpan::coordinates(const Operator& t) const {
  require_same(dom_, t.domain(), "OperatorSpan::coordinates");
  require_same(cod_, t.codomain(), "OperatorSpan::coordinates");
  if (rank() == 0) return Vec(0);
  return basis_->adjoint() * vectorize(t);
}

Operator OperatorSpan::combine(const Vec& coords) const {
  if (rank() == 0) return Operator::zero(dom_, cod_);
  return unvectorize(dom_, cod_, *basis_ * coords);
}

double OperatorSpan::residual(const Operator& t) const {
  Vec v = vectorize(t);
  double n = v.norm();
  if (n == 0.0) return 0.0;
  if (rank() == 0) return 1.0;
  Vec r = v - *basis_ * (basis_->adjoint() * v);
  return r.norm() / n;
}

OperatorSpan OperatorSpan::adjoint() const {
  Mat b(basis_->rows(), basis_->cols());
  for (Index i = 0; i < rank(); ++i) {
    Mat a = Eigen::Map<const Mat>(basis_->col(i).data(), cod_.dim(), dom_.dim()).adjoint();
    b.col(i) = Eigen::Map<const Vec>(a.data(), a.size());
  }
  return OperatorSpan(cod_, dom_, std::move(b));
}

Svd svd(const Mat& m, SvdVectors u, SvdVectors v) {
  const Index rows = m.rows(), cols = m.cols(), k = std::min(rows, cols);
  Svd out;
  out.s.resize(k);
  if (k == 0) {
    if (u == SvdVectors::full) out.u = Mat::Identity(rows, rows);
    if (v == SvdVectors::full) out.v = Mat::Identity(cols, cols);
    if (u == SvdVectors::thin) out.u = Mat(rows, 0);
    if (v == SvdVectors::thin) out.v = Mat(cols, 0);
    return out;
  }
  auto job = [](SvdVectors w) { return w == SvdVectors::full ? 'A' : w == SvdVectors::thin ? 'S' : 'N'; };
  const Index ucols = u == SvdVectors::full ? rows : k;
  const Index vtrows = v == SvdVectors::full ? cols : k;
  Mat a = m;  // destroyed by zgesvd
  Mat uu(u == SvdVectors::none ? 1 : rows, u == SvdVectors::none ? 1 : ucols);
  Mat vt(v == SvdVectors::none ? 1 : vtrows, v == SvdVectors::none ? 1 : cols);
  std::vector<double> superb(static_cast<std::size_t>(std::max<Index>(k - 1, 1)));
  const lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, job(u), job(v), static_cast<lapack_int>(rows), static_cast<lapack_int>(cols),
      a.data(), static_cast<lapack_int>(rows), out.s.data(), uu.data(), static_cast<lapack_int>(uu.rows()),
      vt.data(), static_cast<lapack_int>(vt.rows()), superb.data());
  if (info != 0)
    throw NumericError("zgesvd failed (info " + std::to_string(info) + ") on a " + std::to_string(rows) +
                       "x" + std::to_string(cols) + " matrix");
  if (u != SvdVectors::none) out.u = std::move(uu);
  if (v != SvdVectors::none) out.v = vt.adjoint();
  return out;
}

Mat column_range(const Mat& columns, double tol) {
  if (columns.cols() == 0 || columns.rows() == 0) return Mat(columns.rows(), 0);
  const Svd d = svd(columns, SvdVectors::thin, SvdVectors::none);
  const auto& s = d.s;
  if (s.size() == 0 || s(0) == 0.0) return Mat(columns.rows(), 0);
  Index r = 0;
  while (r < s.size() && s(r) > tol * s(0)) ++r;
  return d.u.leftCols(r);
}

OperatorSpan span_of_columns(const HilbertSpace& dom, const HilbertSpace& cod,
                             const Mat& columns, double tol) {
  return OperatorSpan(dom, cod, column_range(columns, tol));
}

OperatorSpan span_normalize(const HilbertSpace& dom, const HilbertSpace& cod,
                            std::span<const Operator> generators, double tol) {
  Mat g(dom.dim() * cod.dim(), static_cast<Index>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    require_same(dom, generators[i].domain(), "span_normalize");
    require_same(cod, generators[i].codomain(), "span_normalize");
    g.col(static_cast<Index>(i)) = vectorize(generators[i]);
  }
  return span_of_columns(dom, cod, g, tol);
}

OperatorSpan span_normalize(std::span<const Operator> generators, double tol) {
  if (generators.empty()) throw ShapeError("span_normalize: empty generator list");
  return span_normalize(generators.front().domain(), generators.front().codomain(),
                        generators, tol);
}

OperatorSpan span_product(const OperatorSpan& s, const OperatorSpan& t, double tol) {
  require_same(s.domain(), t.codomain(), "span_product");
  const Index ds = s.codomain().dim(), dm = s.domain().dim(), dt = t.domain().dim();
  Mat g(ds * dt, s.rank() * t.rank());
  Index c = 0;
  for (Index i = 0; i < s.rank(); ++i) {
    Eigen::Map<const Mat> si(s.basis().col(i).data(), ds, dm);
    for (Index j = 0; j < t.rank(); ++j) {
      Eigen::Map<const Mat> tj(t.basis().col(j).data(), dm, dt);
      Mat p = si * tj;
      g.col(c++) = Eigen::Map<const Vec>(p.data(), p.size());
    }
  }
  return span_of_columns(t.domain(), s.codomain(), g, tol);
}

OperatorSpan span_product(const Operator& a, const OperatorSpan& t, double tol) {
  require_same(a.domain(), t.codomain(), "span_product");
  const Index dm = t.codomain().dim(), dt = t.domain().dim();
  Mat g(a.codomain().dim() * dt, t.rank());
  for (Index j = 0; j < t.rank(); ++j) {
    Mat p = a.matrix() * Eigen::Map<const Mat>(t.basis().col(j).data(), dm, dt);
    g.col(j) = Eigen::Map<const Vec>(p.data(), p.size());
  }
  return span_of_columns(t.domain(), a.codomain(), g, tol);
}

OperatorSpan span_product(const OperatorSpan& s, const Operator& b, double tol) {
  require_same(s.domain(), b.codomain(), "span_product");
  const Index ds = s.codomain().dim(), dm = s.domain().dim();
  Mat g(ds * b.domain().dim(), s.rank());
  for (Index i = 0; i < s.rank(); ++i) {
    Mat p = Eigen::Map<const Mat>(s.basis().col(i).data(), ds, dm) * b.matrix();
    g.col(i) = Eigen::Map<const Vec>(p.data(), p.size());
  }
  return span_of_columns(b.domain(), s.codomain(), g, tol);
}

OperatorSpan span_sum(const OperatorSpan& s, const OperatorSpan& t, double tol) {
  require_same(s.domain(), t.domain(), "span_sum");
  require_same(s.codomain(), t.codomain(), "span_sum");
  Mat g(s.ambient_dim(), s.rank() + t.rank());
  g << s.basis(), t.basis();
  return span_of_columns(s.domain(), s.codomain(), g, tol);
}

double span_inclusion_residual(const OperatorSpan& s, const OperatorSpan& t) {
  require_same(s.domain(), t.domain(), "span inclusion");
  require_same(s.codomain(), t.codomain(), "span inclusion");
  if (s.rank() == 0) return 0.0;
  if (t.rank() == 0) return 1.0;
  Mat e = s.basis() - t.basis() * (t.basis().adjoint() * s.basis());
  Eigen::SelfAdjointEigenSolver<Mat> es(e.adjoint() * e, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

SpanCheck span_included(const OperatorSpan& s, const OperatorSpan& t, double tol) {
  double r = span_inclusion_residual(s, t);
  return {r <= tol, r};
}

SpanCheck span_equal(const OperatorSpan& s, const OperatorSpan& t, double tol) {
  double r = std::max(span_inclusion_residual(s, t), span_inclusion_residual(t, s));
  return {r <= tol, r};
}

OperatorSpan span_intersect(const OperatorSpan& s, const OperatorSpan& t, double tol) {
  require_same(s.domain(), t.domain(), "span_intersect");
  require_same(s.codomain(), t.codomain(), "span_intersect");
  if (s.rank() == 0 || t.rank() == 0) return OperatorSpan(s.domain(), s.codomain(), Mat(s.ambient_dim(), 0));
  Mat m(s.ambient_dim(), s.rank() + t.rank());
  m << s.basis(), -t.basis();
  const Svd d = svd(m, SvdVectors::none, SvdVectors::full);
  const auto& sv = d.s;
  const double cut = tol * std::max(sv(0), 1.0);
  std::vector<Index> null_cols;
  for (Index c = 0; c < m.cols(); ++c)
    if (c >= sv.size() || sv(c) <= cut) null_cols.push_back(c);
  Mat gens(s.ambient_dim(), static_cast<Index>(null_cols.size()));
  for (std::size_t i = 0; i < null_cols.size(); ++i)
    gens.col(static_cast<Index>(i)) = s.basis() * d.v.col(null_cols[i]).head(s.rank());
  return span_of_columns(s.domain(), s.codomain(), gens, tol);
}

Mat concat_columns(const OperatorSpan& s) {
  const Index dk = s.codomain().dim(), dh = s.domain().dim();
  Mat cols(dk, s.rank() * dh);
  for (Index i = 0; i < s.rank(); ++i)
    cols.middleCols(i * dh, dh) = Eigen::Map<const Mat>(s.basis().col(i).data(), dk, dh);
  return cols;
}

Index image_rank(const OperatorSpan& s, double tol) {
  return column_range(concat_columns(s), tol).cols();
}

// -------------------------------------------------------------- constraints

Constraint times_in(const HilbertSpace& h, const HilbertSpace& k, const Operator& gamma,
                    const OperatorSpan& target) {
  (void)h;
  return sandwich_in(Operator::identity(k), gamma, target);
}

Constraint adjoint_times_in(const HilbertSpace& h, const HilbertSpace& k,
                            const Operator& gamma, const OperatorSpan& target) {
  (void)k;
  return sandwich_in(gamma.adjoint(), Operator::identity(h), target.adjoint());
}

Constraint sandwich_in(const Operator& left, const Operator& right,
                       const OperatorSpan& target) {
  Constraint c;
  c.kind = Constraint::Kind::Sandwich;
  c.left = left;
  c.right = right;
  c.target = target;
  return c;
}

Constraint intertwines(const Operator& a, const Operator& b) {
  Constraint c;
  c.kind = Constraint::Kind::Commute;
  c.a = a;
  c.b = b;
  return c;
}

namespace {

// Keeps an n x n triangular factor whose row space equals that of all rows fed.
class RowCompressor {
 public:
  explicit RowCompressor(Index n) : n_(n), r_(0, n) {}
  void add(const Mat& rows) {
    if (rows.rows() == 0) return;
    pending_.push_back(rows);
    pending_rows_ += rows.rows();
    if (pending_rows_ + r_.rows() > std::max<Index>(2 * n_, 256)) flush();
  }
  Mat finish() {
    flush();
    return r_;
  }

 private:
  void flush() {
    if (pending_.empty()) return;
    Mat stacked(r_.rows() + pending_rows_, n_);
    stacked.topRows(r_.rows()) = r_;
    Index at = r_.rows();
    for (const auto& p : pending_) {
      stacked.middleRows(at, p.rows()) = p;
      at += p.rows();
    }
    pending_.clear();
    pending_rows_ = 0;
    if (stacked.rows() <= n_) {
      r_ = std::move(stacked);
      return;
    }
    Eigen::HouseholderQR<Mat> qr(stacked);
    r_ = qr.matrixQR().topRows(n_).triangularView<Eigen::Upper>();
  }
  Index n_;
  Mat r_;
  std::vector<Mat> pending_;
  Index pending_rows_ = 0;
};

}  // namespace

OperatorSpan solve_operator_constraints(const HilbertSpace& h, const HilbertSpace& k,
                                        std::span<const Constraint> constraints,
                                        double tol) {
  const Index n = h.dim() * k.dim();
  RowCompressor rc(n);
  for (const auto& c : constraints) {
    if (c.kind == Constraint::Kind::Sandwich) {
      require_same(c.left.domain(), k, "constraint left factor");
      require_same(c.right.codomain(), h, "constraint right factor");
      require_same(c.target.domain(), c.right.domain(), "constraint target domain");
      require_same(c.target.codomain(), c.left.codomain(), "constraint target codomain");
      if (c.target.rank() == c.target.ambient_dim()) continue;
      Mat m = kron(c.right.matrix().transpose(), c.left.matrix());
      if (c.target.rank() > 0) m -= c.target.basis() * (c.target.basis().adjoint() * m);
      rc.add(m);
    } else {
      require_same(c.a.domain(), k, "commutation constraint");
      require_same(c.b.domain(), h, "commutation constraint");
      Mat m = kron(Mat::Identity(h.dim(), h.dim()), c.a.matrix()) -
              kron(c.b.matrix().transpose(), Mat::Identity(k.dim(), k.dim()));
      rc.add(m);
    }
  }
  Mat r = rc.finish();
  if (r.rows() == 0) return OperatorSpan(h, k, Mat::Identity(n, n));
  const Svd d = svd(r, SvdVectors::none, SvdVectors::full);
  const auto& sv = d.s;
  std::vector<Index> null_cols;
  const double smax = sv.size() ? sv(0) : 0.0;
  for (Index c = 0; c < n; ++c)
    if (c >= sv.size() || sv(c) <= tol * smax) null_cols.push_back(c);
  Mat basis(n, static_cast<Index>(null_cols.size()));
  for (std::size_t i = 0; i < null_cols.size(); ++i)
    basis.col(static_cast<Index>(i)) = d.v.col(null_cols[i]);
  return OperatorSpan(h, k, std::move(basis));
}

// ------------------------------------------------------------ quotients

GramQuotient gram_quotient(const Mat& gram, double tol) {
  if (gram.rows() != gram.cols()) throw ShapeError("gram_quotient: Gram matrix not square");
  GramQuotient q;
  const Index n = gram.rows();
  if (n == 0) {
    q.synthesis = Mat(0, 0);
    return q;
  }
  double herm = (gram - gram.adjoint()).norm();
  double scale = gram.norm();
  if (herm > tol * std::max(scale, 1.0))
    throw NumericError("gram_quotient: Gram matrix is not Hermitian (defect " +
                       std::to_string(herm) + ")");
  Mat sym = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  const auto& ev = es.eigenvalues();
  const double lmax = ev.cwiseAbs().maxCoeff();
  q.min_eigenvalue = ev(0);
  if (ev(0) < -tol * lmax) {
    std::ostringstream os;
    os << "gram_quotient: Gram matrix is not positive semidefinite (eigenvalue " << ev(0)
       << ")";
    throw NumericError(os.str());
  }
  std::vector<Index> keep;
  for (Index i = n - 1; i >= 0; --i)
    if (ev(i) > tol * lmax) keep.push_back(i);
  q.dim = static_cast<Index>(keep.size());
  q.synthesis.resize(q.dim, n);
  for (Index r = 0; r < q.dim; ++r) {
    Index i = keep[static_cast<std::size_t>(r)];
    q.synthesis.row(r) = std::sqrt(ev(i)) * es.eigenvectors().col(i).adjoint();
  }
  return q;
}

RightSolve solve_right(const Mat& b, const Mat& c, double tol) {
  if (b.cols() != c.cols()) throw ShapeError("solve_right: column counts differ");
  RightSolve out;
  if (b.rows() == 0) {
    out.x = Mat(c.rows(), 0);
    out.residual = c.norm() > 0 ? 1.0 : 0.0;
    out.unique = true;
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(b.adjoint());
  cod.setThreshold(tol);
  out.x = cod.solve(c.adjoint()).adjoint();
  out.unique = cod.rank() == b.rows();
  double cn = c.norm();
  double rn = (out.x * b - c).norm();
  out.residual = cn > 0 ? rn / cn : rn;
  return out;
}

}  // namespace cpmu
