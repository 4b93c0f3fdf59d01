#pragma once
// Factorization fixtures shared by several test binaries.

#include "cpmu/corpus.hpp"
#include "cpmu/cstar_base.hpp"
#include "cpmu/groupoid_pmu.hpp"

#include "oracle.hpp"

namespace fixtures {

using namespace cpmu;

/// Random unitary from the QR of a Gaussian matrix.
inline Operator random_unitary(oracle::Rng& rng, const HilbertSpace& h) {
  Eigen::HouseholderQR<Mat> qr(rng.matrix(h.dim(), h.dim()));
  return Operator(h, h, qr.householderQ() * Mat::Identity(h.dim(), h.dim()));
}

/// alpha = span{zeta -> b zeta (x) v : b in B, v in C^m} inside
/// L(h, h (x) C^m), so rho(b') = b' (x) 1.  Orthonormal index i*m + v.
inline Factorization amplified(const CStarBase& base, Index m, const std::string& name = "amp") {
  const Index n = base.space().dim();
  const HilbertSpace out = HilbertSpace::fresh(name, n * m);
  std::vector<Operator> gens;
  for (const auto& b : base.algebra().elements())
    for (Index v = 0; v < m; ++v) {
      Mat g = Mat::Zero(n * m, n);
      for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < n; ++k) g(i * m + v, k) = b.matrix()(i, k);
      gens.emplace_back(base.space(), out, g);
    }
  return make_factorization(span_normalize(gens), base, kDefaultTol, name);
}

/// x (x) 1 on h (x) C^m for an operator x on h, or 1 (x) y for y on C^m.
inline Operator amplify_left(const Operator& x, const Factorization& a, Index m) {
  const Index n = x.domain().dim();
  Mat out = Mat::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k)
      for (Index v = 0; v < m; ++v) out(i * m + v, k * m + v) = x.matrix()(i, k);
  return Operator(a.target(), a.target(), out);
}

/// Random element of B (x) M_m: the operators on h (x) C^m preserving the
/// amplified factorization.
inline Operator random_module_map(oracle::Rng& rng, const CStarBase& base, const Factorization& a, Index m) {
  const Index n = base.space().dim();
  Mat out = Mat::Zero(n * m, n * m);
  for (const auto& b : base.algebra().elements()) {
    const Mat s = rng.matrix(m, m);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k)
        for (Index v = 0; v < m; ++v)
          for (Index w = 0; w < m; ++w) out(i * m + v, k * m + w) += b.matrix()(i, k) * s(v, w);
  }
  return Operator(a.target(), a.target(), out);
}

inline GroupoidEmbeddings embeddings(const std::string& instance) {
  const auto inst = corpus_instance(instance);
  const auto m = build_measure(inst.groupoid, inst.haar, inst.unit_weights);
  return build_embeddings(inst.groupoid, m);
}

}  // namespace fixtures
