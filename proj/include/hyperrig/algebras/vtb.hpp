#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "hyperrig/algebras/common.hpp"
#include "hyperrig/seeding.hpp"

namespace hyperrig {

// Vector-derived Transformation Binding. With d = m*m, x is read column-major as an
// m x m matrix X; V(x) is block-diagonal with m copies of sqrt(m) * X. Binding two
// vectors is then the matrix product of their blocks, which makes bind associative and
// vec(I)/sqrt(m) a two-sided identity.

namespace detail {

using MatrixMap = Eigen::Map<const Eigen::MatrixXd>;

inline std::size_t vtb_side(const Hypervector& x) {
  const auto m = isqrt(x.dimension());
  if (m * m != x.dimension()) throw DimensionError("vtb: dimension is not a perfect square");
  return m;
}

}  // namespace detail

inline Hypervector vtb_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "vtb_bind");
  require_algebra(x, AlgebraId::VTB, "vtb_bind");
  const auto m = static_cast<Eigen::Index>(detail::vtb_side(x));
  detail::MatrixMap X(x.reals().data(), m, m);
  detail::MatrixMap Y(y.reals().data(), m, m);  // column k is the k-th block of y
  Eigen::MatrixXd Z = std::sqrt(static_cast<double>(m)) * (X * Y);
  return Hypervector::from_reals(x.params(), std::vector<double>(Z.data(), Z.data() + Z.size()));
}

/// Transposes the block: V(x)^T, exact inverse when the block is orthogonal.
inline Hypervector vtb_transpose(const Hypervector& x) {
  require_algebra(x, AlgebraId::VTB, "vtb_transpose");
  const auto m = static_cast<Eigen::Index>(detail::vtb_side(x));
  Eigen::MatrixXd T = detail::MatrixMap(x.reals().data(), m, m).transpose();
  return Hypervector::from_reals(x.params(), std::vector<double>(T.data(), T.data() + T.size()));
}

inline Hypervector vtb_unbind(const Hypervector& x, const Hypervector& z) { return vtb_bind(vtb_transpose(x), z); }

/// vec(I) / sqrt(m): V of this vector is the identity matrix.
inline Hypervector vtb_identity(const AlgebraParams& p) {
  const std::size_t m = p.vtb_block();
  std::vector<double> v(p.dimension, 0.0);
  for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0 / std::sqrt(static_cast<double>(m));
  return Hypervector::from_reals(p, std::move(v));
}

/// Unit-norm vector whose block is a random orthogonal matrix: Q from the QR
/// factorization of a seeded Gaussian matrix, columns sign-fixed so R has a positive
/// diagonal (Haar distributed). Entries are marginally close to N(0, 1/d).
inline Hypervector vtb_random(const AlgebraParams& p, Rng& rng) {
  const auto m = static_cast<Eigen::Index>(p.vtb_block());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(m, m);
  for (Eigen::Index c = 0; c < m; ++c)
    for (Eigen::Index r = 0; r < m; ++r) G(r, c) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < m; ++c)
    if (R(c, c) < 0) Q.col(c) *= -1.0;
  Q /= std::sqrt(static_cast<double>(m));
  return Hypervector::from_reals(p, std::vector<double>(Q.data(), Q.data() + Q.size()));
}

}  // namespace hyperrig
