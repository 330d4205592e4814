#pragma once

#include <string>
#include <vector>

#include "hyperrig/algebras/common.hpp"

namespace hyperrig {

// Tensor Product Representations: binding is the flattened outer product, so the
// dimension tag multiplies and the tensor order adds.

inline Hypervector tpr_bind(const Hypervector& x, const Hypervector& y) {
  require_same_algebra(x, y, "tpr_bind");
  require_algebra(x, AlgebraId::TPR, "tpr_bind");
  const auto& p = x.params();
  const int order = x.tensor_order() + y.tensor_order();
  if (order > p.max_tensor_depth) {
    throw ConfigError("tpr_bind: tensor order " + std::to_string(order) + " exceeds max_tensor_depth " +
                      std::to_string(p.max_tensor_depth));
  }
  const std::size_t dx = x.dimension(), dy = y.dimension();
  if (dx * dy > p.max_tensor_elements) {
    throw ConfigError("tpr_bind: " + std::to_string(dx * dy) + " elements exceed the tensor cap " +
                      std::to_string(p.max_tensor_elements));
  }
  const auto &a = x.reals(), &b = y.reals();
  std::vector<double> out(dx * dy);
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dy; ++j) out[i * dy + j] = a[i] * b[j];
  return Hypervector::from_reals(p, std::move(out), order);
}

/// Contracts the leading factor of z with x / |x|^2, undoing tpr_bind(x, .) exactly.
inline Hypervector tpr_unbind(const Hypervector& x, const Hypervector& z) {
  require_same_algebra(x, z, "tpr_unbind");
  require_algebra(x, AlgebraId::TPR, "tpr_unbind");
  const std::size_t dx = x.dimension(), dz = z.dimension();
  if (dz % dx != 0 || x.tensor_order() > z.tensor_order()) {
    throw DimensionError("tpr_unbind: role of dimension " + std::to_string(dx) + " does not factor a tensor of " +
                         std::to_string(dz) + " elements");
  }
  const auto& a = x.reals();
  const double n2 = dot(a, a);
  if (n2 == 0.0) throw DomainError("tpr_unbind: zero role vector");
  const std::size_t dy = dz / dx;
  const auto& t = z.reals();
  std::vector<double> out(dy, 0.0);
  for (std::size_t i = 0; i < dx; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < dy; ++j) out[j] += a[i] * t[i * dy + j];
  }
  for (auto& v : out) v /= n2;
  return Hypervector::from_reals(x.params(), std::move(out), z.tensor_order() - x.tensor_order());
}

}  // namespace hyperrig
