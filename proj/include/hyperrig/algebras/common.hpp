#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "hyperrig/error.hpp"
#include "hyperrig/hypervector.hpp"

namespace hyperrig {

/// Operand list for n-ary bundling kernels.
using Operands = std::span<const Hypervector* const>;

inline void require_same_algebra(const Hypervector& x, const Hypervector& y, const char* op) {
  if (!(x.params() == y.params())) {
    throw DimensionError(std::string(op) + ": operands come from different algebra configurations");
  }
}

inline void require_compatible(const Hypervector& x, const Hypervector& y, const char* op) {
  require_same_algebra(x, y, op);
  if (x.dimension() != y.dimension()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(x.dimension()) + " vs " +
                         std::to_string(y.dimension()) + ")");
  }
}

inline void require_compatible(Operands xs, const char* op) {
  if (xs.empty()) throw DomainError(std::string(op) + ": no operands");
  for (auto* x : xs) require_compatible(*xs.front(), *x, op);
}

inline void require_algebra(const Hypervector& x, AlgebraId id, const char* op) {
  if (x.algebra() != id) {
    throw DomainError(std::string(op) + " expects " + std::string(algebra_name(id)) + " operands, got " +
                      std::string(algebra_name(x.algebra())));
  }
}

/// Complex view of an FHRR carrier (phases become unit phasors).
inline std::vector<std::complex<double>> complex_view(const Hypervector& x) {
  if (x.carrier() == Carrier::Complex) return x.complexes();
  const auto& codes = x.phases();
  std::vector<std::complex<double>> out(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) out[i] = std::polar(1.0, phase_to_radians(codes[i]));
  return out;
}

/// Bipolar view of a BSC carrier: bit 0 -> +1, bit 1 -> -1; accumulators pass through.
inline std::vector<double> bipolar_view(const Hypervector& x) {
  if (x.carrier() == Carrier::Reals) return x.reals();
  std::vector<double> out(x.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.bit(i) ? -1.0 : 1.0;
  return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Cosine of two real vectors; zero norm is an error rather than NaN.
inline double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw DomainError("similarity undefined for a zero vector");
  if (std::equal(a.begin(), a.end(), b.begin(), b.end())) return 1.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

inline std::vector<double> add(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline std::vector<double> sum_reals(Operands xs) {
  std::vector<double> out(xs.front()->dimension(), 0.0);
  for (auto* x : xs) {
    const auto& v = x->reals();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  }
  return out;
}

/// Scales to unit Euclidean norm; a zero sum has no direction.
inline std::vector<double> normalized(std::vector<double> v) {
  const double n = norm(v);
  if (n == 0.0) throw DomainError("cannot normalize a zero vector");
  for (auto& e : v) e /= n;
  return v;
}

}  // namespace hyperrig
