#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hyperrig/algebras/bsc.hpp"
#include "hyperrig/algebras/bsdc.hpp"
#include "hyperrig/algebras/common.hpp"
#include "hyperrig/algebras/hrr.hpp"
#include "hyperrig/algebras/map.hpp"
#include "hyperrig/algebras/mbat.hpp"
#include "hyperrig/algebras/tpr.hpp"
#include "hyperrig/algebras/vtb.hpp"
#include "hyperrig/error.hpp"
#include "hyperrig/hypervector.hpp"
#include "hyperrig/params.hpp"
#include "hyperrig/permutation.hpp"
#include "hyperrig/seeding.hpp"

namespace hyperrig {

/// Whether the algebra has an unbinding operation at all.
inline bool supports_inverse(AlgebraId id) { return id != AlgebraId::BSDC_CDT; }

/// Expected similarity of two independent random base vectors: the baseline that
/// "dissimilar" is measured against (1/2 for Hamming similarity, the density for overlap).
inline double chance_similarity(const AlgebraParams& p) {
  if (p.algebra == AlgebraId::BSC) return 0.5;
  if (is_bsdc(p.algebra)) return *p.density;
  return 0.0;
}

namespace detail {

inline std::vector<double> random_bipolar(std::size_t d, Rng& rng) {
  std::vector<double> v(d);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i % 64 == 0) bits = rng();
    v[i] = (bits >> (i % 64)) & 1u ? -1.0 : 1.0;
  }
  return v;
}

/// k distinct indices below d, uniform without replacement (Floyd's algorithm).
inline std::vector<std::uint32_t> random_subset(std::size_t d, std::size_t k, Rng& rng) {
  std::vector<char> taken(d, 0);
  for (std::size_t j = d - k; j < d; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    std::size_t t = pick(rng);
    taken[taken[t] ? j : t] = 1;
  }
  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < d; ++i)
    if (taken[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

inline void require_same_shape(const Hypervector& x, const Hypervector& y, const char* op) {
  require_compatible(x, y, op);
  if (x.tensor_order() != y.tensor_order()) throw DimensionError(std::string(op) + ": tensor orders differ");
}

}  // namespace detail

/// Base vector for a symbol, drawn from the algebra's base distribution. The same
/// (params, symbol_seed) always yields the same vector.
inline Hypervector random_vector(const AlgebraParams& p, std::uint64_t symbol_seed) {
  p.validate();
  const std::size_t d = p.dimension;
  if (p.algebra == AlgebraId::MBAT) return mbat_random(p, symbol_seed);
  Rng rng(symbol_vector_seed(p.master_seed, symbol_seed));
  switch (p.algebra) {
    case AlgebraId::TPR:
    case AlgebraId::MAP_I:
    case AlgebraId::MAP_B: return Hypervector::from_reals(p, detail::random_bipolar(d, rng));
    case AlgebraId::MAP_C: {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      std::vector<double> v(d);
      for (auto& e : v) e = u(rng);
      return Hypervector::from_reals(p, std::move(v));
    }
    case AlgebraId::FHRR: {
      std::vector<std::uint32_t> codes(d);
      for (auto& c : codes) c = static_cast<std::uint32_t>(rng() >> 32);
      return Hypervector::from_phases(p, std::move(codes));
    }
    case AlgebraId::HRR: {
      std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(static_cast<double>(d)));
      std::vector<double> v(d);
      for (auto& e : v) e = g(rng);
      return Hypervector::from_reals(p, std::move(v));
    }
    case AlgebraId::VTB: return vtb_random(p, rng);
    case AlgebraId::BSC: {
      std::vector<std::uint64_t> words(words_for_bits(d));
      for (auto& w : words) w = rng();
      if (d % 64 != 0) words.back() &= (std::uint64_t{1} << (d % 64)) - 1;
      return Hypervector::from_bits(p, std::move(words), d);
    }
    case AlgebraId::BSDC_S:
    case AlgebraId::BSDC_CDT: return Hypervector::from_sparse(p, detail::random_subset(d, p.active_count(), rng), d);
    case AlgebraId::BSDC_SEG: {
      const std::size_t b = *p.block_size;
      std::uniform_int_distribution<std::size_t> off(0, b - 1);
      std::vector<std::uint32_t> idx(d / b);
      for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<std::uint32_t>(k * b + off(rng));
      return Hypervector::from_sparse(p, std::move(idx), d);
    }
    default: break;
  }
  throw ConfigError("random_vector: unhandled algebra");
}

/// Additive identity of the carrier (for BSC, the zero bipolar accumulator).
inline Hypervector zero(const AlgebraParams& p) {
  p.validate();
  switch (p.algebra) {
    case AlgebraId::FHRR: return Hypervector::from_complex(p, std::vector<std::complex<double>>(p.dimension));
    case AlgebraId::BSDC_S:
    case AlgebraId::BSDC_SEG:
    case AlgebraId::BSDC_CDT: return Hypervector::from_sparse(p, {}, p.dimension);
    default: return Hypervector::from_reals(p, std::vector<double>(p.dimension, 0.0));
  }
}

/// Two-sided multiplicative identity where one exists. For TPR this is the order-0
/// tensor [1]; BSDC-S's {0} is a left identity only.
inline Hypervector identity(const AlgebraParams& p) {
  p.validate();
  const std::size_t d = p.dimension;
  switch (p.algebra) {
    case AlgebraId::TPR: return Hypervector::from_reals(p, {1.0}, 0);
    case AlgebraId::MAP_I:
    case AlgebraId::MAP_B:
    case AlgebraId::MAP_C: return Hypervector::from_reals(p, std::vector<double>(d, 1.0));
    case AlgebraId::FHRR: return Hypervector::from_phases(p, std::vector<std::uint32_t>(d, 0));
    case AlgebraId::HRR: {
      std::vector<double> v(d, 0.0);
      v[0] = 1.0;
      return Hypervector::from_reals(p, std::move(v));
    }
    case AlgebraId::MBAT: return mbat_identity(p);
    case AlgebraId::VTB: return vtb_identity(p);
    case AlgebraId::BSC: return Hypervector::from_bits(p, std::vector<std::uint64_t>(words_for_bits(d), 0), d);
    case AlgebraId::BSDC_S: return Hypervector::from_sparse(p, {0}, d);
    case AlgebraId::BSDC_SEG: return bsdc_segment_identity(p);
    case AlgebraId::BSDC_CDT: break;
  }
  throw UnsupportedError("bsdc_cdt has no multiplicative identity");
}

inline bool is_zero(const Hypervector& x, double tol = 0.0) {
  switch (x.carrier()) {
    case Carrier::Reals:
      for (double v : x.reals())
        if (std::abs(v) > tol) return false;
      return true;
    case Carrier::Complex:
      for (auto v : x.complexes())
        if (std::abs(v) > tol) return false;
      return true;
    case Carrier::Sparse: return x.active().empty();
    default: return false;  // unit phasors and bits are never zero
  }
}

/// Equality up to `tol` per element, comparing across carriers of one algebra
/// (bits against bipolar accumulators, phase codes against complex values).
inline bool approx_equal(const Hypervector& x, const Hypervector& y, double tol = 1e-9) {
  if (!(x.params() == y.params()) || x.dimension() != y.dimension() || x.tensor_order() != y.tensor_order())
    return false;
  if (x.carrier() == Carrier::Sparse || y.carrier() == Carrier::Sparse) return x.payload() == y.payload();
  if (x.carrier() == Carrier::Bits && y.carrier() == Carrier::Bits) return x.payload() == y.payload();
  if (x.algebra() == AlgebraId::FHRR) {
    if (x.carrier() == Carrier::Phases && y.carrier() == Carrier::Phases) {
      const auto &a = x.phases(), &b = y.phases();
      for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(phase_to_radians(a[i] - b[i])) > tol) return false;
      return true;
    }
    auto a = complex_view(x), b = complex_view(y);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
  }
  const auto a = x.algebra() == AlgebraId::BSC ? bipolar_view(x) : x.reals();
  const auto b = y.algebra() == AlgebraId::BSC ? bipolar_view(y) : y.reals();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

/// Similarity normalized so 1 means equivalent: cosine, the real part of the
/// normalized Hermitian product (FHRR), 1 - normalized Hamming (BSC), or overlap over
/// the larger active count (BSDC).
inline double similarity(const Hypervector& x, const Hypervector& y) {
  detail::require_same_shape(x, y, "similarity");
  switch (x.algebra()) {
    case AlgebraId::FHRR: {
      if (x.carrier() == Carrier::Phases && y.carrier() == Carrier::Phases) {
        const auto &a = x.phases(), &b = y.phases();
        if (a == b) return 1.0;
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::cos(phase_to_radians(a[i] - b[i]));
        return std::clamp(s / static_cast<double>(a.size()), -1.0, 1.0);
      }
      auto a = complex_view(x), b = complex_view(y);
      double na = 0.0, nb = 0.0;
      std::complex<double> s;
      for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * std::conj(b[i]);
        na += std::norm(a[i]);
        nb += std::norm(b[i]);
      }
      if (na == 0.0 || nb == 0.0) throw DomainError("similarity undefined for a zero vector");
      if (a == b) return 1.0;
      return std::clamp(s.real() / std::sqrt(na * nb), -1.0, 1.0);
    }
    case AlgebraId::BSC: return bsc_similarity(x, y);
    case AlgebraId::BSDC_S:
    case AlgebraId::BSDC_SEG:
    case AlgebraId::BSDC_CDT: return overlap_similarity(x, y);
    default: return cosine(x.reals(), y.reals());
  }
}

/// Distance recovered from similarity: normalized Hamming for BSC bit vectors,
/// 1 - overlap for BSDC, angular distance arccos(cos)/pi otherwise.
inline double metric_distance(const Hypervector& x, const Hypervector& y) {
  if (x.algebra() == AlgebraId::BSC && x.carrier() == Carrier::Bits && y.carrier() == Carrier::Bits) {
    detail::require_same_shape(x, y, "metric_distance");
    return static_cast<double>(hamming(x.bit_words(), y.bit_words())) / static_cast<double>(x.dimension());
  }
  const double s = similarity(x, y);
  if (is_bsdc(x.algebra())) return 1.0 - s;
  const double c = x.algebra() == AlgebraId::BSC ? 2.0 * s - 1.0 : s;
  if (c >= 1.0) return 0.0;
  return std::acos(std::clamp(c, -1.0, 1.0)) / kPi;
}

/// N-ary bundle over pointers to operands.
inline Hypervector bundle_ptrs(Operands xs, BundleMode mode = BundleMode::Native) {
  require_compatible(xs, "bundle");
  for (auto* x : xs) detail::require_same_shape(*xs.front(), *x, "bundle");
  switch (xs.front()->algebra()) {
    case AlgebraId::TPR:
    case AlgebraId::MAP_I: return real_bundle_all(xs, BundleMode::Raw);  // plain addition in both modes
    case AlgebraId::MAP_B:
    case AlgebraId::MAP_C:
    case AlgebraId::FHRR: return map_bundle_all(xs, mode);
    case AlgebraId::HRR:
    case AlgebraId::VTB: return real_bundle_all(xs, mode);
    case AlgebraId::MBAT: return mbat_bundle_all(xs, mode);
    case AlgebraId::BSC: return bsc_bundle_all(xs, mode);
    default: return bsdc_bundle_all(xs);
  }
}

inline Hypervector bundle_all(std::span<const Hypervector> xs, BundleMode mode = BundleMode::Native) {
  std::vector<const Hypervector*> ptrs;
  ptrs.reserve(xs.size());
  for (const auto& x : xs) ptrs.push_back(&x);
  return bundle_ptrs(ptrs, mode);
}

inline Hypervector bundle(const Hypervector& x, const Hypervector& y, BundleMode mode = BundleMode::Native) {
  const Hypervector* ops[] = {&x, &y};
  return bundle_ptrs(ops, mode);
}

/// x (x) y. For BSDC-S the left operand supplies the shift, so that unbind(x, bind(x, y)) = y;
/// an empty operand annihilates in the sparse algebras.
inline Hypervector bind(const Hypervector& x, const Hypervector& y) {
  switch (x.algebra()) {
    case AlgebraId::TPR: return tpr_bind(x, y);
    case AlgebraId::MAP_I:
    case AlgebraId::MAP_B:
    case AlgebraId::MAP_C:
    case AlgebraId::FHRR: return map_bind(x, y);
    case AlgebraId::HRR: return hrr_bind(x, y);
    case AlgebraId::MBAT: return mbat_bind(x, y);
    case AlgebraId::VTB: return vtb_bind(x, y);
    case AlgebraId::BSC: return bsc_bind(x, y);
    case AlgebraId::BSDC_S:
      require_compatible(x, y, "bind");
      if (x.active().empty() || y.active().empty()) return zero(x.params());
      return bsdc_shift_bind(y, x);
    case AlgebraId::BSDC_SEG: return bsdc_segment_bind(x, y);
    case AlgebraId::BSDC_CDT:
      require_compatible(x, y, "bind");
      if (x.active().empty() != y.active().empty()) return zero(x.params());
      return bsdc_cdt_bind(x, y);
  }
  throw ConfigError("bind: unhandled algebra");
}

inline Hypervector inverse(const Hypervector& x) {
  switch (x.algebra()) {
    case AlgebraId::TPR:
    case AlgebraId::MAP_I:
    case AlgebraId::MAP_B:
    case AlgebraId::MAP_C:
    case AlgebraId::BSC: return x;
    case AlgebraId::FHRR: {
      if (x.carrier() == Carrier::Phases) {
        std::vector<std::uint32_t> codes(x.phases());
        for (auto& c : codes) c = 0u - c;
        return Hypervector::from_phases(x.params(), std::move(codes));
      }
      // Conjugate, which is the inverse on unit phasors; on raw sums it avoids the noise
      // amplification of 1/z at small magnitudes.
      std::vector<std::complex<double>> v(x.complexes());
      for (auto& e : v) e = std::conj(e);
      return Hypervector::from_complex(x.params(), std::move(v));
    }
    case AlgebraId::HRR: return hrr_involution(x);
    case AlgebraId::MBAT: return mbat_inverse(x);
    case AlgebraId::VTB: return vtb_transpose(x);
    case AlgebraId::BSDC_S:
      if (x.active().empty()) throw DomainError("inverse: empty bsdc_s vector");
      return bsdc_reverse_shift(x);
    case AlgebraId::BSDC_SEG: return bsdc_segment_inverse(x);
    case AlgebraId::BSDC_CDT: break;
  }
  throw UnsupportedError("bsdc_cdt has no inverse");
}

/// inverse(x) (x) z; TPR contracts the tensor instead.
inline Hypervector unbind(const Hypervector& x, const Hypervector& z) {
  if (x.algebra() == AlgebraId::TPR) return tpr_unbind(x, z);
  if (!supports_inverse(x.algebra())) throw UnsupportedError("bsdc_cdt has no unbinding");
  require_compatible(x, z, "unbind");
  return bind(inverse(x), z);
}

/// Applies the role's fixed permutation k times (k < 0 applies its inverse).
inline Hypervector braid(const Hypervector& x, BraidRole role, long k = 1) {
  if (role.role_index >= BraidRole::kMaxRoles) {
    throw ConfigError("braid role " + std::to_string(role.role_index) + " is out of range (max " +
                      std::to_string(BraidRole::kMaxRoles - 1) + ")");
  }
  if (k == 0) return x;
  if (x.algebra() == AlgebraId::MBAT) return mbat_braid(x, role.role_index, k);
  const auto& p = x.params();
  const std::size_t block = x.algebra() == AlgebraId::BSDC_SEG ? *p.block_size : 1;
  auto perm = braid_permutation(p.master_seed, role.role_index, x.dimension(), block);
  switch (x.carrier()) {
    case Carrier::Reals:
      return Hypervector::from_reals(p, perm->apply<double>(x.reals(), k), x.tensor_order(), x.role());
    case Carrier::Phases: return Hypervector::from_phases(p, perm->apply<std::uint32_t>(x.phases(), k));
    case Carrier::Complex: return Hypervector::from_complex(p, perm->apply<std::complex<double>>(x.complexes(), k));
    case Carrier::Bits: {
      std::vector<std::uint8_t> bits(x.dimension());
      for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = x.bit(i) ? 1 : 0;
      auto moved = perm->apply<std::uint8_t>(bits, k);
      std::vector<std::uint64_t> words(words_for_bits(moved.size()), 0);
      for (std::size_t i = 0; i < moved.size(); ++i)
        if (moved[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
      return Hypervector::from_bits(p, std::move(words), x.dimension());
    }
    case Carrier::Sparse: return Hypervector::from_sparse(p, perm->apply_indices(x.active(), k), x.dimension());
  }
  throw ConfigError("braid: unhandled carrier");
}

/// a * x. Binary and sparse carriers accept only a in {0, 1}.
inline Hypervector scalar_mul(Scalar a, const Hypervector& x) {
  const double s = a.value();
  if (s == 1.0) return x;
  const auto& p = x.params();
  if (x.carrier() == Carrier::Bits || x.carrier() == Carrier::Sparse) {
    if (s != 0.0) {
      throw DomainError("scalar_mul: " + std::string(algebra_name(x.algebra())) +
                        " vectors only admit the scalars 0 and 1");
    }
    return zero(p);
  }
  if (s == 0.0) {
    if (x.algebra() == AlgebraId::TPR)
      return Hypervector::from_reals(p, std::vector<double>(x.dimension(), 0.0), x.tensor_order());
    return zero(p);
  }
  if (x.algebra() == AlgebraId::FHRR) {
    auto v = complex_view(x);
    for (auto& e : v) e *= s;
    return Hypervector::from_complex(p, std::move(v));
  }
  std::vector<double> v(x.reals());
  for (auto& e : v) e *= s;
  return Hypervector::from_reals(p, std::move(v), x.tensor_order(), role_scaled(x.role(), s));
}

}  // namespace hyperrig
