#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "hyperrig/algebras/common.hpp"
#include "hyperrig/permutation.hpp"
#include "hyperrig/seeding.hpp"

namespace hyperrig {

// Binary sparse distributed codes. Values are sorted active-index sets.

using IndexSet = std::vector<std::uint32_t>;

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t overlap_count(const IndexSet& a, const IndexSet& b) {
  std::size_t n = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else ++n, ++i, ++j;
  }
  return n;
}

/// |x & y| / max(|x|, |y|); undefined when both are empty.
inline double overlap_similarity(const Hypervector& x, const Hypervector& y) {
  const auto &a = x.active(), &b = y.active();
  const std::size_t m = std::max(a.size(), b.size());
  if (m == 0) throw DomainError("overlap similarity undefined for two empty vectors");
  return static_cast<double>(overlap_count(a, b)) / static_cast<double>(m);
}

/// Union of active sets; the same operation in RAW and NATIVE mode.
inline Hypervector bsdc_bundle_all(Operands xs) {
  require_compatible(xs, "bsdc_bundle");
  IndexSet acc;
  for (auto* x : xs) acc = set_union(acc, x->active());
  return Hypervector::from_sparse(xs.front()->params(), std::move(acc), xs.front()->dimension());
}

inline Hypervector bsdc_bundle(const Hypervector& x, const Hypervector& y) {
  const Hypervector* ops[] = {&x, &y};
  return bsdc_bundle_all(ops);
}

inline IndexSet shifted(const IndexSet& a, std::uint64_t s, std::size_t d) {
  IndexSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint32_t>((a[i] + s) % d);
  std::sort(out.begin(), out.end());
  return out;
}

/// BSDC-S: x circularly shifted by (sum of y's active indices) mod d.
inline Hypervector bsdc_shift_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "bsdc_shift_bind");
  if (y.active().empty()) throw DomainError("bsdc_shift_bind: shift operand has no active indices");
  const std::size_t d = x.dimension();
  std::uint64_t s = 0;
  for (auto i : y.active()) s = (s + i) % d;
  return Hypervector::from_sparse(x.params(), shifted(x.active(), s, d), d);
}

/// Negates every index mod d, so the shift sum is negated as well.
inline Hypervector bsdc_reverse_shift(const Hypervector& y) {
  const std::size_t d = y.dimension();
  IndexSet out;
  out.reserve(y.active().size());
  for (auto i : y.active()) out.push_back(static_cast<std::uint32_t>((d - i) % d));
  std::sort(out.begin(), out.end());
  return Hypervector::from_sparse(y.params(), std::move(out), d);
}

/// BSDC-SEG: block-wise modular addition of offsets. For sets with several offsets in a
/// block this is the block-wise sumset, which keeps bind linear over OR.
inline Hypervector bsdc_segment_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "bsdc_segment_bind");
  require_algebra(x, AlgebraId::BSDC_SEG, "bsdc_segment_bind");
  const std::size_t b = *x.params().block_size;
  const std::size_t d = x.dimension();
  const auto &a = x.active(), &c = y.active();
  IndexSet out;
  std::vector<std::uint32_t> block;
  std::size_t i = 0, j = 0;
  for (std::size_t blk = 0; blk < d / b; ++blk) {
    const std::size_t base = blk * b;
    const std::size_t i0 = i, j0 = j;
    while (i < a.size() && a[i] < base + b) ++i;
    while (j < c.size() && c[j] < base + b) ++j;
    block.clear();
    for (std::size_t p = i0; p < i; ++p)
      for (std::size_t q = j0; q < j; ++q)
        block.push_back(static_cast<std::uint32_t>(base + ((a[p] - base) + (c[q] - base)) % b));
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    out.insert(out.end(), block.begin(), block.end());
  }
  return Hypervector::from_sparse(x.params(), std::move(out), d);
}

/// Block-wise offset negation; needs exactly one active index per block.
inline Hypervector bsdc_segment_inverse(const Hypervector& x) {
  require_algebra(x, AlgebraId::BSDC_SEG, "bsdc_segment_inverse");
  const std::size_t b = *x.params().block_size;
  const auto& a = x.active();
  if (a.size() != x.dimension() / b) {
    throw DomainError("bsdc_seg inverse needs exactly one active index per block");
  }
  IndexSet out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] / b != k) throw DomainError("bsdc_seg inverse needs exactly one active index per block");
    out[k] = static_cast<std::uint32_t>(k * b + (b - (a[k] - k * b)) % b);
  }
  return Hypervector::from_sparse(x.params(), std::move(out), x.dimension());
}

inline Hypervector bsdc_segment_identity(const AlgebraParams& p) {
  const std::size_t b = *p.block_size;
  IndexSet out;
  for (std::size_t k = 0; k < p.dimension / b; ++k) out.push_back(static_cast<std::uint32_t>(k * b));
  return Hypervector::from_sparse(p, std::move(out), p.dimension);
}

/// Permuted copies tried per thinning round, and the round limit.
inline constexpr std::size_t kCdtCopiesPerRound = 3;
inline constexpr std::size_t kCdtMaxRounds = 64;

/// BSDC-CDT: additive context-dependent thinning of u = x | y. The result accumulates
/// u & pi_k(u) over seeded permutations pi_1, pi_2, ... (kCdtCopiesPerRound per round)
/// until it holds round(density * d) indices, so it is a subset of u whose members come
/// from both inputs. Indices of one conjunction are admitted in increasing order.
inline Hypervector bsdc_cdt_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "bsdc_cdt_bind");
  require_algebra(x, AlgebraId::BSDC_CDT, "bsdc_cdt_bind");
  const auto& p = x.params();
  const std::size_t d = x.dimension();
  const IndexSet u = set_union(x.active(), y.active());
  if (u.empty()) throw DomainError("bsdc_cdt_bind: both operands are empty");
  const std::size_t target = p.active_count();
  IndexSet result;
  for (std::size_t k = 0; k < kCdtCopiesPerRound * kCdtMaxRounds && result.size() < target; ++k) {
    auto perm = seeded_permutation(p.master_seed, SeedStream::Thinning, k, d);
    IndexSet fresh;
    for (auto i : set_intersection(u, perm->apply_indices(u, 1))) {
      if (!std::binary_search(result.begin(), result.end(), i)) fresh.push_back(i);
    }
    if (result.size() + fresh.size() > target) fresh.resize(target - result.size());
    result = set_union(result, fresh);
  }
  return Hypervector::from_sparse(p, std::move(result), d);
}

}  // namespace hyperrig
