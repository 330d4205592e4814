#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "hyperrig/algebras/common.hpp"
#include "hyperrig/seeding.hpp"

namespace hyperrig {

// Binary Spatter Code. Base vectors are packed bits; RAW bundles leave the bit domain as
// bipolar accumulators (bit 0 <-> +1, bit 1 <-> -1), under which XOR is the product.

inline std::size_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t h = 0;
  for (std::size_t w = 0; w < a.size(); ++w) h += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  return h;
}

inline std::vector<std::uint64_t> pack_bits(std::span<const bool> bits) {
  std::vector<std::uint64_t> words(words_for_bits(bits.size()), 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
  return words;
}

inline Hypervector bsc_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "bsc_bind");
  require_algebra(x, AlgebraId::BSC, "bsc_bind");
  if (x.carrier() == Carrier::Bits && y.carrier() == Carrier::Bits) {
    std::vector<std::uint64_t> out(x.bit_words());
    const auto& b = y.bit_words();
    for (std::size_t w = 0; w < out.size(); ++w) out[w] ^= b[w];
    return Hypervector::from_bits(x.params(), std::move(out), x.dimension());
  }
  auto a = bipolar_view(x);
  auto b = bipolar_view(y);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return Hypervector::from_reals(x.params(), std::move(a));
}

/// Bitwise majority (NATIVE) or bipolar accumulation (RAW).
inline Hypervector bsc_bundle_all(Operands xs, BundleMode mode) {
  require_compatible(xs, "bsc_bundle");
  const auto& p = xs.front()->params();
  require_algebra(*xs.front(), AlgebraId::BSC, "bsc_bundle");
  const std::size_t d = xs.front()->dimension();
  std::vector<double> sum(d, 0.0);
  for (auto* x : xs) {
    if (x->carrier() == Carrier::Bits) {
      for (std::size_t i = 0; i < d; ++i) sum[i] += x->bit(i) ? -1.0 : 1.0;
    } else {
      const auto& v = x->reals();
      for (std::size_t i = 0; i < d; ++i) sum[i] += v[i];
    }
  }
  if (mode == BundleMode::Raw) return Hypervector::from_reals(p, std::move(sum));
  std::vector<std::uint64_t> words(words_for_bits(d), 0);
  for (std::size_t i = 0; i < d; ++i) {
    bool one = sum[i] < 0 || (sum[i] == 0 && tie_coin(p.master_seed, i, xs.size()));
    if (one) words[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return Hypervector::from_bits(p, std::move(words), d);
}

inline Hypervector bsc_bundle(const Hypervector& x, const Hypervector& y, BundleMode mode) {
  const Hypervector* ops[] = {&x, &y};
  return bsc_bundle_all(ops, mode);
}

/// 1 - normalized Hamming distance on bits; (1 + cos)/2 in the bipolar embedding otherwise,
/// which is the same quantity for bit vectors.
inline double bsc_similarity(const Hypervector& x, const Hypervector& y) {
  if (x.carrier() == Carrier::Bits && y.carrier() == Carrier::Bits) {
    return 1.0 - static_cast<double>(hamming(x.bit_words(), y.bit_words())) / static_cast<double>(x.dimension());
  }
  return 0.5 * (1.0 + cosine(bipolar_view(x), bipolar_view(y)));
}

}  // namespace hyperrig
