#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <span>
#include <tuple>
#include <vector>

#include "hyperrig/seeding.hpp"

namespace hyperrig {

/// A fixed permutation of positions: (rho x)[target(i)] = x[i].
/// With block > 1 it moves whole blocks and shuffles offsets inside each, so a
/// one-index-per-block set keeps that shape.
class Permutation {
 public:
  Permutation(std::size_t n, std::uint64_t seed, std::size_t block = 1) : target_(n), source_(n) {
    Rng rng(seed);
    if (block <= 1) {
      std::iota(target_.begin(), target_.end(), 0u);
      std::shuffle(target_.begin(), target_.end(), rng);
    } else {
      std::vector<std::uint32_t> blocks(n / block), offsets(block);
      std::iota(blocks.begin(), blocks.end(), 0u);
      std::shuffle(blocks.begin(), blocks.end(), rng);
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        std::iota(offsets.begin(), offsets.end(), 0u);
        std::shuffle(offsets.begin(), offsets.end(), rng);
        for (std::size_t j = 0; j < block; ++j)
          target_[k * block + j] = static_cast<std::uint32_t>(blocks[k] * block + offsets[j]);
      }
    }
    for (std::uint32_t i = 0; i < n; ++i) source_[target_[i]] = i;
  }

  std::size_t size() const { return target_.size(); }
  std::uint32_t target(std::size_t i) const { return target_[i]; }
  std::uint32_t source(std::size_t i) const { return source_[i]; }

  /// Applies the permutation `power` times; negative powers apply the inverse.
  template <class T>
  std::vector<T> apply(std::span<const T> x, long power) const {
    std::vector<T> cur(x.begin(), x.end());
    std::vector<T> next(x.size());
    const auto& map = power >= 0 ? target_ : source_;
    for (long step = 0, n = power >= 0 ? power : -power; step < n; ++step) {
      for (std::size_t i = 0; i < cur.size(); ++i) next[map[i]] = cur[i];
      cur.swap(next);
    }
    return cur;
  }

  /// Index form for sparse sets: maps each active index, result sorted.
  std::vector<std::uint32_t> apply_indices(std::span<const std::uint32_t> idx, long power) const {
    std::vector<std::uint32_t> out(idx.begin(), idx.end());
    const auto& map = power >= 0 ? target_ : source_;
    for (long step = 0, n = power >= 0 ? power : -power; step < n; ++step)
      for (auto& i : out) i = map[i];
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::uint32_t> target_;
  std::vector<std::uint32_t> source_;
};

/// Memoized permutation for (master seed, stream, key, length); hits and misses agree.
inline std::shared_ptr<const Permutation> seeded_permutation(std::uint64_t master, SeedStream stream,
                                                             std::uint64_t key, std::size_t n, std::size_t block = 1) {
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::size_t, std::size_t>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const Permutation>> cache;
  Key k{master, static_cast<std::uint64_t>(stream), key, n, block};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  auto perm =
      std::make_shared<const Permutation>(n, derive_seed(master, static_cast<std::uint64_t>(stream), key, n), block);
  std::unique_lock lock(mutex);
  if (cache.size() > 4096) cache.clear();
  return cache.try_emplace(k, std::move(perm)).first->second;
}

inline std::shared_ptr<const Permutation> braid_permutation(std::uint64_t master, unsigned role, std::size_t n,
                                                            std::size_t block = 1) {
  return seeded_permutation(master, SeedStream::Braid, role, n, block);
}

}  // namespace hyperrig
