#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hyperrig {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijection on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Folds any number of words into one seed: h = mix64(h ^ mix64(w)) per word.
template <class... Words>
constexpr std::uint64_t derive_seed(std::uint64_t first, Words... rest) {
  std::uint64_t h = mix64(first);
  ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(rest)))), ...);
  return h;
}

/// Stream tags keep the seed spaces of independent consumers apart.
enum class SeedStream : std::uint64_t {
  Symbol = 0x53594D,    // base vectors
  Braid = 0x425244,     // braid permutations
  TieCoin = 0x544945,   // majority tie-breaks
  Thinning = 0x434454,  // CDT permutations
  Phase = 0x504853,     // FHRR zero-magnitude phases
  Anchor = 0x414E43,    // MBAT reference vector
  Role = 0x524F4C,      // MBAT role-matrix layers
  Guard = 0x475244,     // guard vectors h, h_L, h_R
  Trial = 0x54524C,     // law and bench trial operands
};

inline std::uint64_t stream_seed(std::uint64_t master, SeedStream stream, std::uint64_t value) {
  return derive_seed(master, static_cast<std::uint64_t>(stream), value);
}

/// Seed used by random_vector for a symbol.
inline std::uint64_t symbol_vector_seed(std::uint64_t master, std::uint64_t symbol_seed) {
  return stream_seed(master, SeedStream::Symbol, symbol_seed);
}

/// Unbiased reproducible coin for majority ties, keyed to (master, element, operand count).
inline bool tie_coin(std::uint64_t master, std::uint64_t element, std::uint64_t operand_count) {
  return (derive_seed(master, static_cast<std::uint64_t>(SeedStream::TieCoin), element, operand_count) >> 63) != 0;
}

/// FNV-1a over a name, so CLI symbols regenerate from their names alone.
constexpr std::uint64_t name_seed(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Reserved symbol seeds for the structural vectors used by the codec.
namespace reserved {
inline constexpr std::uint64_t kGuard = 0xFFFF'FFFF'0000'0001ULL;
inline constexpr std::uint64_t kGuardLeft = 0xFFFF'FFFF'0000'0002ULL;
inline constexpr std::uint64_t kGuardRight = 0xFFFF'FFFF'0000'0003ULL;
}  // namespace reserved

}  // namespace hyperrig
