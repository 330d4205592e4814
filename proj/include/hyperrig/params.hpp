#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hyperrig/error.hpp"

namespace hyperrig {

inline constexpr std::uint64_t kDefaultMasterSeed = 0xC0FFEE;

enum class AlgebraId {
  TPR,
  MAP_I,
  MAP_B,
  MAP_C,
  FHRR,
  HRR,
  MBAT,
  VTB,
  BSC,
  BSDC_S,
  BSDC_SEG,
  BSDC_CDT,
};

inline constexpr std::array<AlgebraId, 12> kAllAlgebras = {
    AlgebraId::TPR,  AlgebraId::MAP_I, AlgebraId::MAP_B, AlgebraId::MAP_C,
    AlgebraId::FHRR, AlgebraId::HRR,   AlgebraId::MBAT,  AlgebraId::VTB,
    AlgebraId::BSC,  AlgebraId::BSDC_S, AlgebraId::BSDC_SEG, AlgebraId::BSDC_CDT,
};

inline std::string_view algebra_name(AlgebraId id) {
  switch (id) {
    case AlgebraId::TPR: return "tpr";
    case AlgebraId::MAP_I: return "map_i";
    case AlgebraId::MAP_B: return "map_b";
    case AlgebraId::MAP_C: return "map_c";
    case AlgebraId::FHRR: return "fhrr";
    case AlgebraId::HRR: return "hrr";
    case AlgebraId::MBAT: return "mbat";
    case AlgebraId::VTB: return "vtb";
    case AlgebraId::BSC: return "bsc";
    case AlgebraId::BSDC_S: return "bsdc_s";
    case AlgebraId::BSDC_SEG: return "bsdc_seg";
    case AlgebraId::BSDC_CDT: return "bsdc_cdt";
  }
  return "?";
}

/// Accepts the canonical lower-case names, upper case, and '-' for '_'.
inline AlgebraId parse_algebra(std::string_view text) {
  std::string key(text);
  for (auto& c : key) {
    if (c == '-') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  for (auto id : kAllAlgebras) {
    if (algebra_name(id) == key) return id;
  }
  throw ConfigError("unknown algebra '" + std::string(text) + "'");
}

inline bool is_bsdc(AlgebraId id) {
  return id == AlgebraId::BSDC_S || id == AlgebraId::BSDC_SEG || id == AlgebraId::BSDC_CDT;
}

inline bool is_map(AlgebraId id) {
  return id == AlgebraId::MAP_I || id == AlgebraId::MAP_B || id == AlgebraId::MAP_C;
}

/// Largest k with k*k <= n.
inline std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Algebra identity plus the configuration every carrier needs.
struct AlgebraParams {
  AlgebraId algebra = AlgebraId::MAP_B;
  std::size_t dimension = 1024;
  std::optional<double> density;          // BSDC family only
  std::optional<std::size_t> block_size;  // BSDC_SEG only
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::size_t max_tensor_elements = std::size_t{1} << 20;  // TPR cap on bind outputs
  int max_tensor_depth = 2;                                 // TPR nesting bound

  /// Builds params with the documented defaults filled in (BSDC density 1/sqrt(d)
  /// rounded to an integer active count, SEG block size sqrt(d)), then validates.
  static AlgebraParams make(AlgebraId id, std::size_t d, std::uint64_t seed = kDefaultMasterSeed,
                            std::optional<double> density = std::nullopt,
                            std::optional<std::size_t> block = std::nullopt) {
    AlgebraParams p;
    p.algebra = id;
    p.dimension = d;
    p.master_seed = seed;
    if (id == AlgebraId::BSDC_SEG) {
      if (!block) {
        auto r = isqrt(d);
        if (r * r != d) throw ConfigError("bsdc_seg needs --block when the dimension is not a square");
        block = r;
      }
      p.block_size = block;
      p.density = density ? density : std::optional<double>(1.0 / static_cast<double>(*block));
    } else if (is_bsdc(id)) {
      if (block) throw ConfigError("block_size is only meaningful for bsdc_seg");
      if (density) {
        p.density = density;
      } else {
        auto active = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(double(d)))));
        p.density = static_cast<double>(active) / static_cast<double>(d);
      }
    } else {
      if (density) throw ConfigError("density is only meaningful for the bsdc family");
      if (block) throw ConfigError("block_size is only meaningful for bsdc_seg");
    }
    p.validate();
    return p;
  }

  /// Number of active indices in a BSDC base vector.
  std::size_t active_count() const {
    if (!density) return 0;
    return static_cast<std::size_t>(std::llround(*density * static_cast<double>(dimension)));
  }

  std::size_t vtb_block() const { return isqrt(dimension); }

  void validate() const {
    if (dimension == 0) throw ConfigError("dimension must be positive");
    if (dimension > (std::size_t{1} << 31)) throw ConfigError("dimension too large");
    if (algebra == AlgebraId::VTB) {
      auto r = isqrt(dimension);
      if (r * r != dimension) throw ConfigError("vtb requires a perfect-square dimension");
    }
    if (is_bsdc(algebra) != density.has_value()) {
      throw ConfigError("density must be present exactly for the bsdc family");
    }
    if (density) {
      if (!(*density > 0.0 && *density <= 1.0)) throw ConfigError("density must lie in (0, 1]");
      if (active_count() == 0) throw ConfigError("density too small: no active indices");
    }
    if (block_size.has_value() != (algebra == AlgebraId::BSDC_SEG)) {
      throw ConfigError("block_size must be present exactly for bsdc_seg");
    }
    if (block_size) {
      auto b = *block_size;
      if (b == 0 || b * (dimension / b) != dimension) {
        throw ConfigError("block_size must divide the dimension");
      }
      if (std::abs(*density * static_cast<double>(b) - 1.0) > 1e-12) {
        throw ConfigError("bsdc_seg density must equal 1/block_size");
      }
    }
    if (max_tensor_depth < 1) throw ConfigError("max_tensor_depth must be positive");
  }

  friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

/// Real scalar for scalar multiplication; construction rejects NaN and infinities.
class Scalar {
 public:
  Scalar(double value) : value_(value) {  // NOLINT: implicit by intent
    if (!std::isfinite(value)) throw DomainError("scalar must be finite");
  }
  double value() const { return value_; }

 private:
  double value_;
};

/// Selects one of the fixed braid permutations: 0 = default, 1 = left, 2 = right.
struct BraidRole {
  static constexpr unsigned kMaxRoles = 16;
  unsigned role_index = 0;

  static constexpr BraidRole standard() { return {0}; }
  static constexpr BraidRole left() { return {1}; }
  static constexpr BraidRole right() { return {2}; }
};

/// RAW is the bare elementwise sum; NATIVE applies the algebra's own post-processing.
enum class BundleMode { Raw, Native };

}  // namespace hyperrig
