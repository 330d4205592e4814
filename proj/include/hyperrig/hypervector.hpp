#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperrig/error.hpp"
#include "hyperrig/params.hpp"

namespace hyperrig {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kPhaseUnit = kTwoPi / 4294967296.0;  // radians per phase code

/// Phase codes are fixed-point angles: a full turn is 2^32 codes, so binding is
/// wrapping integer addition and exact.
inline double phase_to_radians(std::uint32_t code) {
  return static_cast<double>(static_cast<std::int32_t>(code)) * kPhaseUnit;
}

inline std::uint32_t radians_to_phase(double radians) {
  double turns = radians / kTwoPi;
  turns -= std::floor(turns + 0.5);
  auto q = static_cast<std::int64_t>(std::llround(turns * 4294967296.0));
  return static_cast<std::uint32_t>(q);
}

struct RealPayload {
  std::vector<double> values;
  friend bool operator==(const RealPayload&, const RealPayload&) = default;
};

struct PhasePayload {
  std::vector<std::uint32_t> codes;
  friend bool operator==(const PhasePayload&, const PhasePayload&) = default;
};

struct ComplexPayload {
  std::vector<std::complex<double>> values;
  friend bool operator==(const ComplexPayload&, const ComplexPayload&) = default;
};

/// Dense bits, 64 per word, little-endian within a word; bits past the dimension are zero.
struct BitPayload {
  std::vector<std::uint64_t> words;
  friend bool operator==(const BitPayload&, const BitPayload&) = default;
};

/// Strictly increasing active indices.
struct SparsePayload {
  std::vector<std::uint32_t> indices;
  friend bool operator==(const SparsePayload&, const SparsePayload&) = default;
};

using Payload = std::variant<RealPayload, PhasePayload, ComplexPayload, BitPayload, SparsePayload>;

enum class Carrier { Reals, Phases, Complex, Bits, Sparse };

inline std::string carrier_name(Carrier c) {
  switch (c) {
    case Carrier::Reals: return "reals";
    case Carrier::Phases: return "phases";
    case Carrier::Complex: return "complex";
    case Carrier::Bits: return "bits";
    case Carrier::Sparse: return "sparse";
  }
  return "?";
}

inline std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

/// One factor of an MBAT matrix form: a role matrix or a braid permutation raised to `power`
/// (negative powers are transposes, both being orthogonal).
struct RoleFactor {
  enum class Kind : std::uint8_t { Role, Braid };
  Kind kind = Kind::Role;
  std::uint64_t id = 0;
  int power = 1;
  friend bool operator==(const RoleFactor&, const RoleFactor&) = default;
};

/// coef * F_1 * F_2 * ... * F_k, with F_1 applied last.
struct RoleTerm {
  double coef = 1.0;
  std::vector<RoleFactor> factors;
  friend bool operator==(const RoleTerm&, const RoleTerm&) = default;
};

/// Sum of terms; the matrix an MBAT value acts as when it is the left operand of bind.
using RoleExpr = std::vector<RoleTerm>;

/// Immutable carrier value tagged with its algebra.
class Hypervector {
 public:
  Hypervector(AlgebraParams params, Payload payload, std::size_t dimension_tag, int tensor_order = 1,
              RoleExpr role = {})
      : params_(std::move(params)),
        payload_(std::move(payload)),
        dimension_(dimension_tag),
        tensor_order_(tensor_order),
        role_(std::move(role)) {
    check_invariants();
  }

  static Hypervector from_reals(const AlgebraParams& p, std::vector<double> v, int order = 1,
                                RoleExpr role = {}) {
    auto n = v.size();
    return Hypervector(p, RealPayload{std::move(v)}, n, order, std::move(role));
  }
  static Hypervector from_phases(const AlgebraParams& p, std::vector<std::uint32_t> codes) {
    auto n = codes.size();
    return Hypervector(p, PhasePayload{std::move(codes)}, n);
  }
  static Hypervector from_complex(const AlgebraParams& p, std::vector<std::complex<double>> v) {
    auto n = v.size();
    return Hypervector(p, ComplexPayload{std::move(v)}, n);
  }
  static Hypervector from_bits(const AlgebraParams& p, std::vector<std::uint64_t> words, std::size_t d) {
    return Hypervector(p, BitPayload{std::move(words)}, d);
  }
  static Hypervector from_sparse(const AlgebraParams& p, std::vector<std::uint32_t> idx, std::size_t d) {
    return Hypervector(p, SparsePayload{std::move(idx)}, d);
  }

  const AlgebraParams& params() const { return params_; }
  AlgebraId algebra() const { return params_.algebra; }
  std::size_t dimension() const { return dimension_; }
  int tensor_order() const { return tensor_order_; }
  const RoleExpr& role() const { return role_; }
  const Payload& payload() const { return payload_; }

  Carrier carrier() const { return static_cast<Carrier>(payload_.index()); }

  const std::vector<double>& reals() const { return get<RealPayload>("reals").values; }
  const std::vector<std::uint32_t>& phases() const { return get<PhasePayload>("phases").codes; }
  const std::vector<std::complex<double>>& complexes() const { return get<ComplexPayload>("complex").values; }
  const std::vector<std::uint64_t>& bit_words() const { return get<BitPayload>("bits").words; }
  const std::vector<std::uint32_t>& active() const { return get<SparsePayload>("sparse").indices; }

  bool bit(std::size_t i) const { return ((bit_words()[i / 64] >> (i % 64)) & 1u) != 0; }

  /// True when the payload lies in the algebra's base-vector domain (bipolar, [-1,1],
  /// unit phases, bits, or a sparse set of the configured size).
  bool in_base_domain() const {
    switch (params_.algebra) {
      case AlgebraId::TPR:
      case AlgebraId::MAP_I:
      case AlgebraId::MAP_B:
        if (carrier() != Carrier::Reals) return false;
        for (double v : reals())
          if (v != 1.0 && v != -1.0) return false;
        return true;
      case AlgebraId::MAP_C:
        if (carrier() != Carrier::Reals) return false;
        for (double v : reals())
          if (v < -1.0 || v > 1.0) return false;
        return true;
      case AlgebraId::FHRR: return carrier() == Carrier::Phases;
      case AlgebraId::HRR:
      case AlgebraId::MBAT:
      case AlgebraId::VTB: return carrier() == Carrier::Reals;
      case AlgebraId::BSC: return carrier() == Carrier::Bits;
      case AlgebraId::BSDC_S:
      case AlgebraId::BSDC_CDT:
        return carrier() == Carrier::Sparse && active().size() <= params_.active_count();
      case AlgebraId::BSDC_SEG: {
        if (carrier() != Carrier::Sparse) return false;
        auto b = *params_.block_size;
        auto& idx = active();
        if (idx.size() != dimension_ / b) return false;
        for (std::size_t k = 0; k < idx.size(); ++k)
          if (idx[k] / b != k) return false;
        return true;
      }
    }
    return false;
  }

  friend bool operator==(const Hypervector&, const Hypervector&) = default;

 private:
  template <class T>
  const T& get(const char* what) const {
    if (auto* p = std::get_if<T>(&payload_)) return *p;
    throw DomainError(std::string("hypervector carrier is ") + carrier_name(carrier()) + ", not " + what);
  }

  void check_invariants() const {
    if (dimension_ == 0) throw DimensionError("hypervector dimension must be positive");
    std::visit(
        [this](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, RealPayload>) {
            if (p.values.size() != dimension_) throw DimensionError("payload length differs from dimension");
            for (double v : p.values)
              if (!std::isfinite(v)) throw DomainError("non-finite value in real payload");
          } else if constexpr (std::is_same_v<T, PhasePayload>) {
            if (p.codes.size() != dimension_) throw DimensionError("payload length differs from dimension");
          } else if constexpr (std::is_same_v<T, ComplexPayload>) {
            if (p.values.size() != dimension_) throw DimensionError("payload length differs from dimension");
            for (auto v : p.values)
              if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("non-finite value in complex payload");
          } else if constexpr (std::is_same_v<T, BitPayload>) {
            if (p.words.size() != words_for_bits(dimension_))
              throw DimensionError("bit payload word count differs from dimension");
            if (dimension_ % 64 != 0 && (p.words.back() >> (dimension_ % 64)) != 0)
              throw DomainError("bit payload has bits set past the dimension");
          } else {
            for (std::size_t i = 0; i < p.indices.size(); ++i) {
              if (p.indices[i] >= dimension_) throw DomainError("sparse index out of range");
              if (i > 0 && p.indices[i] <= p.indices[i - 1])
                throw DomainError("sparse indices must be strictly increasing");
            }
          }
        },
        payload_);
    for (const auto& term : role_)
      if (!std::isfinite(term.coef)) throw DomainError("non-finite role coefficient");
  }

  AlgebraParams params_;
  Payload payload_;
  std::size_t dimension_;
  int tensor_order_ = 1;
  RoleExpr role_;
};

}  // namespace hyperrig
