#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "hyperrig/algebras/common.hpp"
#include "hyperrig/seeding.hpp"

namespace hyperrig {

// Multiply-Add-Permute (MAP-I/B/C) and FHRR: Hadamard binding, elementwise bundling.

/// Elementwise product. For FHRR, unit phasors multiply by adding phase codes.
inline Hypervector map_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "map_bind");
  const auto& p = x.params();
  if (p.algebra == AlgebraId::FHRR) {
    if (x.carrier() == Carrier::Phases && y.carrier() == Carrier::Phases) {
      std::vector<std::uint32_t> out(x.dimension());
      const auto &a = x.phases(), &b = y.phases();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];  // wraps mod 2^32
      return Hypervector::from_phases(p, std::move(out));
    }
    auto a = complex_view(x);
    auto b = complex_view(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return Hypervector::from_complex(p, std::move(a));
  }
  if (!is_map(p.algebra)) throw DomainError("map_bind expects a MAP or FHRR algebra");
  std::vector<double> out(x.reals());
  const auto& b = y.reals();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return Hypervector::from_reals(p, std::move(out));
}

/// Sign of the sum with ties broken by the seeded coin.
inline std::vector<double> threshold_bipolar(std::vector<double> sum, std::uint64_t master, std::size_t count) {
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (sum[i] > 0) sum[i] = 1.0;
    else if (sum[i] < 0) sum[i] = -1.0;
    else sum[i] = tie_coin(master, i, count) ? 1.0 : -1.0;
  }
  return sum;
}

/// N-ary MAP/FHRR bundle. RAW is the plain sum; NATIVE thresholds (MAP-B), cuts to
/// [-1,1] (MAP-C) or renormalizes each phasor (FHRR). MAP-I has no post-processing.
inline Hypervector map_bundle_all(Operands xs, BundleMode mode) {
  require_compatible(xs, "map_bundle");
  const auto& p = xs.front()->params();
  const std::size_t d = xs.front()->dimension();
  if (p.algebra == AlgebraId::FHRR) {
    std::vector<std::complex<double>> sum(d);
    for (auto* x : xs) {
      auto v = complex_view(*x);
      for (std::size_t i = 0; i < d; ++i) sum[i] += v[i];
    }
    if (mode == BundleMode::Raw) return Hypervector::from_complex(p, std::move(sum));
    std::vector<std::uint32_t> codes(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (std::abs(sum[i]) <= 1e-12 * static_cast<double>(xs.size())) {
        codes[i] = static_cast<std::uint32_t>(
            derive_seed(p.master_seed, static_cast<std::uint64_t>(SeedStream::Phase), i, xs.size()) >> 32);
      } else {
        codes[i] = radians_to_phase(std::arg(sum[i]));
      }
    }
    return Hypervector::from_phases(p, std::move(codes));
  }
  if (!is_map(p.algebra)) throw DomainError("map_bundle expects a MAP or FHRR algebra");
  auto sum = sum_reals(xs);
  if (mode == BundleMode::Native) {
    if (p.algebra == AlgebraId::MAP_B) {
      sum = threshold_bipolar(std::move(sum), p.master_seed, xs.size());
    } else if (p.algebra == AlgebraId::MAP_C) {
      for (auto& v : sum) v = std::clamp(v, -1.0, 1.0);
    }
  }
  return Hypervector::from_reals(p, std::move(sum));
}

inline Hypervector map_bundle(const Hypervector& x, const Hypervector& y, BundleMode mode) {
  const Hypervector* ops[] = {&x, &y};
  return map_bundle_all(ops, mode);
}

}  // namespace hyperrig
