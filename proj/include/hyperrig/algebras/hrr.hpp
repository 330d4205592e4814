#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "hyperrig/algebras/common.hpp"
#include "hyperrig/fft.hpp"

namespace hyperrig {

// Holographic Reduced Representations: circular convolution binding.

inline Hypervector hrr_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "hrr_bind");
  require_algebra(x, AlgebraId::HRR, "hrr_bind");
  return Hypervector::from_reals(x.params(), fft::circular_convolve(x.reals(), y.reals()));
}

/// O(d^2) evaluation of the convolution sum; agrees with hrr_bind to rounding.
inline Hypervector hrr_bind_direct(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "hrr_bind_direct");
  require_algebra(x, AlgebraId::HRR, "hrr_bind_direct");
  const std::size_t d = x.dimension();
  const auto &a = x.reals(), &b = y.reals();
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += a[j] * b[(i + d - j) % d];
  return Hypervector::from_reals(x.params(), std::move(out));
}

/// Index involution x_{-i mod d}: the approximate inverse under convolution.
inline Hypervector hrr_involution(const Hypervector& x) {
  require_algebra(x, AlgebraId::HRR, "hrr_involution");
  const std::size_t d = x.dimension();
  const auto& a = x.reals();
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = a[(d - i) % d];
  return Hypervector::from_reals(x.params(), std::move(out));
}

/// RAW sum, or the sum rescaled to unit norm (NATIVE).
inline Hypervector real_bundle_all(Operands xs, BundleMode mode) {
  require_compatible(xs, "bundle");
  auto sum = sum_reals(xs);
  if (mode == BundleMode::Native) sum = normalized(std::move(sum));
  return Hypervector::from_reals(xs.front()->params(), std::move(sum), xs.front()->tensor_order());
}

inline Hypervector hrr_bundle(const Hypervector& x, const Hypervector& y, BundleMode mode) {
  require_algebra(x, AlgebraId::HRR, "hrr_bundle");
  const Hypervector* ops[] = {&x, &y};
  return real_bundle_all(ops, mode);
}

/// Raises the spectrum to a real power: |X|^r exp(i r arg X). The self-conjugate bins
/// (DC and, for even d, Nyquist) must stay real; a negative value there takes the real
/// part of its principal power, so exponent additivity is exact only when those bins
/// are non-negative. Integer powers always match repeated binding.
inline Hypervector hrr_fractional_power(const Hypervector& x, double r) {
  require_algebra(x, AlgebraId::HRR, "hrr_fractional_power");
  if (!std::isfinite(r)) throw DomainError("fractional power exponent must be finite");
  const std::size_t d = x.dimension();
  auto spec = fft::forward_real(x.reals());
  for (std::size_t k = 0; k < d; ++k) {
    const bool self_conjugate = k == 0 || (d % 2 == 0 && k == d / 2);
    const double mag = std::abs(spec[k]);
    if (mag == 0.0) {
      if (r < 0) throw DomainError("negative power of a vector with a zero spectral bin");
      spec[k] = r == 0 ? 1.0 : 0.0;
      continue;
    }
    const double scaled = std::pow(mag, r);
    if (self_conjugate) {
      const double v = spec[k].real();
      spec[k] = v >= 0 ? scaled : scaled * std::cos(kPi * r);
    } else {
      spec[k] = std::polar(scaled, r * std::arg(spec[k]));
    }
  }
  return Hypervector::from_reals(x.params(), fft::inverse_to_real(std::move(spec)));
}

}  // namespace hyperrig
