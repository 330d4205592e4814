#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

namespace hyperrig::fft {

using cpx = std::complex<double>;

// Spelled out so that a*b and b*a round identically.
inline cpx mul(cpx a, cpx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

namespace detail {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

/// FFTW's planner is not thread-safe, so plans are made once per size under a lock.
/// Executing an existing plan on fresh arrays is safe from any thread.
inline Plans plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(mutex);
  auto [it, fresh] = cache.try_emplace(n);
  if (fresh) {
    std::vector<cpx> a(n), b(n);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    it->second.forward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags);
    it->second.backward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags);
  }
  return it->second;
}

inline std::vector<cpx> run(fftw_plan plan, std::vector<cpx> in) {
  std::vector<cpx> out(in.size());
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace detail

inline std::vector<cpx> forward_real(std::span<const double> x) {
  return detail::run(detail::plans_for(x.size()).forward, std::vector<cpx>(x.begin(), x.end()));
}

/// Inverse transform scaled by 1/n, keeping the real part.
inline std::vector<double> inverse_to_real(std::vector<cpx> spectrum) {
  const std::size_t n = spectrum.size();
  auto time = detail::run(detail::plans_for(n).backward, std::move(spectrum));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = time[i].real() / static_cast<double>(n);
  return out;
}

/// z_i = sum_j x_j y_{(i-j) mod n}, through the transform domain.
inline std::vector<double> circular_convolve(std::span<const double> x, std::span<const double> y) {
  auto fx = forward_real(x);
  auto fy = forward_real(y);
  for (std::size_t k = 0; k < fx.size(); ++k) fx[k] = mul(fx[k], fy[k]);
  return inverse_to_real(std::move(fx));
}

}  // namespace hyperrig::fft
