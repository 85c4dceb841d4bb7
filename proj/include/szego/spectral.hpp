#pragma once

// Discrete Fourier helpers shared by the Hardy-space and kernel code.
// Conventions: analysis  c_n = (1/M) sum_k g_k e^{-2 pi i n k / M},
//              synthesis g_k = sum_n c_n e^{+2 pi i n k / M}.

#include <unsupported/Eigen/FFT>

#include <bit>
#include <cstdint>
#include <numbers>
#include <vector>

#include "szego/types.hpp"

namespace szego::spectral {

inline bool is_power_of_two(Index m) {
  return m > 0 && std::has_single_bit(static_cast<std::uint64_t>(m));
}

inline Index next_power_of_two(Index m) {
  return m <= 1 ? 1 : static_cast<Index>(std::bit_ceil(static_cast<std::uint64_t>(m)));
}

// Unscaled forward transform: out_n = sum_k in_k e^{-2 pi i n k / M}.
inline CVector forward(const CVector& in) {
  Eigen::FFT<double> fft;
  std::vector<cplx> src(in.data(), in.data() + in.size());
  std::vector<cplx> dst;
  fft.fwd(dst, src);
  return Eigen::Map<const CVector>(dst.data(), static_cast<Index>(dst.size()));
}

// Unscaled inverse transform: out_k = sum_n in_n e^{+2 pi i n k / M}.
inline CVector backward(const CVector& in) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cplx> src(in.data(), in.data() + in.size());
  std::vector<cplx> dst;
  fft.inv(dst, src);
  return Eigen::Map<const CVector>(dst.data(), static_cast<Index>(dst.size()));
}

// Values on the offset grid theta_k = 2 pi (k + 1/2) / M.
inline RVector offset_grid(Index m) {
  RVector theta(m);
  for (Index k = 0; k < m; ++k) {
    theta[k] = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(m);
  }
  return theta;
}

// Fourier coefficients c_n, lo <= n <= hi, of a function sampled on the
// offset grid. Requires hi - lo < M.
inline CVector offset_grid_analysis(const CVector& samples, Index lo, Index hi) {
  const Index m = samples.size();
  const CVector spectrum = forward(samples);
  CVector out(hi - lo + 1);
  for (Index n = lo; n <= hi; ++n) {
    const Index slot = ((n % m) + m) % m;
    const double phase = -std::numbers::pi * static_cast<double>(n) / static_cast<double>(m);
    out[n - lo] = spectrum[slot] * std::polar(1.0, phase) / static_cast<double>(m);
  }
  return out;
}

// Samples on the offset grid of sum_{n=lo}^{hi} c_n e^{i n theta}.
inline CVector offset_grid_synthesis(const CVector& coeffs, Index lo, Index m) {
  CVector spectrum = CVector::Zero(m);
  for (Index j = 0; j < coeffs.size(); ++j) {
    const Index n = lo + j;
    const Index slot = ((n % m) + m) % m;
    const double phase = std::numbers::pi * static_cast<double>(n) / static_cast<double>(m);
    spectrum[slot] += coeffs[j] * std::polar(1.0, phase);
  }
  return backward(spectrum);
}

}  // namespace szego::spectral
