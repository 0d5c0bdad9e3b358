#pragma once

// Truncated Fourier series of planar curves with period 2 pi.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "mixtype/errors.hpp"
#include "mixtype/surface.hpp"

namespace mixtype {

struct FourierCurve {
  std::array<double, 2> mean{};
  std::vector<std::array<double, 2>> cos_coeffs; // u_k, k = 1..N
  std::vector<std::array<double, 2>> sin_coeffs; // v_k, k = 1..N

  int order() const { return static_cast<int>(cos_coeffs.size()); }

  ParamPoint operator()(double s) const {
    std::array<double, 2> out = mean;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
      const double c = std::cos((k + 1) * s), sn = std::sin((k + 1) * s);
      for (int i = 0; i < 2; ++i) out[i] += cos_coeffs[k][i] * c + sin_coeffs[k][i] * sn;
    }
    return {out[0], out[1]};
  }
};

/// Discrete Fourier coefficients of uniformly spaced samples s_k = 2 pi k / n on
/// [0, 2 pi), truncated at degree N < n/2. A trailing sample at s = 2 pi duplicates
/// s = 0 for the periodic extension and is ignored.
inline FourierCurve fourier_truncate(std::span<const std::pair<double, ParamPoint>> samples, int N) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::size_t n = samples.size();
  if (n >= 2 && std::abs(samples[n - 1].first - two_pi) < 1e-12 && std::abs(samples[0].first) < 1e-12) --n;
  if (n < 1) throw PreconditionError("fourier_truncate: no samples");
  if (N < 0 || 2 * N >= static_cast<int>(n)) throw PreconditionError("fourier_truncate: need N < samples/2");
  const double step = two_pi / n;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(samples[k].first - k * step) > 1e-9 * two_pi)
      throw PreconditionError("fourier_truncate: samples are not uniform on [0, 2 pi)");
  }
  FourierCurve fc;
  for (std::size_t j = 0; j < n; ++j) {
    fc.mean[0] += samples[j].second.u / n;
    fc.mean[1] += samples[j].second.v / n;
  }
  for (int k = 1; k <= N; ++k) {
    std::array<double, 2> a{}, b{};
    for (std::size_t j = 0; j < n; ++j) {
      const double c = std::cos(k * samples[j].first), s = std::sin(k * samples[j].first);
      a[0] += samples[j].second.u * c;
      a[1] += samples[j].second.v * c;
      b[0] += samples[j].second.u * s;
      b[1] += samples[j].second.v * s;
    }
    // The Nyquist term (2k == n) would need weight 1/n; N < n/2 excludes it.
    fc.cos_coeffs.push_back({2.0 * a[0] / n, 2.0 * a[1] / n});
    fc.sin_coeffs.push_back({2.0 * b[0] / n, 2.0 * b[1] / n});
  }
  return fc;
}

/// n uniform samples of a curve on [0, 2 pi).
template <class Curve>
std::vector<std::pair<double, ParamPoint>> sample_uniform(Curve&& curve, int n) {
  std::vector<std::pair<double, ParamPoint>> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * std::numbers::pi * k / n;
    out.emplace_back(s, curve(s));
  }
  return out;
}

} // namespace mixtype
