#pragma once

// Small numerical kernels shared by the curvature and type-change code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mixtype/errors.hpp"

namespace mixtype::numerics {

/// Neville polynomial extrapolation to x = 0 from samples (x_k, y_k).
/// Returns the diagonal of the tableau: entry k uses samples 0..k.
inline std::vector<double> neville_diagonal(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  std::vector<double> diag;
  diag.reserve(n);
  std::vector<std::vector<double>> table(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) table[i][0] = ys[i];
  diag.push_back(table[0][0]);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = k; i < n; ++i) {
      // P_{i-k..i}(0) from P_{i-k..i-1}(0) and P_{i-k+1..i}(0).
      const double xa = xs[i - k], xb = xs[i];
      table[i][k] = (xa * table[i][k - 1] - xb * table[i - 1][k - 1]) / (xa - xb);
    }
    diag.push_back(table[k][k]);
  }
  return diag;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Ordinary least-squares line through (x_i, y_i).
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw PreconditionError("fit_line: need at least two paired samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  return fit;
}

/// Bisection on a sign-changing bracket; returns the midpoint of the final bracket.
inline double bisect(const std::function<double(double)>& fn, double lo, double hi, double xtol = 1e-15,
                     int max_iter = 200) {
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw PreconditionError("bisect: bracket does not change sign");
  for (int it = 0; it < max_iter && std::abs(hi - lo) > xtol * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Newton iteration safeguarded by a maintained bracket (falls back to bisection
/// whenever the Newton step leaves the bracket). fn returns {value, derivative}.
inline double safeguarded_newton(const std::function<std::pair<double, double>(double)>& fn, double lo,
                                 double hi, double x0, double tol = 1e-15, int max_iter = 200) {
  auto [flo, dlo] = fn(lo);
  auto [fhi, dhi] = fn(hi);
  (void)dlo;
  (void)dhi;
  if ((flo > 0) == (fhi > 0)) throw PreconditionError("safeguarded_newton: bracket does not change sign");
  const bool increasing = fhi > flo;
  double x = std::clamp(x0, lo, hi);
  for (int it = 0; it < max_iter; ++it) {
    auto [fx, dfx] = fn(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == increasing) hi = x;
    else lo = x;
    double next = x - fx / dfx;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol * (1.0 + std::abs(x))) return next;
    x = next;
  }
  throw Error("safeguarded_newton: no convergence");
}

} // namespace mixtype::numerics
