#pragma once

// Verification suites. Each check records the measured quantity, the tolerance it
// is compared against and the acceptance criterion it belongs to (0 = supplementary).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mixtype/construction.hpp"
#include "mixtype/curvature.hpp"
#include "mixtype/errors.hpp"
#include "mixtype/fourier.hpp"
#include "mixtype/gallery.hpp"
#include "mixtype/spaceform.hpp"
#include "mixtype/surface.hpp"
#include "mixtype/typechange.hpp"

namespace mixtype::verify {

struct Check {
  std::string name;
  int criterion = 0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool pass = true;
  double seconds = 0.0;

  void add(Check c) {
    pass = pass && c.pass;
    checks.push_back(std::move(c));
  }
};

inline const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"spaceform", "jets",      "cmc",      "zmc",
                                                   "forms",     "typechange", "theorem1", "construction"};
  return names;
}

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// measured <= tolerance
inline Check upper(std::string name, int crit, double measured, double tol, std::string detail = {}) {
  return Check{std::move(name), crit, measured, tol, std::isfinite(measured) && measured <= tol, std::move(detail)};
}

// measured >= tolerance
inline Check lower(std::string name, int crit, double measured, double tol, std::string detail = {}) {
  return Check{std::move(name), crit, measured, tol, std::isfinite(measured) && measured >= tol, std::move(detail)};
}

inline Check flag(std::string name, int crit, bool ok, std::string detail = {}) {
  return Check{std::move(name), crit, ok ? 1.0 : 0.0, 1.0, ok, std::move(detail)};
}

template <class Fn>
Check timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  try {
    c = fn();
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

template <class Fn>
Check guarded(std::string name, int crit, Fn&& fn) {
  Check c = timed(std::forward<Fn>(fn));
  if (c.name.empty()) c.name = std::move(name);
  if (c.criterion == 0) c.criterion = crit;
  return c;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double operator()(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
};

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace detail

// ---------------------------------------------------------------------------
// spaceform

inline Check check_cross_axioms(std::uint64_t seed = 1) {
  const AmbientSpace R31 = AmbientSpace::minkowski3();
  detail::Rng rng(seed);
  double worst = 0.0;
  int bad_orientation = 0, pairs = 0;
  while (pairs < 1000) {
    const AmbientVector v{rng(-2, 2), rng(-2, 2), rng(-2, 2)}, w{rng(-2, 2), rng(-2, 2), rng(-2, 2)};
    const AmbientVector c = lorentz_cross3(v, w);
    const double scale = std::max(1.0, v.euclidean_norm() * w.euclidean_norm());
    if (c.euclidean_norm() < 1e-6 * scale) continue; // nearly dependent pair
    ++pairs;
    worst = std::max(worst, std::abs(inner(R31, c, v)) / (scale * std::max(1.0, v.euclidean_norm())));
    worst = std::max(worst, std::abs(inner(R31, c, w)) / (scale * std::max(1.0, w.euclidean_norm())));
    const double rhs = -inner(R31, v, v) * inner(R31, w, w) + inner(R31, v, w) * inner(R31, v, w);
    worst = std::max(worst, std::abs(inner(R31, c, c) - rhs) / (scale * scale));
    if (!(mixtype::detail::det3(v, w, c) > 0.0)) ++bad_orientation;
  }
  return detail::upper("cross_product_axioms", 1, bad_orientation > 0 ? std::numeric_limits<double>::infinity() : worst,
                       1e-12, detail::fmt("1000 pairs, %g orientation failures", bad_orientation));
}

inline Check check_quadric_residuals() {
  detail::Rng rng(2);
  double worst = 0.0;
  const gallery::GalleryId ids[] = {gallery::GalleryId::fZ(), gallery::GalleryId::fAds(0.5), gallery::GalleryId::fAds(1.0)};
  for (const auto& id : ids) {
    const SurfaceDef s = gallery::make_surface(id);
    for (int k = 0; k < 200; ++k) {
      const AmbientVector p = s.position({rng(-2, 2), rng(-2, 2)});
      worst = std::max(worst, std::abs(quadric_residual(s.space, p)) / std::max(1.0, p.euclidean_norm() * p.euclidean_norm()));
    }
  }
  return detail::upper("quadric_residuals", 0, worst, 1e-12);
}

// ---------------------------------------------------------------------------
// cmc

inline Check check_cmc(std::uint64_t seed = 3) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (const auto& id : {gallery::GalleryId::fP(), gallery::GalleryId::fH()}) {
    const SurfaceDef s = gallery::make_surface(id);
    const double vmax = id.kind == gallery::Kind::fH ? 0.95 : 2.0;
    for (int k = 0; k < 200; ++k) {
      const double v = (rng(0, 1) < 0.5 ? -1.0 : 1.0) * rng(0.05, vmax);
      const double H = mean_curvature(s.space, eval_jet(s, {rng(-2, 2), v}));
      worst = std::max(worst, std::abs(std::abs(H) - 0.5));
    }
  }
  return detail::upper("cmc_half", 2, worst, 1e-8, "fP and fH, 200 points each");
}

inline Check check_image_residuals() {
  double worst = 0.0;
  const SurfaceDef P = gallery::make_surface(gallery::GalleryId::fP());
  const SurfaceDef H = gallery::make_surface(gallery::GalleryId::fH());
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double u = -2.0 + 0.2 * i;
      const double vp = 0.05 + (2.0 - 0.05) * j / 20.0, vh = -0.9 + 1.8 * j / 20.0;
      const AmbientVector p = P.position({u, vp}), h = H.position({u, vh});
      worst = std::max(worst, std::abs(gallery::implicit_residual_P(p)) / std::max(1.0, p.euclidean_norm() * p.euclidean_norm()));
      worst = std::max(worst, std::abs(gallery::implicit_residual_H(h)) / std::max(1.0, h.euclidean_norm() * h.euclidean_norm()));
    }
  }
  return detail::upper("implicit_image_residuals", 0, worst, 1e-10);
}

// ---------------------------------------------------------------------------
// zmc

inline Check check_zmc(std::uint64_t seed = 4) {
  detail::Rng rng(seed);
  double worst = 0.0;
  const gallery::GalleryId ids[] = {gallery::GalleryId::fK(), gallery::GalleryId::fZ(), gallery::GalleryId::fAds(0.5),
                                    gallery::GalleryId::fAds(1.0)};
  for (const auto& id : ids) {
    const SurfaceDef s = gallery::make_surface(id);
    const double r = id.kind == gallery::Kind::fZ ? std::numbers::pi : (id.kind == gallery::Kind::fK ? 3.0 : 2.0);
    for (int k = 0; k < 200; ++k) {
      const Jet2 j = eval_jet(s, {rng(-r, r), rng(-r, r)});
      const double beta = first_fundamental(s.space, j).beta;
      worst = std::max(worst, std::abs(alpha_extended(s.space, j)) / (1.0 + std::pow(std::abs(beta), 1.5)));
    }
  }
  return detail::upper("zmc_alpha", 3, worst, 1e-10, "fK, fZ, fAds(0.5), fAds(1), 200 points each");
}

// Segments crossing x = cosh y; alpha sampled along them and at the bisected crossing.
inline Check check_alpha_on_crossings(std::uint64_t seed = 6) {
  detail::Rng rng(seed);
  double worst_cross = 0.0, worst_jump = 0.0;
  const SurfaceDef surfaces[] = {gallery::make_surface(gallery::GalleryId::fK()), gallery::construction_surface(0.01)};
  for (const auto& s : surfaces) {
    for (int k = 0; k < 10; ++k) {
      const double y0 = rng(-2, 2), side = k % 2 == 0 ? 1.0 : -1.0;
      const ParamPoint a{side * (std::cosh(y0) - 0.4), y0 - 0.1}, b{side * (std::cosh(y0) + 0.5), y0 + 0.1};
      auto at = [&](double t) { return a + t * (b - a); };
      auto beta = [&](double t) { return first_fundamental(s.space, eval_jet(s, at(t))).beta; };
      auto alpha = [&](double t) { return alpha_extended(s.space, eval_jet(s, at(t))); };
      const int n = 400;
      double prev = alpha(0.0);
      for (int i = 1; i <= n; ++i) {
        const double cur = alpha(static_cast<double>(i) / n);
        if (!std::isfinite(cur)) worst_jump = std::numeric_limits<double>::infinity();
        worst_jump = std::max(worst_jump, std::abs(cur - prev));
        prev = cur;
      }
      if (!(beta(0.0) * beta(1.0) < 0.0)) throw PreconditionError("segment does not cross the type-change set");
      const double tc = numerics::bisect(beta, 0.0, 1.0);
      worst_cross = std::max(worst_cross, std::abs(alpha(tc)));
    }
  }
  // Continuity: consecutive samples 1/400 of a segment apart differ by at most 1e-2.
  Check c = detail::upper("alpha_at_crossings", 6, worst_jump > 1e-2 ? std::numeric_limits<double>::infinity() : worst_cross,
                          1e-6, detail::fmt("max |alpha| at crossing %.3g, max step jump %.3g", worst_cross, worst_jump));
  return c;
}

// ---------------------------------------------------------------------------
// forms

inline Check check_first_forms(std::uint64_t seed = 5) {
  detail::Rng rng(seed);
  double worst = 0.0;
  const SurfaceDef z = gallery::make_surface(gallery::GalleryId::fZ());
  for (int k = 0; k < 200; ++k) {
    const ParamPoint p{rng(-3, 3), rng(-3, 3)};
    const FundamentalData d = first_fundamental(z.space, eval_jet(z, p));
    const auto ref = gallery::fZ_first_form(p);
    worst = std::max({worst, detail::rel(d.g11, ref[0]), detail::rel(d.g12, ref[1]), detail::rel(d.g22, ref[2])});
  }
  for (double alpha : {0.5, 1.0}) {
    const SurfaceDef a = gallery::make_surface(gallery::GalleryId::fAds(alpha));
    for (int k = 0; k < 200; ++k) {
      const ParamPoint p{rng(-2, 2), rng(-2, 2)};
      const FundamentalData d = first_fundamental(a.space, eval_jet(a, p));
      const auto ref = gallery::fAds_first_form(p, alpha);
      worst = std::max({worst, detail::rel(d.g11, ref[0]), detail::rel(d.g12, ref[1]), detail::rel(d.g22, ref[2])});
    }
  }
  return detail::upper("first_fundamental_closed_forms", 4, worst, 1e-10, "fZ and fAds(0.5, 1), 200 points each");
}

inline Check check_causal_partition(std::uint64_t seed = 7) {
  detail::Rng rng(seed);
  int mismatches = 0, tested = 0;
  const SurfaceDef z = gallery::make_surface(gallery::GalleryId::fZ());
  const SurfaceDef a = gallery::make_surface(gallery::GalleryId::fAds(1.0));
  for (int k = 0; k < 400; ++k) {
    const ParamPoint p{rng(-3, 3), rng(-3, 3)};
    const double cz = std::cos(2.0 * p.v);
    if (std::abs(cz) > 1e-6) {
      ++tested;
      if ((classify(first_fundamental(z.space, eval_jet(z, p))) == PointCausality::spacelike) != (cz > 0)) ++mismatches;
    }
    const double ca = std::cosh(2.0) - std::cosh(2.0 * p.v);
    if (std::abs(ca) > 1e-6) {
      ++tested;
      if ((classify(first_fundamental(a.space, eval_jet(a, p))) == PointCausality::spacelike) != (ca > 0)) ++mismatches;
    }
  }
  return detail::upper("causal_partition", 0, mismatches, 0.0, detail::fmt("%g points", tested));
}

// ---------------------------------------------------------------------------
// jets

inline Check check_graph_identities(std::uint64_t seed = 8) {
  detail::Rng rng(seed);
  const AmbientSpace R31 = AmbientSpace::minkowski3();
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    ScalarJet2 s;
    s.f = rng(-1, 1);
    s.fx = rng(-1.5, 1.5);
    s.fy = rng(-1.5, 1.5);
    s.fxx = rng(-2, 2);
    s.fxy = rng(-2, 2);
    s.fyy = rng(-2, 2);
    const ParamPoint p{rng(-1, 1), rng(-1, 1)};
    const Jet2 j = graph_jet(s, p);
    const double B = 1.0 - s.fx * s.fx - s.fy * s.fy;
    const double A = (s.fx * s.fx - 1.0) * s.fyy - 2.0 * s.fx * s.fy * s.fxy + (s.fy * s.fy - 1.0) * s.fxx;
    const FundamentalData d = first_fundamental(R31, j);
    worst = std::max(worst, std::abs(d.beta - B));
    worst = std::max(worst, std::abs(std::abs(alpha_extended(R31, j)) - std::abs(A)));
    if (std::abs(B) > 1e-3) {
      const double H = mean_curvature(R31, j), ref = A / (2.0 * std::pow(std::abs(B), 1.5));
      worst = std::max(worst, std::abs(H - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  return detail::upper("graph_identities", 5, worst, 1e-10, "200 random scalar jets");
}

// Analytic jets against central differences, with the h -> h/2 error ratio.
inline Check check_fd_oracle(std::uint64_t seed = 14) {
  detail::Rng rng(seed);
  double worst = 0.0, ratio_lo = std::numeric_limits<double>::infinity(), ratio_hi = 0.0;
  const gallery::GalleryId ids[] = {gallery::GalleryId::fP(),        gallery::GalleryId::fH(),
                                    gallery::GalleryId::fK(),        gallery::GalleryId::fZ(),
                                    gallery::GalleryId::fAds(1.0),   gallery::GalleryId::construction(0.01)};
  for (const auto& id : ids) {
    const SurfaceDef s = gallery::make_surface(id);
    for (int k = 0; k < 100; ++k) {
      ParamPoint p{rng(-1.5, 1.5), rng(-1.5, 1.5)};
      if (id.kind == gallery::Kind::fH) p.v = rng(-0.9, 0.9);
      const Jet2 exact = eval_jet(s, p);
      auto error = [&](double h) {
        const Jet2 fd = fd_jet(s, p, h);
        double e = 0.0;
        const AmbientVector* ex[] = {&exact.fu, &exact.fv, &exact.fuu, &exact.fuv, &exact.fvv};
        const AmbientVector* ap[] = {&fd.fu, &fd.fv, &fd.fuu, &fd.fuv, &fd.fvv};
        for (int c = 0; c < 5; ++c) {
          const double scale = std::max(1.0, ex[c]->euclidean_norm());
          e = std::max(e, (*ex[c] - *ap[c]).euclidean_norm() / scale);
        }
        return e;
      };
      const double e1 = error(1e-2), e2 = error(5e-3);
      worst = std::max(worst, error(1e-4));
      // Ratios are only meaningful while truncation dominates roundoff.
      if (e1 > 1e-8) {
        ratio_lo = std::min(ratio_lo, e1 / e2);
        ratio_hi = std::max(ratio_hi, e1 / e2);
      }
    }
  }
  const bool ratio_ok = ratio_lo >= 3.5 && ratio_hi <= 4.5;
  Check c = detail::upper("fd_oracle", 14, ratio_ok ? worst : std::numeric_limits<double>::infinity(), 1e-6,
                          detail::fmt("max rel error %.3g, h-halving ratio in [%.3f, %.3f]", worst, ratio_lo, ratio_hi));
  return c;
}

// ---------------------------------------------------------------------------
// typechange

inline Check check_sigma_geometry() {
  const auto curves =
      trace_characteristic_curves(gallery::fK_scalar(), Rect{-3.0, 3.0, -3.0, 3.0}, 120, 120);
  double worst = 0.0;
  std::size_t n = 0, nondeg = 0, equiv = 0;
  const double tol = TypeChangeTolerances{}.grad;
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < c.vertices.size(); ++k) {
      const ParamPoint p = c.vertices[k];
      ++n;
      worst = std::max(worst, std::abs(std::abs(p.u) - std::cosh(p.v)));
      const TypeChangeClass& t = c.classifications[k];
      if (t.kind == TypeChangeKind::nondegenerate) ++nondeg;
      const bool g = std::hypot(t.gradB[0], t.gradB[1]) > tol, h = std::abs(t.hessian_det) > tol;
      if (g == h) ++equiv;
    }
  }
  const bool all_ok = n > 0 && nondeg == n && equiv == n && curves.size() == 2;
  return detail::upper("sigma_geometry_fK", 7, all_ok ? worst : std::numeric_limits<double>::infinity(), 1e-6,
                       detail::fmt("%g curves, %g vertices, %g nondegenerate", curves.size(), n, nondeg) +
                           detail::fmt(", %g satisfy the Hessian equivalence", equiv));
}

inline Check check_null_curves() {
  double worst_null = 0.0, worst_ind = std::numeric_limits<double>::infinity();
  std::size_t ncurves = 0;
  bool verdicts = true;
  for (const ScalarGraph& g : {gallery::fK_scalar(), gallery::construction_scalar(0.01)}) {
    const auto curves = trace_characteristic_curves(g, Rect{-3.0, 3.0, -3.0, 3.0}, 120, 120);
    for (const auto& c : curves) {
      const NullCurveReport r = characteristic_null_report(g, c);
      worst_null = std::max(worst_null, r.max_null_residual);
      worst_ind = std::min(worst_ind, r.min_independence);
      verdicts = verdicts && r.verdict == NullVerdict::null_nondegenerate;
      ++ncurves;
    }
  }
  const bool ok = ncurves > 0 && verdicts && worst_ind > 1e-6;
  return detail::upper("null_characteristic_curves", 8, ok ? worst_null : std::numeric_limits<double>::infinity(), 1e-8,
                       detail::fmt("%g curves, max |<G',G'>| %.3g, min independence %.3g", ncurves, worst_null, worst_ind));
}

// ---------------------------------------------------------------------------
// mean-curvature limit at the type-change set

inline Check check_mean_curvature_limit() {
  const SurfaceDef s = gallery::construction_surface(0.01);
  const MeanCurvatureLimitReport r = verify_mean_curvature_limit(s, [](double t) { return ParamPoint{t, 0.0}; }, 1.0);
  bool ok = r.beta_order.order == 1 && r.m_odd && !r.alpha_order.identically_zero && r.alpha_order.order == 2 &&
            r.strict_inequality && r.H_tends_to_zero;
  double worst_exp = 0.0;
  for (const auto& e : r.fitted_exponent) {
    if (!e) ok = false;
    else worst_exp = std::max(worst_exp, std::abs(*e - 0.5));
  }
  // Near the set, |H(s)| must stay below 1e-2 sqrt(|s - s_j| / 1e-4).
  double worst_bound = 0.0;
  for (const auto& h : r.samples) {
    if (std::abs(h.offset) <= 1e-4) worst_bound = std::max(worst_bound, std::abs(h.H) / (1e-2 * std::sqrt(std::abs(h.offset) / 1e-4)));
  }
  ok = ok && worst_bound < 1.0;
  std::string detail = "m=" + std::to_string(r.beta_order.order) + " l=" + std::to_string(r.alpha_order.order);
  detail += detail::fmt(", exponents %.4f / %.4f, max |H|/bound %.3g", r.fitted_exponent[0].value_or(NAN),
                        r.fitted_exponent[1].value_or(NAN), worst_bound);
  return detail::upper("mean_curvature_limit", 9, ok ? worst_exp : std::numeric_limits<double>::infinity(), 0.05, detail);
}

inline Check check_mean_curvature_limit_fK() {
  const SurfaceDef s = gallery::make_surface(gallery::GalleryId::fK());
  const MeanCurvatureLimitReport r = verify_mean_curvature_limit(s, [](double t) { return ParamPoint{t, 0.0}; }, 1.0);
  return detail::flag("mean_curvature_limit_fK", 0, r.alpha_order.identically_zero && r.beta_order.order == 1,
                      "alpha identically zero along the curve");
}

// The truncated curve gamma_N of a curve from beta > 0 to beta < 0 on fK, N = 32.
inline Check check_fourier() {
  // Band-limited round trip.
  detail::Rng rng(13);
  const int n = 64, N = n / 2 - 1, deg = 7;
  std::vector<std::array<double, 4>> coeffs(deg);
  for (auto& c : coeffs)
    for (auto& x : c) x = rng(-1, 1);
  auto band = [&](double s) {
    ParamPoint p{0.3, -0.2};
    for (int k = 0; k < deg; ++k) {
      p.u += coeffs[k][0] * std::cos((k + 1) * s) + coeffs[k][1] * std::sin((k + 1) * s);
      p.v += coeffs[k][2] * std::cos((k + 1) * s) + coeffs[k][3] * std::sin((k + 1) * s);
    }
    return p;
  };
  const FourierCurve fc = fourier_truncate(sample_uniform(band, n), N);
  double round_trip = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double s = rng(0, 2 * std::numbers::pi);
    round_trip = std::max(round_trip, (fc(s) - band(s)).norm());
  }
  // Sign conditions at the endpoints.
  const SurfaceDef fK = gallery::make_surface(gallery::GalleryId::fK());
  auto beta = [&](ParamPoint p) { return first_fundamental(fK.space, eval_jet(fK, p)).beta; };
  auto gamma = [](double s) { return ParamPoint{s / std::numbers::pi, 0.2 * std::sin(s / 2.0)}; };
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::pair<double, ParamPoint>> samples;
  for (int k = 0; k <= 256; ++k) samples.emplace_back(two_pi * k / 256, gamma(two_pi * k / 256));
  const FourierCurve gN = fourier_truncate(samples, 32);
  const double b0 = beta(gN(0.0)), b1 = beta(gN(two_pi));
  const bool signs = b0 > 0.0 && b1 < 0.0;
  const bool ok = round_trip < 1e-12 && beta(gamma(0.0)) > 0.0 && beta(gamma(two_pi)) < 0.0 && signs;
  return detail::upper("fourier_truncation", 13, ok ? round_trip : std::numeric_limits<double>::infinity(), 1e-12,
                       detail::fmt("round trip %.3g; beta(gamma_N(0)) = %.6g, beta(gamma_N(2pi)) = %.6g", round_trip,
                                   b0, b1));
}

// Diagnostic: the truncated curve still crosses from beta > 0 to beta < 0 away from the endpoints.
inline Check check_fourier_interior() {
  const SurfaceDef fK = gallery::make_surface(gallery::GalleryId::fK());
  auto beta = [&](ParamPoint p) { return first_fundamental(fK.space, eval_jet(fK, p)).beta; };
  auto gamma = [](double s) { return ParamPoint{s / std::numbers::pi, 0.2 * std::sin(s / 2.0)}; };
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::pair<double, ParamPoint>> samples;
  for (int k = 0; k < 256; ++k) samples.emplace_back(two_pi * k / 256, gamma(two_pi * k / 256));
  const FourierCurve gN = fourier_truncate(samples, 32);
  const double eps = 0.05;
  const double b0 = beta(gN(eps)), b1 = beta(gN(two_pi - eps));
  return detail::flag("fourier_interior_signs", 0, b0 > 0.0 && b1 < 0.0,
                      detail::fmt("beta(gamma_N(%.2f)) = %.6g, beta(gamma_N(2pi - %.2f))", eps, b0, eps) +
                          detail::fmt(" = %.6g", b1));
}

// ---------------------------------------------------------------------------
// construction

inline Check check_ratio() {
  double worst = 0.0;
  for (double c : {0.005, 0.01})
    for (double y : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0})
      worst = std::max(worst, construction::ratio_at_sigma(c, y).rel_error);
  return detail::upper("ratio_on_sigma", 10, worst, 1e-6, "c in {0.005, 0.01}, 9 values of y");
}

struct ConstructionContext {
  std::optional<construction::BoundEstimate> bound;
  const construction::BoundEstimate& get() {
    if (!bound) bound = construction::estimate_bound_m();
    return *bound;
  }
};

inline Check check_lightlike_extension(ConstructionContext& ctx) {
  const double c = ctx.get().default_c();
  const SurfaceDef g = gallery::construction_surface(c);
  const AmbientSpace R31 = AmbientSpace::minkowski3();
  const auto curves = trace_characteristic_curves(g.graph_scalar, Rect{-4.0, 4.0, -2.0, 2.0}, 100, 50);
  std::vector<ParamPoint> all;
  for (const auto& cv : curves) all.insert(all.end(), cv.vertices.begin(), cv.vertices.end());
  if (all.size() < 50) throw PreconditionError("fewer than 50 type-change vertices");
  double worst = 0.0, min_norm = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 50; ++k) {
    const ParamPoint p = all[k * all.size() / 50];
    const AmbientVector V = extended_mean_curvature_vector(g, p);
    const double e2 = V.euclidean_norm() * V.euclidean_norm();
    min_norm = std::min(min_norm, V.euclidean_norm());
    worst = std::max(worst, std::abs(inner(R31, V, V)) / e2);
  }
  return detail::upper("extended_vector_lightlike", 11, min_norm > 1e-12 ? worst : std::numeric_limits<double>::infinity(),
                       1e-8, detail::fmt("c = %g, min |V| = %.3g", c, min_norm));
}

inline Check check_admissibility(ConstructionContext& ctx) {
  const auto& b = ctx.get();
  construction::GridSpec doubled;
  doubled.window = Rect{-40.0, 40.0, -10.0, 10.0};
  doubled.nx = 1600;
  doubled.ny = 400;
  const auto b2 = construction::estimate_bound_m(doubled);
  const double drift = std::abs(b2.m_hat - b.m_hat) / b.m_hat;
  const double c = b.default_c();
  // Fresh validation grid, offset from the estimation grid.
  double worst = 0.0;
  for (int j = 0; j < 211; ++j) {
    for (int i = 0; i < 997; ++i) {
      const double x = -19.97 + 39.9 * i / 996.0, y = -4.93 + 9.9 * j / 210.0;
      if (std::abs(gallery::fK_B(x, y)) < 1e-12) continue;
      worst = std::max(worst, std::abs(construction::tilde_B_over_B_direct(x, y, c) - 1.0));
    }
  }
  const auto zs = construction::verify_zero_sets(c, b);
  const bool ok = std::isfinite(b.m_hat) && drift < 0.01 && worst < 12.0 * b.m_hat * c && zs.pass;
  return detail::upper("admissibility", 12, ok ? drift : std::numeric_limits<double>::infinity(), 0.01,
                       detail::fmt("m_hat %.6g, doubled %.6g", b.m_hat, b2.m_hat) +
                           detail::fmt(", max |B~/B - 1| %.3g < %.3g", worst, 12.0 * b.m_hat * c) +
                           detail::fmt(", Hausdorff %.3g vs 2 cells %.3g", zs.hausdorff, 2.0 * zs.cell));
}

inline Check check_divisibility() {
  // Extrapolants of A~/B~^2 settle along Sigma.
  double worst = 0.0;
  const SurfaceDef g = gallery::construction_surface(0.01);
  for (double y : {-1.5, -0.7, 0.0, 0.4, 1.2}) {
    const ParamPoint p{std::cosh(y), y};
    const GraphAB ab = graph_AB(g.graph_scalar(p));
    const double gn = std::hypot(ab.gradB[0], ab.gradB[1]);
    const auto lim = mixtype::detail::transversal_limit(
        [&](ParamPoint q) { return std::vector<double>{mixtype::detail::graph_A_over_B2(g, q)}; }, p,
        {ab.gradB[0] / gn, ab.gradB[1] / gn}, ExtensionOptions{});
    worst = std::max(worst, lim.spread[0] / std::max(1e-300, std::abs(lim.value[0])));
  }
  return detail::upper("divisibility_extrapolants", 0, worst, 1e-4);
}

// ---------------------------------------------------------------------------

inline Report run_suite(std::string_view name) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.suite = std::string(name);
  auto add = [&](std::string n, int crit, auto fn) { r.add(detail::guarded(std::move(n), crit, fn)); };
  if (name == "spaceform") {
    add("cross_product_axioms", 1, [] { return check_cross_axioms(); });
    add("quadric_residuals", 0, [] { return check_quadric_residuals(); });
  } else if (name == "jets") {
    add("graph_identities", 5, [] { return check_graph_identities(); });
    add("fd_oracle", 14, [] { return check_fd_oracle(); });
  } else if (name == "cmc") {
    add("cmc_half", 2, [] { return check_cmc(); });
    add("implicit_image_residuals", 0, [] { return check_image_residuals(); });
  } else if (name == "zmc") {
    add("zmc_alpha", 3, [] { return check_zmc(); });
    add("alpha_at_crossings", 6, [] { return check_alpha_on_crossings(); });
  } else if (name == "forms") {
    add("first_fundamental_closed_forms", 4, [] { return check_first_forms(); });
    add("causal_partition", 0, [] { return check_causal_partition(); });
  } else if (name == "typechange") {
    add("sigma_geometry_fK", 7, [] { return check_sigma_geometry(); });
    add("null_characteristic_curves", 8, [] { return check_null_curves(); });
  } else if (name == "theorem1") {
    add("mean_curvature_limit", 9, [] { return check_mean_curvature_limit(); });
    add("mean_curvature_limit_fK", 0, [] { return check_mean_curvature_limit_fK(); });
    add("fourier_truncation", 13, [] { return check_fourier(); });
    add("fourier_interior_signs", 0, [] { return check_fourier_interior(); });
  } else if (name == "construction") {
    ConstructionContext ctx;
    add("ratio_on_sigma", 10, [] { return check_ratio(); });
    add("extended_vector_lightlike", 11, [&] { return check_lightlike_extension(ctx); });
    add("admissibility", 12, [&] { return check_admissibility(ctx); });
    add("divisibility_extrapolants", 0, [] { return check_divisibility(); });
  } else {
    throw PreconditionError("unknown verify suite: " + std::string(name));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

} // namespace mixtype::verify
