#pragma once

// Quantitative analysis of the perturbed graph g = x tanh y + c tanh^3(B):
// the bound constant behind the admissible range of c, the limit of A~/B~^2 on
// the type-change set, and the coincidence of the zero sets of B and B~.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "mixtype/curvature.hpp"
#include "mixtype/errors.hpp"
#include "mixtype/gallery.hpp"
#include "mixtype/parallel.hpp"
#include "mixtype/typechange.hpp"

namespace mixtype::construction {

/// tanh(t)/t, analytic at 0.
inline double phi(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 3.0 + 2.0 * t2 * t2 / 15.0;
  }
  return std::tanh(t) / t;
}

/// Auxiliary quantities of the bound, all for the unperturbed f = x tanh y.
struct Quantities {
  double B = 0.0;
  double U = 0.0;   // x sech^2 y
  double V = 0.0;   // sech y
  double S = 0.0;   // sech(V^2 - U^2) = sech(B)
  double phiB = 0.0;
  double C1 = 0.0;  // 2 U (U^2 - V^2) tanh y
  double C2 = 0.0;  // 3 c B^2 phi(B)^2 S^2 (U^2 V^4 + (V^2 - 2U^2)^2 tanh^2 y)
};

inline Quantities quantities(double x, double y, double c) {
  Quantities q;
  q.V = 1.0 / std::cosh(y);
  q.U = x * q.V * q.V;
  q.B = q.V * q.V - q.U * q.U;
  q.S = 1.0 / std::cosh(q.B);
  q.phiB = phi(q.B);
  const double th = std::tanh(y);
  q.C1 = 2.0 * q.U * (q.U * q.U - q.V * q.V) * th;
  const double w = q.V * q.V - 2.0 * q.U * q.U;
  q.C2 = 3.0 * c * q.B * q.B * q.phiB * q.phiB * q.S * q.S *
         (q.U * q.U * q.V * q.V * q.V * q.V + w * w * th * th);
  return q;
}

/// phi(B)^2 S B (S C1 + S C2).
inline double bound_integrand(double x, double y, double c) {
  const Quantities q = quantities(x, y, c);
  return q.phiB * q.phiB * q.S * q.B * (q.S * q.C1 + q.S * q.C2);
}

/// B~/B = 1 - 12 c phi(B)^2 S B (S C1 + S C2).
inline double tilde_B_over_B(double x, double y, double c) { return 1.0 - 12.0 * c * bound_integrand(x, y, c); }

/// B~/B by direct evaluation of 1 - g_x^2 - g_y^2 from the jets of g.
inline double tilde_B_over_B_direct(double x, double y, double c) {
  const ScalarJet2 g = gallery::construction_scalar(c)({x, y});
  return graph_AB(g).B / gallery::fK_B(x, y);
}

/// Gamma = (f_y^2 - 1) B_x^2 - 2 f_x f_y B_x B_y + (f_x^2 - 1) B_y^2, with B from its own jet.
inline double Gamma(double x, double y) {
  const ScalarJet2 f = gallery::fK_scalar()({x, y});
  const ScalarJet2 B = gallery::fK_B(ScalarJet2::variable_x(x), ScalarJet2::variable_y(y));
  return (f.fy * f.fy - 1.0) * B.fx * B.fx - 2.0 * f.fx * f.fy * B.fx * B.fy + (f.fx * f.fx - 1.0) * B.fy * B.fy;
}

inline double Delta(double x, double y) {
  const ScalarJet2 f = gallery::fK_scalar()({x, y});
  const ScalarJet2 B = gallery::fK_B(ScalarJet2::variable_x(x), ScalarJet2::variable_y(y));
  return 2.0 * (B.fx * f.fx * f.fyy - B.fx * f.fxy * f.fy - B.fy * f.fx * f.fxy + B.fy * f.fxx * f.fy) +
         B.fxx * (f.fy * f.fy - 1.0) - 2.0 * B.fxy * f.fx * f.fy + B.fyy * (f.fx * f.fx - 1.0);
}

struct GridSpec {
  Rect window{-20.0, 20.0, -5.0, 5.0};
  int nx = 800;
  int ny = 200;
};

struct BoundEstimate {
  double m_hat = 0.0;
  double grid_max = 0.0;           // before local refinement
  ParamPoint argmax;
  GridSpec grid;
  double max_abs_U = 0.0, max_abs_V = 0.0, max_abs_S = 0.0, max_abs_C1 = 0.0, max_abs_C2 = 0.0;
  double max_abs_SC1 = 0.0, max_abs_SC2 = 0.0;

  double admissible_limit() const { return 1.0 / (12.0 * m_hat); }
  bool admissible(double c) const { return c > 0.0 && c < admissible_limit(); }
  double default_c() const { return std::min(0.01, 0.5 / (12.0 * m_hat)); }
};

/// Grid sweep of |phi(B)^2 S B (S C1 + S C2)| at c = 1, followed by a compass
/// search from the best grid node (kept inside the window).
inline BoundEstimate estimate_bound_m(const GridSpec& grid = {}) {
  if (static_cast<long>(grid.nx) * grid.ny < 400L * 400L || grid.nx < 2 || grid.ny < 2)
    throw PreconditionError("estimate_bound_m: grid needs at least 400x400 points");
  if (grid.window.u0 > -20.0 || grid.window.u1 < 20.0 || grid.window.v0 > -5.0 || grid.window.v1 < 5.0)
    throw PreconditionError("estimate_bound_m: grid must cover [-20,20] x [-5,5]");
  const Rect& w = grid.window;
  const double dx = w.width() / (grid.nx - 1), dy = w.height() / (grid.ny - 1);

  struct Row {
    double best = 0.0;
    ParamPoint arg;
    std::array<double, 7> term{};
  };
  std::vector<Row> rows(grid.ny);
  parallel_for(grid.ny, [&](std::size_t j) {
    Row r;
    const double y = w.v0 + j * dy;
    for (int i = 0; i < grid.nx; ++i) {
      const double x = w.u0 + i * dx;
      const Quantities q = quantities(x, y, 1.0);
      const double val = std::abs(q.phiB * q.phiB * q.S * q.B * (q.S * q.C1 + q.S * q.C2));
      if (val > r.best) {
        r.best = val;
        r.arg = {x, y};
      }
      const std::array<double, 7> t{std::abs(q.U), std::abs(q.V), std::abs(q.S), std::abs(q.C1),
                                    std::abs(q.C2), std::abs(q.S * q.C1), std::abs(q.S * q.C2)};
      for (int k = 0; k < 7; ++k) r.term[k] = std::max(r.term[k], t[k]);
    }
    rows[j] = r;
  });
  BoundEstimate est;
  est.grid = grid;
  std::array<double, 7> term{};
  for (const Row& r : rows) {
    if (r.best > est.grid_max) {
      est.grid_max = r.best;
      est.argmax = r.arg;
    }
    for (int k = 0; k < 7; ++k) term[k] = std::max(term[k], r.term[k]);
  }
  est.max_abs_U = term[0];
  est.max_abs_V = term[1];
  est.max_abs_S = term[2];
  est.max_abs_C1 = term[3];
  est.max_abs_C2 = term[4];
  est.max_abs_SC1 = term[5];
  est.max_abs_SC2 = term[6];

  auto objective = [&](ParamPoint p) { return std::abs(bound_integrand(p.u, p.v, 1.0)); };
  ParamPoint best = est.argmax;
  double fbest = est.grid_max;
  double hx = dx, hy = dy;
  for (int it = 0; it < 200 && (hx > 1e-10 || hy > 1e-10); ++it) {
    bool improved = false;
    for (const ParamPoint d : {ParamPoint{hx, 0}, ParamPoint{-hx, 0}, ParamPoint{0, hy}, ParamPoint{0, -hy}}) {
      const ParamPoint q = best + d;
      if (!w.contains(q)) continue;
      const double fq = objective(q);
      if (fq > fbest) {
        fbest = fq;
        best = q;
        improved = true;
      }
    }
    if (!improved) {
      hx *= 0.5;
      hy *= 0.5;
    }
  }
  est.m_hat = fbest;
  est.argmax = best;
  return est;
}

struct RatioCheck {
  double numeric = 0.0;
  double closed_form = 0.0;
  double rel_error = 0.0;
};

/// Limit of A~/B~^2 at (sign * cosh y, y) versus -18 c / cosh^4 y.
inline RatioCheck ratio_at_sigma(double c, double y, double sign = 1.0, const ExtensionOptions& opt = {}) {
  if (!(c > 0.0 && c <= 1.0)) throw PreconditionError("ratio_at_sigma: requires 0 < c <= 1");
  const SurfaceDef g = gallery::construction_surface(c);
  RatioCheck r;
  r.numeric = extended_A_over_B2(g, {sign * std::cosh(y), y}, 1e-8, opt);
  const double ch = std::cosh(y);
  r.closed_form = -18.0 * c / (ch * ch * ch * ch);
  r.rel_error = std::abs(r.numeric - r.closed_form) / std::abs(r.closed_form);
  return r;
}

struct ZeroSetComparison {
  double hausdorff = 0.0;
  double cell = 0.0;
  double max_offset_from_cosh = 0.0; // max | |x| - cosh y | over vertices of the perturbed zero set
  std::size_t base_vertices = 0;
  std::size_t perturbed_vertices = 0;
  bool pass = false;
};

namespace detail {

inline double point_polyline_distance(ParamPoint p, const std::vector<CharacteristicCurve>& curves) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    const auto& v = c.vertices;
    for (std::size_t k = 0; k < v.size(); ++k) {
      best = std::min(best, (p - v[k]).norm());
      if (k + 1 < v.size()) {
        const ParamPoint a = v[k], b = v[k + 1], ab = b - a;
        const double len2 = ab.u * ab.u + ab.v * ab.v;
        if (len2 > 0.0) {
          const double t = std::clamp(((p.u - a.u) * ab.u + (p.v - a.v) * ab.v) / len2, 0.0, 1.0);
          best = std::min(best, (p - (a + t * ab)).norm());
        }
      }
    }
  }
  return best;
}

inline double directed_hausdorff(const std::vector<CharacteristicCurve>& from,
                                 const std::vector<CharacteristicCurve>& to) {
  double worst = 0.0;
  for (const auto& c : from)
    for (const auto& p : c.vertices) worst = std::max(worst, point_polyline_distance(p, to));
  return worst;
}

} // namespace detail

/// Traces {B = 0} and {B~ = 0} on the window and compares them. Refuses c outside
/// the admissible range of the bound estimate; c = 0 compares B with itself.
inline ZeroSetComparison verify_zero_sets(double c, const BoundEstimate& bound,
                                          const Rect& window = {-4.0, 4.0, -2.0, 2.0}, int nx = 200,
                                          int ny = 100) {
  if (c != 0.0 && !bound.admissible(c))
    throw PreconditionError("verify_zero_sets: c = " + std::to_string(c) + " is outside (0, " +
                            std::to_string(bound.admissible_limit()) + ")");
  const ScalarField base = [](ParamPoint p) {
    const ScalarJet2 B = gallery::fK_B(ScalarJet2::variable_x(p.u), ScalarJet2::variable_y(p.v));
    return FieldSample{B.f, {B.fx, B.fy}};
  };
  const auto base_curves = trace_zero_set(base, window, nx, ny);
  const auto pert_curves = trace_zero_set(graph_B_field(gallery::construction_scalar(c)), window, nx, ny);
  ZeroSetComparison out;
  out.cell = std::max(window.width() / nx, window.height() / ny);
  out.hausdorff = std::max(detail::directed_hausdorff(base_curves, pert_curves),
                           detail::directed_hausdorff(pert_curves, base_curves));
  for (const auto& cv : pert_curves) {
    out.perturbed_vertices += cv.vertices.size();
    for (const auto& p : cv.vertices)
      out.max_offset_from_cosh = std::max(out.max_offset_from_cosh, std::abs(std::abs(p.u) - std::cosh(p.v)));
  }
  for (const auto& cv : base_curves) out.base_vertices += cv.vertices.size();
  out.pass = out.base_vertices > 0 && out.perturbed_vertices > 0 && out.hausdorff < 2.0 * out.cell;
  return out;
}

} // namespace mixtype::construction
