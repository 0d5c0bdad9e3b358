#pragma once

// Type-change sets: zero-set tracing, point classification, null-curve diagnostics,
// vanishing orders along curves, and the mean-curvature limit pipeline.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mixtype/curvature.hpp"
#include "mixtype/errors.hpp"
#include "mixtype/numerics.hpp"
#include "mixtype/parallel.hpp"
#include "mixtype/spaceform.hpp"
#include "mixtype/surface.hpp"

namespace mixtype {

struct TypeChangeTolerances {
  double B = 1e-10;    // |B| at or below: on the type-change set
  double grad = 1e-8;  // |grad B| above: non-degenerate
  double null = 1e-8;  // |<G',G'>| at or below: null
  double independence = 1e-6;
};

enum class TypeChangeKind { nondegenerate, degenerate, not_type_change };

inline std::string_view to_string(TypeChangeKind k) noexcept {
  switch (k) {
  case TypeChangeKind::nondegenerate: return "nondegenerate";
  case TypeChangeKind::degenerate: return "degenerate";
  case TypeChangeKind::not_type_change: return "not_type_change";
  }
  return "?";
}

struct TypeChangeClass {
  TypeChangeKind kind = TypeChangeKind::not_type_change;
  std::array<double, 2> gradB{};
  double hessian_det = std::numeric_limits<double>::quiet_NaN();
  double B = 0.0;
};

inline TypeChangeClass classify_point(const ScalarJet2& s, const TypeChangeTolerances& tol = {}) {
  const GraphAB ab = graph_AB(s);
  TypeChangeClass c;
  c.gradB = ab.gradB;
  c.hessian_det = ab.hessian_det;
  c.B = ab.B;
  if (std::abs(ab.B) > tol.B) c.kind = TypeChangeKind::not_type_change;
  else if (std::hypot(ab.gradB[0], ab.gradB[1]) > tol.grad) c.kind = TypeChangeKind::nondegenerate;
  else c.kind = TypeChangeKind::degenerate;
  return c;
}

struct FieldSample {
  double value = 0.0;
  std::array<double, 2> grad{};
};

using ScalarField = std::function<FieldSample(ParamPoint)>;

/// B = 1 - f_x^2 - f_y^2 with its analytic gradient, for a graph.
inline ScalarField graph_B_field(ScalarGraph scalar) {
  return [scalar = std::move(scalar)](ParamPoint p) {
    const GraphAB ab = graph_AB(scalar(p));
    return FieldSample{ab.B, ab.gradB};
  };
}

/// beta of a parametric surface; gradient by central differences of beta.
inline ScalarField beta_field(const SurfaceDef& surface, double h = 1e-6) {
  return [surface, h](ParamPoint p) {
    auto beta = [&](ParamPoint q) { return first_fundamental(surface.space, eval_jet(surface, q)).beta; };
    FieldSample s;
    s.value = beta(p);
    s.grad = {(beta({p.u + h, p.v}) - beta({p.u - h, p.v})) / (2 * h),
              (beta({p.u, p.v + h}) - beta({p.u, p.v - h})) / (2 * h)};
    return s;
  };
}

struct CharacteristicCurve {
  std::vector<ParamPoint> vertices;
  std::vector<double> arclength;           // cumulative parameter-plane length
  std::vector<double> values;              // field value at each vertex after refinement
  std::vector<TypeChangeClass> classifications;
  std::vector<AmbientVector> ambient_trace; // f o gamma, when the surface is known
  bool closed = false;
};

using PointClassifier = std::function<TypeChangeClass(ParamPoint)>;

struct TraceOptions {
  double corrector_tol = 1e-10;
  int max_newton = 50;
};

namespace detail {

// Newton projection onto {field = 0} along the gradient.
inline std::pair<ParamPoint, double> newton_project(const ScalarField& field, ParamPoint p, double tol,
                                                    int max_iter, double max_step) {
  FieldSample s = field(p);
  const ParamPoint start = p;
  for (int it = 0; it < max_iter; ++it) {
    const double g2 = s.grad[0] * s.grad[0] + s.grad[1] * s.grad[1];
    if (!(g2 > 0.0)) break;
    const ParamPoint step{s.value * s.grad[0] / g2, s.value * s.grad[1] / g2};
    p = p - step;
    if ((p - start).norm() > max_step) return {start, field(start).value};
    s = field(p);
    if (std::abs(s.value) <= tol && step.norm() < 1e-13 * (1.0 + p.norm())) break;
    if (std::abs(s.value) == 0.0) break;
  }
  return {p, s.value};
}

} // namespace detail

/// Marching squares on an nx x ny cell grid over the window. Edge crossings are
/// seeded by linear interpolation, refined by Newton correction along the gradient,
/// and chained into polylines through shared cell edges. Open chains start at the
/// lowest-index boundary crossing, which makes the output deterministic.
inline std::vector<CharacteristicCurve> trace_zero_set(const ScalarField& field, const Rect& window, int nx,
                                                       int ny, const PointClassifier& classifier = {},
                                                       const TypeChangeTolerances& tol = {},
                                                       const TraceOptions& opt = {}) {
  if (nx < 8 || ny < 8) throw PreconditionError("trace_zero_set: resolution must be at least 8");
  if (!window.is_valid() || !std::isfinite(window.width()) || !std::isfinite(window.height()))
    throw PreconditionError("trace_zero_set: window must be a finite non-degenerate rectangle");
  const double du = window.width() / nx, dv = window.height() / ny;
  const std::size_t NX = nx + 1, NY = ny + 1;
  std::vector<double> val(NX * NY);
  parallel_for(NY, [&](std::size_t j) {
    for (std::size_t i = 0; i < NX; ++i)
      val[j * NX + i] = field({window.u0 + i * du, window.v0 + j * dv}).value;
  });
  auto at = [&](std::size_t i, std::size_t j) { return val[j * NX + i]; };
  auto positive = [&](std::size_t i, std::size_t j) { return at(i, j) > 0.0; };

  const std::size_t n_horizontal = NY * static_cast<std::size_t>(nx);
  auto h_edge = [&](std::size_t i, std::size_t j) { return j * nx + i; };
  auto v_edge = [&](std::size_t i, std::size_t j) { return n_horizontal + j * NX + i; };

  // Crossing point of an edge by linear interpolation.
  auto seed = [&](std::size_t id) {
    std::size_t i0, j0, i1, j1;
    if (id < n_horizontal) {
      j0 = j1 = id / nx;
      i0 = id % nx;
      i1 = i0 + 1;
    } else {
      const std::size_t k = id - n_horizontal;
      j0 = k / NX;
      i0 = i1 = k % NX;
      j1 = j0 + 1;
    }
    const double a = at(i0, j0), b = at(i1, j1);
    const double t = a / (a - b);
    const ParamPoint p0{window.u0 + i0 * du, window.v0 + j0 * dv};
    const ParamPoint p1{window.u0 + i1 * du, window.v0 + j1 * dv};
    return p0 + t * (p1 - p0);
  };

  std::map<std::size_t, std::vector<std::size_t>> adjacency;
  auto link = [&](std::size_t a, std::size_t b) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  };
  for (std::size_t j = 0; j < static_cast<std::size_t>(ny); ++j) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(nx); ++i) {
      const bool s0 = positive(i, j), s1 = positive(i + 1, j), s2 = positive(i + 1, j + 1),
                 s3 = positive(i, j + 1);
      const std::array<std::size_t, 4> edge{h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
      const std::array<bool, 4> cut{s0 != s1, s1 != s2, s2 != s3, s3 != s0};
      const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
      if (ncut == 2) {
        std::array<std::size_t, 2> e{};
        int k = 0;
        for (int q = 0; q < 4; ++q)
          if (cut[q]) e[k++] = edge[q];
        link(e[0], e[1]);
      } else if (ncut == 4) {
        const double center = 0.25 * (at(i, j) + at(i + 1, j) + at(i + 1, j + 1) + at(i, j + 1));
        if ((center > 0.0) == s0) {
          link(edge[0], edge[1]);
          link(edge[2], edge[3]);
        } else {
          link(edge[3], edge[0]);
          link(edge[1], edge[2]);
        }
      }
    }
  }

  const double max_step = 2.0 * std::hypot(du, dv);
  std::map<std::size_t, std::pair<ParamPoint, double>> refined;
  {
    std::vector<std::size_t> ids;
    ids.reserve(adjacency.size());
    for (const auto& kv : adjacency) ids.push_back(kv.first);
    std::vector<std::pair<ParamPoint, double>> out(ids.size());
    parallel_for(ids.size(), [&](std::size_t k) {
      out[k] = detail::newton_project(field, seed(ids[k]), opt.corrector_tol, opt.max_newton, max_step);
    });
    for (std::size_t k = 0; k < ids.size(); ++k) refined.emplace(ids[k], out[k]);
  }

  std::vector<CharacteristicCurve> curves;
  std::map<std::size_t, bool> visited;
  auto walk = [&](std::size_t start) {
    CharacteristicCurve c;
    std::vector<std::size_t> order{start};
    visited[start] = true;
    std::size_t prev = start, cur = start;
    while (true) {
      std::optional<std::size_t> next;
      for (std::size_t nb : adjacency[cur]) {
        if (!visited[nb]) {
          next = nb;
          break;
        }
        if (nb == start && nb != prev && order.size() > 2) c.closed = true;
      }
      if (!next) break;
      visited[*next] = true;
      order.push_back(*next);
      prev = cur;
      cur = *next;
    }
    for (std::size_t id : order) {
      const auto& [p, value] = refined.at(id);
      if (!c.vertices.empty() && (p - c.vertices.back()).norm() < 1e-12) continue;
      c.vertices.push_back(p);
      c.values.push_back(value);
    }
    return c;
  };
  for (const auto& [id, nbs] : adjacency)
    if (nbs.size() == 1 && !visited[id]) curves.push_back(walk(id));
  for (const auto& [id, nbs] : adjacency)
    if (!visited[id]) curves.push_back(walk(id));

  for (auto& c : curves) {
    c.arclength.assign(c.vertices.size(), 0.0);
    for (std::size_t k = 1; k < c.vertices.size(); ++k)
      c.arclength[k] = c.arclength[k - 1] + (c.vertices[k] - c.vertices[k - 1]).norm();
    c.classifications.reserve(c.vertices.size());
    for (std::size_t k = 0; k < c.vertices.size(); ++k) {
      if (classifier) {
        c.classifications.push_back(classifier(c.vertices[k]));
      } else {
        const FieldSample s = field(c.vertices[k]);
        TypeChangeClass t;
        t.B = s.value;
        t.gradB = s.grad;
        if (std::abs(s.value) > tol.B) t.kind = TypeChangeKind::not_type_change;
        else if (std::hypot(s.grad[0], s.grad[1]) > tol.grad) t.kind = TypeChangeKind::nondegenerate;
        else t.kind = TypeChangeKind::degenerate;
        c.classifications.push_back(t);
      }
    }
  }
  return curves;
}

/// Traces {B = 0} of a graph, classifies each vertex and records the ambient image.
inline std::vector<CharacteristicCurve> trace_characteristic_curves(const ScalarGraph& scalar, const Rect& window,
                                                                     int nx, int ny,
                                                                     const TypeChangeTolerances& tol = {}) {
  auto curves = trace_zero_set(
      graph_B_field(scalar), window, nx, ny, [&](ParamPoint p) { return classify_point(scalar(p), tol); }, tol);
  for (auto& c : curves) {
    c.ambient_trace.reserve(c.vertices.size());
    for (const auto& p : c.vertices) c.ambient_trace.push_back(AmbientVector{scalar(p).f, p.u, p.v});
  }
  return curves;
}

// ---------------------------------------------------------------------------
// Null curves

struct CurveJet {
  AmbientVector pos, d1, d2;
};

enum class NullVerdict { null_nondegenerate, null_degenerate, not_null };

inline std::string_view to_string(NullVerdict v) noexcept {
  switch (v) {
  case NullVerdict::null_nondegenerate: return "null_nondegenerate";
  case NullVerdict::null_degenerate: return "null_degenerate";
  case NullVerdict::not_null: return "not_null";
  }
  return "?";
}

struct NullCurveReport {
  double max_null_residual = 0.0;
  double min_independence = std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  NullVerdict verdict = NullVerdict::not_null;
};

/// Smallest singular value of the 2x3 matrix with rows d1/|d1| and d2/|d2|;
/// zero when either vector vanishes.
inline double independence_measure(const AmbientVector& d1, const AmbientVector& d2) {
  const double n1 = d1.euclidean_norm(), n2 = d2.euclidean_norm();
  if (!(n1 > 0.0) || !(n2 > 1e-12 * std::max(1.0, n1))) return 0.0;
  const AmbientVector a = d1 / n1, b = d2 / n2;
  const double cx = a[1] * b[2] - a[2] * b[1], cy = a[2] * b[0] - a[0] * b[2], cz = a[0] * b[1] - a[1] * b[0];
  double theta = std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
  if (theta > M_PI / 2) theta = M_PI - theta;
  return std::sqrt(2.0) * std::sin(0.5 * theta);
}

inline NullCurveReport null_curve_report(const std::vector<CurveJet>& jets, const TypeChangeTolerances& tol = {}) {
  const AmbientSpace R31 = AmbientSpace::minkowski3();
  NullCurveReport r;
  r.samples = jets.size();
  for (const auto& j : jets) {
    r.max_null_residual = std::max(r.max_null_residual, std::abs(inner(R31, j.d1, j.d1)));
    r.min_independence = std::min(r.min_independence, independence_measure(j.d1, j.d2));
  }
  if (jets.empty()) r.min_independence = 0.0;
  if (r.max_null_residual > tol.null) r.verdict = NullVerdict::not_null;
  else if (r.min_independence > tol.independence) r.verdict = NullVerdict::null_nondegenerate;
  else r.verdict = NullVerdict::null_degenerate;
  return r;
}

/// Samples a curve given with its first two derivatives at `samples` uniform points of [t0, t1].
inline NullCurveReport null_curve_check(const std::function<CurveJet(double)>& curve, int samples, double t0,
                                        double t1, const TypeChangeTolerances& tol = {}) {
  if (samples < 1) throw PreconditionError("null_curve_check: need at least one sample");
  std::vector<CurveJet> jets;
  for (int k = 0; k < samples; ++k) {
    const double t = samples == 1 ? 0.5 * (t0 + t1) : t0 + (t1 - t0) * k / (samples - 1);
    jets.push_back(curve(t));
  }
  return null_curve_report(jets, tol);
}

/// Derivatives of a position-only curve by central differences.
inline std::function<CurveJet(double)> curve_jet_fd(std::function<AmbientVector(double)> position,
                                                    double h = 1e-4) {
  return [position = std::move(position), h](double t) {
    const AmbientVector c = position(t), p = position(t + h), m = position(t - h);
    return CurveJet{c, (p - m) / (2 * h), (p - 2.0 * c + m) / (h * h)};
  };
}

/// Jet of the null curve f o gamma at a vertex p of a characteristic curve.
/// The velocity uses the exact unit tangent (-B_y, B_x)/|grad B|; the acceleration
/// differences the velocity at neighbours projected back onto {B = 0}.
inline CurveJet characteristic_curve_jet(const ScalarGraph& scalar, ParamPoint p, double h = 1e-4) {
  auto tangent = [&](const ScalarJet2& s) {
    const GraphAB ab = graph_AB(s);
    const double g = std::hypot(ab.gradB[0], ab.gradB[1]);
    if (!(g > 0.0)) throw DegenerateTypeChangeError("characteristic_curve_jet: grad B vanishes");
    return std::array<double, 2>{-ab.gradB[1] / g, ab.gradB[0] / g};
  };
  auto velocity = [](const ScalarJet2& s, std::array<double, 2> T) {
    return AmbientVector{s.fx * T[0] + s.fy * T[1], T[0], T[1]};
  };
  const ScalarField field = graph_B_field(scalar);
  const ScalarJet2 s0 = scalar(p);
  const auto T0 = tangent(s0);
  auto neighbour = [&](double sign) {
    const ParamPoint guess{p.u + sign * h * T0[0], p.v + sign * h * T0[1]};
    const ParamPoint q = detail::newton_project(field, guess, 1e-14, 50, 10 * h).first;
    const ScalarJet2 s = scalar(q);
    auto T = tangent(s);
    if (T[0] * T0[0] + T[1] * T0[1] < 0.0) T = {-T[0], -T[1]};
    return std::pair{q, velocity(s, T)};
  };
  const auto [qp, vp] = neighbour(+1.0);
  const auto [qm, vm] = neighbour(-1.0);
  const double chord = (qp - qm).norm();
  return CurveJet{AmbientVector{s0.f, p.u, p.v}, velocity(s0, T0), (vp - vm) / chord};
}

inline NullCurveReport characteristic_null_report(const ScalarGraph& scalar, const CharacteristicCurve& curve,
                                                  const TypeChangeTolerances& tol = {}) {
  std::vector<CurveJet> jets;
  jets.reserve(curve.vertices.size());
  for (const auto& p : curve.vertices) jets.push_back(characteristic_curve_jet(scalar, p));
  return null_curve_report(jets, tol);
}

// ---------------------------------------------------------------------------
// Vanishing orders

struct OrderEstimate {
  int order = 0;
  double leading_coeff = 0.0;
  double fit_residual = 0.0;
  bool identically_zero = false;
  std::array<double, 2> side_slopes{}; // fitted log-log slopes (right, left)
};

struct OrderOptions {
  int ladder = 11;             // offsets delta 2^-k, k = 0..ladder-1
  double delta_fraction = 0.1; // delta = fraction * window
  double max_residual = 0.05;  // max log-space residual of the fit
  double zero_threshold = 1e-14;
};

inline std::vector<double> offset_ladder(double window, const OrderOptions& opt) {
  std::vector<double> d;
  double delta = opt.delta_fraction * window;
  for (int k = 0; k < opt.ladder; ++k, delta *= 0.5) d.push_back(delta);
  return d;
}

/// Order of the zero of fn at s_j from log|fn| vs log|s - s_j| regressions on both sides.
inline OrderEstimate vanishing_order(const std::function<double(double)>& fn, double s_j, double window,
                                     const OrderOptions& opt = {}) {
  if (!(window > 0.0)) throw PreconditionError("vanishing_order: window must be positive");
  const auto offsets = offset_ladder(window, opt);
  std::array<std::vector<double>, 2> ys;
  bool all_small = true;
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    for (double d : offsets) {
      const double y = fn(s_j + sign * d);
      if (!std::isfinite(y)) throw OrderFitError("vanishing_order: non-finite sample");
      all_small = all_small && std::abs(y) < opt.zero_threshold;
      ys[side].push_back(y);
    }
  }
  OrderEstimate est;
  if (all_small) {
    est.identically_zero = true;
    return est;
  }
  std::vector<double> lx;
  for (double d : offsets) lx.push_back(std::log(d));
  std::array<int, 2> orders{};
  for (int side = 0; side < 2; ++side) {
    std::vector<double> ly;
    for (double y : ys[side]) {
      if (y == 0.0) throw OrderFitError("vanishing_order: exact zero sample inside the window");
      ly.push_back(std::log(std::abs(y)));
    }
    const auto fit = numerics::fit_line(lx, ly);
    est.side_slopes[side] = fit.slope;
    est.fit_residual = std::max(est.fit_residual, fit.max_residual);
    orders[side] = static_cast<int>(std::lround(fit.slope));
  }
  if (orders[0] != orders[1])
    throw OrderFitError("vanishing_order: sides disagree on the order");
  if (est.fit_residual > opt.max_residual)
    throw OrderFitError("vanishing_order: log-log fit residual above threshold");
  est.order = orders[0];
  // Leading coefficient: extrapolate fn(s_j + d) / d^m to d = 0 on the right side.
  std::vector<double> xs, rs;
  for (std::size_t k = offsets.size() - 4; k < offsets.size(); ++k) {
    xs.push_back(offsets[k]);
    rs.push_back(ys[0][k] / std::pow(offsets[k], est.order));
  }
  est.leading_coeff = numerics::neville_diagonal(xs, rs).back();
  return est;
}

// ---------------------------------------------------------------------------
// Mean-curvature limit along a curve crossing the type-change set

struct HSample {
  double offset = 0.0; // signed s - s_j
  double H = 0.0;
};

struct MeanCurvatureLimitReport {
  double s_j = 0.0;
  OrderEstimate beta_order; // m
  OrderEstimate alpha_order; // l (identically_zero when alpha vanishes along the curve)
  bool m_odd = false;
  bool strict_inequality = false; // 2l > 3m
  std::optional<double> expected_exponent; // l - 3m/2
  std::array<std::optional<double>, 2> fitted_exponent; // (right, left)
  std::vector<HSample> samples;
  bool H_tends_to_zero = false;
};

struct LimitOptions {
  double window = 0.1;
  OrderOptions order{};
};

/// Runs the curve-restriction argument numerically: beta^ = beta o gamma, alpha^ = alpha o gamma,
/// their vanishing orders at the sign change s_j, and the decay of |H| towards s_j.
inline MeanCurvatureLimitReport verify_mean_curvature_limit(const SurfaceDef& surface,
                                                            const std::function<ParamPoint(double)>& curve,
                                                            double s_j, const LimitOptions& opt = {}) {
  auto beta_hat = [&](double s) { return first_fundamental(surface.space, eval_jet(surface, curve(s))).beta; };
  auto alpha_hat = [&](double s) { return alpha_extended(surface.space, eval_jet(surface, curve(s))); };
  const double d0 = opt.order.delta_fraction * opt.window;
  const double bl = beta_hat(s_j - d0), br = beta_hat(s_j + d0);
  if (!((bl > 0 && br < 0) || (bl < 0 && br > 0)))
    throw PreconditionError("verify_mean_curvature_limit: beta does not change sign at s_j");
  MeanCurvatureLimitReport r;
  r.s_j = numerics::bisect(beta_hat, s_j - d0, s_j + d0);
  r.beta_order = vanishing_order(beta_hat, r.s_j, opt.window, opt.order);
  r.alpha_order = vanishing_order(alpha_hat, r.s_j, opt.window, opt.order);
  const int m = r.beta_order.order;
  r.m_odd = m % 2 == 1;
  if (r.alpha_order.identically_zero) {
    r.strict_inequality = true;
  } else {
    const int l = r.alpha_order.order;
    r.strict_inequality = 2 * l > 3 * m;
    r.expected_exponent = l - 1.5 * m;
  }
  const auto offsets = offset_ladder(opt.window, opt.order);
  std::vector<double> lx;
  for (double d : offsets) lx.push_back(std::log(d));
  bool decays = true;
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    std::vector<double> ly;
    for (double d : offsets) {
      const double s = r.s_j + sign * d;
      const double b = beta_hat(s);
      const double H = alpha_hat(s) / (2.0 * std::pow(std::abs(b), 1.5));
      r.samples.push_back({sign * d, H});
      ly.push_back(std::log(std::max(std::abs(H), 1e-300)));
    }
    if (!r.alpha_order.identically_zero) {
      r.fitted_exponent[side] = numerics::fit_line(lx, ly).slope;
      decays = decays && *r.fitted_exponent[side] > 0.0;
    }
  }
  r.H_tends_to_zero = r.alpha_order.identically_zero || decays;
  return r;
}

} // namespace mixtype
