#pragma once

// First and second fundamental forms, unit normal, mean curvature, the extended
// numerator alpha, graph quantities A and B, and the analytic extension of the
// mean-curvature vector of a graph across its type-change set.
//
// Sign convention: the normal is built from the analytic branch of the metric
// vector product (metric_cross3 / metric_cross4), so nu = (1, f_x, f_y)/sqrt|B|
// on graphs and H carries one global sign on both sides of the type-change set.

#include <array>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "mixtype/errors.hpp"
#include "mixtype/numerics.hpp"
#include "mixtype/spaceform.hpp"
#include "mixtype/surface.hpp"
#include "mixtype/taylor.hpp"

namespace mixtype {

struct FundamentalData {
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  double beta = 0.0;
};

struct ShapeData {
  AmbientVector nu;
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
};

enum class PointCausality { spacelike, timelike, degenerate };

inline std::string_view to_string(PointCausality c) noexcept {
  switch (c) {
  case PointCausality::spacelike: return "spacelike";
  case PointCausality::timelike: return "timelike";
  case PointCausality::degenerate: return "degenerate";
  }
  return "?";
}

struct CurvaturePoint {
  FundamentalData fundamental;
  std::optional<ShapeData> shape;
  std::optional<double> H;
  double alpha = 0.0;
  PointCausality causal = PointCausality::degenerate;
};

struct GraphAB {
  double A = 0.0;
  double B = 0.0;
  std::array<double, 2> gradB{};
  double hessian_det = 0.0;
};

inline FundamentalData first_fundamental(const AmbientSpace& space, const Jet2& jet) {
  FundamentalData d;
  d.g11 = inner(space, jet.fu, jet.fu);
  d.g12 = inner(space, jet.fu, jet.fv);
  d.g22 = inner(space, jet.fv, jet.fv);
  d.beta = d.g11 * d.g22 - d.g12 * d.g12;
  return d;
}

/// |beta| <= 1e-12 (1 + g11^2 + g22^2).
inline bool is_degenerate(const FundamentalData& d) {
  return std::abs(d.beta) <= 1e-12 * (1.0 + d.g11 * d.g11 + d.g22 * d.g22);
}

inline PointCausality classify(const FundamentalData& d) {
  if (is_degenerate(d)) return PointCausality::degenerate;
  return d.beta > 0.0 ? PointCausality::spacelike : PointCausality::timelike;
}

// Unnormalized normal f_u x_g f_v (with pos as first factor on curved forms).
// Satisfies <n,n> = -beta.
inline AmbientVector raw_normal(const AmbientSpace& space, const Jet2& jet) {
  if (space.is_curved()) return metric_cross4(space, jet.pos, jet.fu, jet.fv);
  return metric_cross3(jet.fu, jet.fv);
}

inline AmbientVector unit_normal(const AmbientSpace& space, const Jet2& jet) {
  const FundamentalData d = first_fundamental(space, jet);
  if (is_degenerate(d)) throw DegenerateMetricError("unit_normal: induced metric is degenerate");
  const AmbientVector n = raw_normal(space, jet);
  return n / norm_abs(space, n);
}

/// Ambient second partials paired with nu. On curved forms the ambient and the
/// covariant second derivative differ by a multiple of pos, which is orthogonal to nu.
inline ShapeData second_fundamental(const AmbientSpace& space, const Jet2& jet, const AmbientVector& nu) {
  return {nu, inner(space, jet.fuu, nu), inner(space, jet.fuv, nu), inner(space, jet.fvv, nu)};
}

/// H = (g11 h22 - 2 g12 h12 + g22 h11) / (2 |beta|).
inline double mean_curvature(const AmbientSpace& space, const Jet2& jet) {
  const FundamentalData d = first_fundamental(space, jet);
  const ShapeData s = second_fundamental(space, jet, unit_normal(space, jet));
  return (d.g11 * s.h22 - 2.0 * d.g12 * s.h12 + d.g22 * s.h11) / (2.0 * std::abs(d.beta));
}

/// sqrt|beta| (g11 h22 - 2 g12 h12 + g22 h11), evaluated with the unnormalized
/// normal so that no division occurs; defined on the whole parameter domain.
inline double alpha_extended(const AmbientSpace& space, const Jet2& jet) {
  const FundamentalData d = first_fundamental(space, jet);
  const AmbientVector n = raw_normal(space, jet);
  return d.g11 * inner(space, jet.fvv, n) - 2.0 * d.g12 * inner(space, jet.fuv, n) +
         d.g22 * inner(space, jet.fuu, n);
}

inline CurvaturePoint curvature_at(const AmbientSpace& space, const Jet2& jet) {
  CurvaturePoint cp;
  cp.fundamental = first_fundamental(space, jet);
  cp.alpha = alpha_extended(space, jet);
  cp.causal = classify(cp.fundamental);
  if (cp.causal != PointCausality::degenerate) {
    cp.shape = second_fundamental(space, jet, unit_normal(space, jet));
    const auto& d = cp.fundamental;
    const auto& s = *cp.shape;
    cp.H = (d.g11 * s.h22 - 2.0 * d.g12 * s.h12 + d.g22 * s.h11) / (2.0 * std::abs(d.beta));
  }
  return cp;
}

inline GraphAB graph_AB(const ScalarJet2& s) {
  GraphAB out;
  out.B = 1.0 - s.fx * s.fx - s.fy * s.fy;
  out.A = (s.fx * s.fx - 1.0) * s.fyy - 2.0 * s.fx * s.fy * s.fxy + (s.fy * s.fy - 1.0) * s.fxx;
  // grad B = -2 Hess(f) (f_x, f_y)^T
  out.gradB = {-2.0 * (s.fxx * s.fx + s.fxy * s.fy), -2.0 * (s.fxy * s.fx + s.fyy * s.fy)};
  out.hessian_det = s.fxx * s.fyy - s.fxy * s.fxy;
  return out;
}

/// Graph mean curvature A / (2 |B|^{3/2}).
inline double graph_mean_curvature(const ScalarJet2& s) {
  const GraphAB ab = graph_AB(s);
  return ab.A / (2.0 * std::pow(std::abs(ab.B), 1.5));
}

struct ExtensionOptions {
  double delta = 5e-2;            // first offset along grad B / |grad B|
  int terms = 4;                  // offsets +-delta * 2^-k, k = 0..terms-1
  double growth_limit = 10.0;     // successive extrapolant growth that flags divergence
  double direct_threshold = 1e-3; // |B| above which the closed form is used directly
  double floor = 1e-9;            // magnitudes below this count as zero in growth checks
};

struct TransversalLimit {
  std::vector<double> value;      // extrapolated limit (one entry per component)
  std::vector<double> spread;     // |last - previous extrapolant| per component
};

namespace detail {

// Extrapolates F(p + delta_k n) to delta = 0 componentwise; throws on divergence.
// Samples are taken on both sides and averaged, which leaves only even powers of
// delta for a function analytic across the set, so the nodes are delta_k^2. The
// growth checks run on each side separately, since averaging would cancel an odd pole.
template <class Sampler>
TransversalLimit transversal_limit(Sampler&& sample, ParamPoint p, std::array<double, 2> dir,
                                   const ExtensionOptions& opt) {
  std::vector<double> xs;
  std::vector<std::vector<double>> plus, minus;
  double delta = opt.delta;
  for (int k = 0; k < opt.terms; ++k, delta *= 0.5) {
    xs.push_back(delta * delta);
    plus.push_back(sample(ParamPoint{p.u + delta * dir[0], p.v + delta * dir[1]}));
    minus.push_back(sample(ParamPoint{p.u - delta * dir[0], p.v - delta * dir[1]}));
  }
  const std::size_t ncomp = plus.front().size();
  TransversalLimit out;
  out.value.resize(ncomp);
  out.spread.resize(ncomp);
  auto check_side = [&](const std::vector<double>& yc) {
    const double first = std::max(std::abs(yc.front()), opt.floor);
    for (double y : yc) {
      // A bounded analytic function is nearly constant over the ladder; a pole is not.
      if (!std::isfinite(y) || std::abs(y) > 4.0 * first)
        throw DivergenceError("transversal samples grow towards the type-change set");
    }
    const auto diag = numerics::neville_diagonal(xs, yc);
    for (std::size_t k = 1; k < diag.size(); ++k) {
      if (std::abs(diag[k]) > opt.growth_limit * std::max(std::abs(diag[k - 1]), opt.floor))
        throw DivergenceError("extrapolants grow by more than the growth limit");
    }
  };
  for (std::size_t c = 0; c < ncomp; ++c) {
    std::vector<double> yp, ym, avg;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      yp.push_back(plus[k][c]);
      ym.push_back(minus[k][c]);
      avg.push_back(0.5 * (plus[k][c] + minus[k][c]));
    }
    check_side(yp);
    check_side(ym);
    const auto diag = numerics::neville_diagonal(xs, avg);
    out.value[c] = diag.back();
    out.spread[c] = diag.size() > 1 ? std::abs(diag.back() - diag[diag.size() - 2]) : 0.0;
  }
  return out;
}

// A / B^2 at q, in extended precision when the graph provides it.
inline double graph_A_over_B2(const SurfaceDef& graph, ParamPoint q) {
  if (graph.graph_scalar_ext) {
    if (!q.is_finite() || !graph.domain_hint.contains(q))
      throw DomainError("graph evaluation outside the domain of " + graph.name);
    const ScalarJet2x g = graph.graph_scalar_ext(q);
    const long double B = 1.0L - g.fx * g.fx - g.fy * g.fy;
    const long double A = (g.fx * g.fx - 1.0L) * g.fyy - 2.0L * g.fx * g.fy * g.fxy + (g.fy * g.fy - 1.0L) * g.fxx;
    return static_cast<double>(A / (B * B));
  }
  const GraphAB qa = graph_AB(graph_scalar_jet(graph, q));
  return qa.A / (qa.B * qa.B);
}

inline std::array<double, 2> unit_gradient(const GraphAB& ab, double grad_tol) {
  const double g = std::hypot(ab.gradB[0], ab.gradB[1]);
  if (!(g > grad_tol)) throw DegenerateTypeChangeError("grad B vanishes at the type-change point");
  return {ab.gradB[0] / g, ab.gradB[1] / g};
}

} // namespace detail

/// Mean-curvature vector H nu of a graph, extended across B = 0.
///
/// Off the type-change set this is (A / (2 B^2)) (1, f_x, f_y). Near it, the value
/// is the limit of the same expression along the transversal direction grad B / |grad B|,
/// obtained by polynomial extrapolation of samples at offsets +-delta 2^-k.
inline AmbientVector extended_mean_curvature_vector(const SurfaceDef& graph, ParamPoint p,
                                                    double grad_tol = 1e-8,
                                                    const ExtensionOptions& opt = {}) {
  const ScalarJet2 s = graph_scalar_jet(graph, p);
  const GraphAB ab = graph_AB(s);
  auto closed_form = [](const ScalarJet2& j) {
    const GraphAB q = graph_AB(j);
    const double k = q.A / (2.0 * q.B * q.B);
    return std::vector<double>{k, k * j.fx, k * j.fy};
  };
  if (std::abs(ab.B) > opt.direct_threshold) {
    const auto v = closed_form(s);
    return {v[0], v[1], v[2]};
  }
  const auto dir = detail::unit_gradient(ab, grad_tol);
  // The limit of A/(2B^2) is extrapolated on its own and recombined with the exact
  // tangent data (1, f_x, f_y) at p.
  const auto lim = detail::transversal_limit(
      [&](ParamPoint q) { return std::vector<double>{0.5 * detail::graph_A_over_B2(graph, q)}; },
      p, dir, opt);
  const double k = lim.value[0];
  return {k, k * s.fx, k * s.fy};
}

/// Limit of A / B^2 at p taken along grad B (used for the divisibility checks).
inline double extended_A_over_B2(const SurfaceDef& graph, ParamPoint p, double grad_tol = 1e-8,
                                 const ExtensionOptions& opt = {}) {
  const ScalarJet2 s = graph_scalar_jet(graph, p);
  const GraphAB ab = graph_AB(s);
  if (std::abs(ab.B) > opt.direct_threshold) return ab.A / (ab.B * ab.B);
  const auto dir = detail::unit_gradient(ab, grad_tol);
  const auto lim = detail::transversal_limit(
      [&](ParamPoint q) { return std::vector<double>{detail::graph_A_over_B2(graph, q)}; },
      p, dir, opt);
  return lim.value[0];
}

} // namespace mixtype
