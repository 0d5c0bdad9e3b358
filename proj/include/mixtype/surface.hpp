#pragma once

// Parametric surfaces as 2-jet evaluators.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "mixtype/errors.hpp"
#include "mixtype/spaceform.hpp"
#include "mixtype/taylor.hpp"

namespace mixtype {

struct ParamPoint {
  double u = 0.0;
  double v = 0.0;

  friend ParamPoint operator+(ParamPoint a, ParamPoint b) { return {a.u + b.u, a.v + b.v}; }
  friend ParamPoint operator-(ParamPoint a, ParamPoint b) { return {a.u - b.u, a.v - b.v}; }
  friend ParamPoint operator*(double s, ParamPoint a) { return {s * a.u, s * a.v}; }
  friend bool operator==(ParamPoint, ParamPoint) = default;

  double norm() const { return std::hypot(u, v); }
  bool is_finite() const { return std::isfinite(u) && std::isfinite(v); }
};

/// Closed parameter rectangle [u0,u1] x [v0,v1]; infinite bounds allowed.
struct Rect {
  double u0 = -std::numeric_limits<double>::infinity();
  double u1 = std::numeric_limits<double>::infinity();
  double v0 = -std::numeric_limits<double>::infinity();
  double v1 = std::numeric_limits<double>::infinity();

  static Rect unbounded() { return {}; }

  bool contains(ParamPoint p) const { return p.u >= u0 && p.u <= u1 && p.v >= v0 && p.v <= v1; }
  bool is_valid() const { return u1 > u0 && v1 > v0; }
  double width() const { return u1 - u0; }
  double height() const { return v1 - v0; }
};

/// Position and first/second partials in ambient coordinates. The single mixed
/// partial fuv stands for both orders of differentiation.
struct Jet2 {
  AmbientVector pos, fu, fv, fuu, fuv, fvv;
};

using JetEvaluator = std::function<Jet2(ParamPoint)>;
using PositionMap = std::function<AmbientVector(ParamPoint)>;
using ScalarGraph = std::function<ScalarJet2(ParamPoint)>;
// Extended-precision graph jets, used where B^2 in a denominator amplifies roundoff.
using ScalarJet2x = Taylor2<long double>;
using ScalarGraphExt = std::function<ScalarJet2x(ParamPoint)>;

struct SurfaceDef {
  AmbientSpace space;
  JetEvaluator evaluator;
  Rect domain_hint;
  std::string name;
  // Present when the surface is a Minkowski graph (x,y) -> (f(x,y), x, y).
  ScalarGraph graph_scalar;
  ScalarGraphExt graph_scalar_ext; // optional
  // Position-only evaluation that bypasses derivative propagation; used by the
  // finite-difference oracle. Falls back to evaluator().pos when empty.
  PositionMap position_map;

  bool is_graph() const { return static_cast<bool>(graph_scalar); }

  AmbientVector position(ParamPoint p) const {
    return position_map ? position_map(p) : evaluator(p).pos;
  }
};

inline Jet2 eval_jet(const SurfaceDef& surface, ParamPoint p) {
  if (!p.is_finite() || !surface.domain_hint.contains(p))
    throw DomainError("eval_jet: point (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                      ") outside the domain of " + surface.name);
  return surface.evaluator(p);
}

/// Assembles a Jet2 from per-coordinate Taylor jets in (u, v).
template <std::size_t N>
Jet2 jet_from_coordinates(const std::array<ScalarJet2, N>& coords) {
  Jet2 j{AmbientVector(N), AmbientVector(N), AmbientVector(N),
         AmbientVector(N), AmbientVector(N), AmbientVector(N)};
  for (std::size_t i = 0; i < N; ++i) {
    j.pos[i] = coords[i].f;
    j.fu[i] = coords[i].fx;
    j.fv[i] = coords[i].fy;
    j.fuu[i] = coords[i].fxx;
    j.fuv[i] = coords[i].fxy;
    j.fvv[i] = coords[i].fyy;
  }
  return j;
}

/// Builds a SurfaceDef from a coordinate template callable as f(u, v) -> std::array<T, N>
/// for both T = double and T = ScalarJet2.
template <class Coordinates>
SurfaceDef surface_from_coordinates(AmbientSpace space, Coordinates coords, Rect domain, std::string name) {
  SurfaceDef s;
  s.space = space;
  s.domain_hint = domain;
  s.name = std::move(name);
  s.evaluator = [coords](ParamPoint p) {
    return jet_from_coordinates(coords(ScalarJet2::variable_x(p.u), ScalarJet2::variable_y(p.v)));
  };
  s.position_map = [coords](ParamPoint p) {
    const auto c = coords(p.u, p.v);
    AmbientVector out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
    return out;
  };
  return s;
}

/// Central-difference 2-jet from positions on the 9-point stencil
/// {0, +-h} x {0, +-h}; truncation error O(h^2).
inline Jet2 fd_jet(const PositionMap& position, ParamPoint p, double h,
                   const std::optional<Rect>& domain = std::nullopt) {
  if (!(h > 0.0)) throw PreconditionError("fd_jet: h must be positive");
  auto at = [&](double du, double dv) {
    const ParamPoint q{p.u + du, p.v + dv};
    if (domain && !domain->contains(q)) throw DomainError("fd_jet: stencil leaves the domain");
    return position(q);
  };
  const AmbientVector c = at(0, 0);
  const AmbientVector e = at(h, 0), w = at(-h, 0), n = at(0, h), s = at(0, -h);
  const AmbientVector ne = at(h, h), nw = at(-h, h), se = at(h, -h), sw = at(-h, -h);
  Jet2 j;
  j.pos = c;
  j.fu = (e - w) / (2.0 * h);
  j.fv = (n - s) / (2.0 * h);
  j.fuu = (e - 2.0 * c + w) / (h * h);
  j.fvv = (n - 2.0 * c + s) / (h * h);
  j.fuv = (ne - se - nw + sw) / (4.0 * h * h);
  return j;
}

inline Jet2 fd_jet(const SurfaceDef& surface, ParamPoint p, double h = 1e-4) {
  return fd_jet([&surface](ParamPoint q) { return surface.position(q); }, p, h, surface.domain_hint);
}

/// Minkowski graph (x,y) -> (f(x,y), x, y).
inline Jet2 graph_jet(const ScalarJet2& s, ParamPoint p) {
  return Jet2{{s.f, p.u, p.v}, {s.fx, 1.0, 0.0}, {s.fy, 0.0, 1.0},
              {s.fxx, 0.0, 0.0}, {s.fxy, 0.0, 0.0}, {s.fyy, 0.0, 0.0}};
}

inline SurfaceDef graph_to_surface(ScalarGraph scalar, std::string name = "graph",
                                   Rect domain = Rect::unbounded(),
                                   std::function<double(ParamPoint)> value_only = {},
                                   ScalarGraphExt extended = {}) {
  SurfaceDef s;
  s.graph_scalar_ext = std::move(extended);
  s.space = AmbientSpace::minkowski3();
  s.domain_hint = domain;
  s.name = std::move(name);
  s.graph_scalar = scalar;
  s.evaluator = [scalar](ParamPoint p) { return graph_jet(scalar(p), p); };
  if (value_only) {
    s.position_map = [value_only](ParamPoint p) { return AmbientVector{value_only(p), p.u, p.v}; };
  }
  return s;
}

/// Recovers the scalar graph jet at p, or throws if the surface is not a graph.
inline ScalarJet2 graph_scalar_jet(const SurfaceDef& surface, ParamPoint p) {
  if (!surface.is_graph()) throw PreconditionError(surface.name + " is not a Minkowski graph");
  if (!p.is_finite() || !surface.domain_hint.contains(p))
    throw DomainError("graph evaluation outside the domain of " + surface.name);
  return surface.graph_scalar(p);
}

} // namespace mixtype
