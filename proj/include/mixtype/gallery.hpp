#pragma once

// Closed-form example surfaces with exact jets:
//   fP            CMC space-like surface with parabolic symmetry in R^3_1
//   fH            CMC space-like surface with hyperbolic symmetry in R^3_1
//   fK            graph t = x tanh y, zero mean curvature, mixed type
//   fZ            zero mean curvature mixed-type surface in de Sitter 3-space
//   fAds(alpha)   mixed-type surface in anti-de Sitter 3-space
//   construction  graph t = x tanh y + c tanh^3(B), bounded H across B = 0

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "mixtype/errors.hpp"
#include "mixtype/numerics.hpp"
#include "mixtype/spaceform.hpp"
#include "mixtype/surface.hpp"
#include "mixtype/taylor.hpp"

namespace mixtype::gallery {

enum class Kind { fP, fH, fK, fZ, fAds, construction };

struct GalleryId {
  Kind kind = Kind::fK;
  double param = 0.0; // alpha for fAds, c for construction

  static GalleryId fP() { return {Kind::fP, 0.0}; }
  static GalleryId fH() { return {Kind::fH, 0.0}; }
  static GalleryId fK() { return {Kind::fK, 0.0}; }
  static GalleryId fZ() { return {Kind::fZ, 0.0}; }
  static GalleryId fAds(double alpha = 1.0) { return {Kind::fAds, alpha}; }
  static GalleryId construction(double c = 0.01) { return {Kind::construction, c}; }

  std::string label() const {
    switch (kind) {
    case Kind::fP: return "fP";
    case Kind::fH: return "fH";
    case Kind::fK: return "fK";
    case Kind::fZ: return "fZ";
    case Kind::fAds: return "fAds:alpha=" + format_param();
    case Kind::construction: return "construction:c=" + format_param();
    }
    return "?";
  }

private:
  std::string format_param() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", param);
    return buf;
  }
};

inline void validate(const GalleryId& id) {
  if (id.kind == Kind::fAds && !(id.param != 0.0 && std::isfinite(id.param)))
    throw PreconditionError("fAds requires alpha != 0");
  if (id.kind == Kind::construction && !(id.param > 0.0 && id.param <= 1.0))
    throw PreconditionError("construction requires 0 < c <= 1");
}

/// Parses "fP", "fH", "fK", "fZ", "fAds[:alpha=A]", "construction[:c=C]".
inline GalleryId parse_gallery_id(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  std::optional<std::pair<std::string, double>> kv;
  if (colon != std::string_view::npos) {
    const std::string_view rest = text.substr(colon + 1);
    const auto eq = rest.find('=');
    if (eq == std::string_view::npos) throw ParseError("gallery parameter must be key=value: " + std::string(text));
    try {
      std::size_t used = 0;
      const std::string num(rest.substr(eq + 1));
      const double v = std::stod(num, &used);
      if (used != num.size()) throw ParseError("trailing characters in gallery parameter");
      kv.emplace(std::string(rest.substr(0, eq)), v);
    } catch (const std::logic_error&) {
      throw ParseError("invalid gallery parameter value: " + std::string(text));
    }
  }
  auto param_or = [&](std::string_view key, double fallback) {
    if (!kv) return fallback;
    if (kv->first != key) throw ParseError("unknown gallery parameter '" + kv->first + "' for " + std::string(head));
    return kv->second;
  };
  GalleryId id;
  if (head == "fP") id = GalleryId::fP();
  else if (head == "fH") id = GalleryId::fH();
  else if (head == "fK") id = GalleryId::fK();
  else if (head == "fZ") id = GalleryId::fZ();
  else if (head == "fAds") id = GalleryId::fAds(param_or("alpha", 1.0));
  else if (head == "construction") id = GalleryId::construction(param_or("c", 0.01));
  else throw ParseError("unknown gallery surface: " + std::string(head));
  if ((id.kind == Kind::fP || id.kind == Kind::fH || id.kind == Kind::fK || id.kind == Kind::fZ) && kv)
    throw ParseError(std::string(head) + " takes no parameters");
  validate(id);
  return id;
}

// ---------------------------------------------------------------------------
// Coordinate functions, written once for T = double and T = ScalarJet2.

inline double value_of(double x) { return x; }
inline double value_of(const ScalarJet2& x) { return x.f; }

template <class T>
T eta(const T& v) {
  using std::atan;
  return 0.5 * (atan(v) - v / (v * v + 1.0));
}

template <class T>
T phi_H(const T& v) {
  using std::log;
  return log((1.0 + v) / (1.0 - v)) - v;
}

template <class T>
std::array<T, 3> fP_coords(const T& u, const T& v) {
  const T e = eta(v);
  const T u2v = u * u * v;
  return {-e + u2v + v, -e + u2v - v, 2.0 * u * v};
}

template <class T>
std::array<T, 3> fH_coords(const T& u, const T& v) {
  using std::cosh;
  using std::sinh;
  if (!(std::abs(value_of(v)) < 1.0)) throw DomainError("fH requires |v| < 1");
  return {v * cosh(u), v * sinh(u), phi_H(v)};
}

template <class T>
std::array<T, 4> fZ_coords(const T& u, const T& v) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {sinh(u) * sin(v), cos(u) * cos(v), sin(u) * cos(v), cosh(u) * sin(v)};
}

template <class T>
std::array<T, 4> fAds_coords(const T& u, const T& v, double a) {
  using std::cosh;
  using std::sinh;
  return {cosh(u) * cosh(v), sinh(a * u) * sinh(v), cosh(a * u) * sinh(v), sinh(u) * cosh(v)};
}

template <class T>
T fK_value(const T& x, const T& y) {
  using std::tanh;
  return x * tanh(y);
}

// B = 1 - f_x^2 - f_y^2 for f = x tanh y, in closed form sech^2 y - x^2 sech^4 y.
template <class T>
T fK_B(const T& x, const T& y) {
  using std::cosh;
  const T s2 = 1.0 / (cosh(y) * cosh(y));
  return s2 - x * x * s2 * s2;
}

template <class T>
T construction_value(const T& x, const T& y, double c) {
  using std::tanh;
  const T t = tanh(fK_B(x, y));
  return fK_value(x, y) + c * t * t * t;
}

// ---------------------------------------------------------------------------

inline constexpr double kFHEdge = 1.0 - 1e-12;

inline ScalarGraph fK_scalar() {
  return [](ParamPoint p) { return fK_value(ScalarJet2::variable_x(p.u), ScalarJet2::variable_y(p.v)); };
}

// c = 0 is accepted here and reproduces fK; the public id requires 0 < c <= 1.
inline ScalarGraph construction_scalar(double c) {
  return [c](ParamPoint p) {
    return construction_value(ScalarJet2::variable_x(p.u), ScalarJet2::variable_y(p.v), c);
  };
}

inline SurfaceDef construction_surface(double c) {
  return graph_to_surface(
      construction_scalar(c), GalleryId{Kind::construction, c}.label(), Rect::unbounded(),
      [c](ParamPoint p) { return construction_value(p.u, p.v, c); },
      [c](ParamPoint p) {
        return construction_value(ScalarJet2x::variable_x(p.u), ScalarJet2x::variable_y(p.v), c);
      });
}

inline SurfaceDef make_surface(const GalleryId& id) {
  validate(id);
  switch (id.kind) {
  case Kind::fP:
    return surface_from_coordinates(
        AmbientSpace::minkowski3(), [](const auto& u, const auto& v) { return fP_coords(u, v); },
        Rect::unbounded(), "fP");
  case Kind::fH: {
    Rect dom;
    dom.v0 = -kFHEdge;
    dom.v1 = kFHEdge;
    return surface_from_coordinates(
        AmbientSpace::minkowski3(), [](const auto& u, const auto& v) { return fH_coords(u, v); }, dom, "fH");
  }
  case Kind::fK:
    return graph_to_surface(
        fK_scalar(), "fK", Rect::unbounded(), [](ParamPoint p) { return fK_value(p.u, p.v); },
        [](ParamPoint p) { return fK_value(ScalarJet2x::variable_x(p.u), ScalarJet2x::variable_y(p.v)); });
  case Kind::fZ:
    return surface_from_coordinates(
        AmbientSpace::de_sitter3(), [](const auto& u, const auto& v) { return fZ_coords(u, v); },
        Rect::unbounded(), "fZ");
  case Kind::fAds: {
    const double a = 1.0 / std::tanh(id.param);
    return surface_from_coordinates(
        AmbientSpace::anti_de_sitter3(), [a](const auto& u, const auto& v) { return fAds_coords(u, v, a); },
        Rect::unbounded(), id.label());
  }
  case Kind::construction: return construction_surface(id.param);
  }
  throw PreconditionError("unknown gallery id");
}

// ---------------------------------------------------------------------------
// Closed-form first fundamental forms, for cross-checks.

// fZ: cos 2v du^2 + dv^2
inline std::array<double, 3> fZ_first_form(ParamPoint p) { return {std::cos(2.0 * p.v), 0.0, 1.0}; }

// fAds: (cosh 2 alpha - cosh 2v) / (2 sinh^2 alpha) du^2 + dv^2
inline std::array<double, 3> fAds_first_form(ParamPoint p, double alpha) {
  const double sa = std::sinh(alpha);
  return {(std::cosh(2.0 * alpha) - std::cosh(2.0 * p.v)) / (2.0 * sa * sa), 0.0, 1.0};
}

// ---------------------------------------------------------------------------
// Implicit sets containing the images of fP and fH.

/// -t^2 + x^2 + y^2 - 2 (t - x) eta((t - x) / 2) for the set containing fP.
inline double implicit_residual_P(const AmbientVector& p) {
  if (p.size() != 3) throw DimensionError("implicit_residual_P: R^3_1 point required");
  const double t = p[0], x = p[1], y = p[2];
  return -t * t + x * x + y * y - 2.0 * (t - x) * eta((t - x) / 2.0);
}

/// Inverse of phi(v) = log((1+v)/(1-v)) - v on (-1, 1), by bisection-seeded Newton.
inline double psi_inverse(double y) {
  if (!std::isfinite(y)) throw DomainError("psi_inverse: non-finite argument");
  if (y == 0.0) return 0.0;
  constexpr double edge = 1.0 - 1e-12;
  const double lo = -edge, hi = edge;
  if (y >= phi_H(hi)) return hi;
  if (y <= phi_H(lo)) return lo;
  // A few bisection steps localize the root before Newton takes over.
  double a = lo, b = hi;
  for (int k = 0; k < 8; ++k) {
    const double mid = 0.5 * (a + b);
    if (phi_H(mid) < y) a = mid;
    else b = mid;
  }
  return numerics::safeguarded_newton(
      [y](double v) {
        // phi'(v) = 2/(1 - v^2) - 1 = (1 + v^2)/(1 - v^2) > 0
        return std::pair{phi_H(v) - y, (1.0 + v * v) / (1.0 - v * v)};
      },
      lo, hi, 0.5 * (a + b));
}

/// t^2 - x^2 - psi(y)^2 for the set containing fH.
inline double implicit_residual_H(const AmbientVector& p) {
  if (p.size() != 3) throw DimensionError("implicit_residual_H: R^3_1 point required");
  const double t = p[0], x = p[1], s = psi_inverse(p[2]);
  return t * t - x * x - s * s;
}

} // namespace mixtype::gallery
