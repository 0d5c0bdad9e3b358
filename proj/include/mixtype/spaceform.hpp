#pragma once

// Ambient metric arithmetic for the three Lorentzian space forms:
//   Minkowski3     R^3_1, signature (-,+,+), coordinates (t,x,y)
//   DeSitter3      quadric <p,p> = +1 in R^4_1, signature (-,+,+,+)
//   AntiDeSitter3  quadric <p,p> = -1 in R^4_2, signature (-,-,+,+)

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mixtype/errors.hpp"

namespace mixtype {

inline constexpr std::size_t kMaxAmbientDim = 4;

/// Fixed-capacity vector of ambient coordinates (length 3 or 4).
class AmbientVector {
public:
  AmbientVector() = default;

  explicit AmbientVector(std::size_t dim) : dim_(dim) {
    if (dim > kMaxAmbientDim) throw DimensionError("ambient dimension exceeds 4");
  }

  AmbientVector(std::initializer_list<double> values) : dim_(values.size()) {
    if (dim_ > kMaxAmbientDim) throw DimensionError("ambient dimension exceeds 4");
    std::copy(values.begin(), values.end(), data_.begin());
  }

  static AmbientVector from_span(std::span<const double> values) {
    AmbientVector out(values.size());
    std::copy(values.begin(), values.end(), out.data_.begin());
    return out;
  }

  static AmbientVector zero(std::size_t dim) { return AmbientVector(dim); }

  std::size_t size() const noexcept { return dim_; }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<const double> components() const noexcept { return {data_.data(), dim_}; }
  std::span<double> components() noexcept { return {data_.data(), dim_}; }

  AmbientVector& operator+=(const AmbientVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  AmbientVector& operator-=(const AmbientVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  AmbientVector& operator*=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] *= s;
    return *this;
  }
  AmbientVector& operator/=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] /= s;
    return *this;
  }

  friend AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
  friend AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
  friend AmbientVector operator-(AmbientVector a) { return a *= -1.0; }
  friend AmbientVector operator*(AmbientVector a, double s) { return a *= s; }
  friend AmbientVector operator*(double s, AmbientVector a) { return a *= s; }
  friend AmbientVector operator/(AmbientVector a, double s) { return a /= s; }

  friend bool operator==(const AmbientVector& a, const AmbientVector& b) {
    if (a.dim_ != b.dim_) return false;
    return std::equal(a.data_.begin(), a.data_.begin() + a.dim_, b.data_.begin());
  }

  double euclidean_norm_sq() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += data_[i] * data_[i];
    return s;
  }
  double euclidean_norm() const noexcept { return std::sqrt(euclidean_norm_sq()); }

  bool is_finite() const noexcept {
    return std::all_of(data_.begin(), data_.begin() + dim_,
                       [](double x) { return std::isfinite(x); });
  }

private:
  void check_same(const AmbientVector& o) const {
    if (o.dim_ != dim_) throw DimensionError("ambient vector dimension mismatch");
  }

  std::array<double, kMaxAmbientDim> data_{};
  std::size_t dim_ = 0;
};

enum class SpaceKind { Minkowski3, DeSitter3, AntiDeSitter3 };

struct AmbientSpace {
  SpaceKind kind = SpaceKind::Minkowski3;
  std::size_t ambient_dim = 3;
  std::array<int, kMaxAmbientDim> signature{-1, 1, 1, 0};
  std::optional<double> quadric_value;

  static AmbientSpace minkowski3() { return {SpaceKind::Minkowski3, 3, {-1, 1, 1, 0}, std::nullopt}; }
  static AmbientSpace de_sitter3() { return {SpaceKind::DeSitter3, 4, {-1, 1, 1, 1}, 1.0}; }
  static AmbientSpace anti_de_sitter3() { return {SpaceKind::AntiDeSitter3, 4, {-1, -1, 1, 1}, -1.0}; }

  bool is_curved() const noexcept { return quadric_value.has_value(); }

  int negative_entries() const noexcept {
    int n = 0;
    for (std::size_t i = 0; i < ambient_dim; ++i) n += signature[i] < 0 ? 1 : 0;
    return n;
  }

  std::string_view name() const noexcept {
    switch (kind) {
    case SpaceKind::Minkowski3: return "Minkowski3";
    case SpaceKind::DeSitter3: return "DeSitter3";
    case SpaceKind::AntiDeSitter3: return "AntiDeSitter3";
    }
    return "?";
  }
};

inline double inner(const AmbientSpace& space, const AmbientVector& v, const AmbientVector& w) {
  if (v.size() != space.ambient_dim || w.size() != space.ambient_dim)
    throw DimensionError("inner: vector length does not match ambient dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < space.ambient_dim; ++i) s += space.signature[i] * v[i] * w[i];
  return s;
}

inline double norm_abs(const AmbientSpace& space, const AmbientVector& v) {
  return std::sqrt(std::abs(inner(space, v, v)));
}

// Residual <p,p> - quadric_value; zero for Minkowski3 by convention.
inline double quadric_residual(const AmbientSpace& space, const AmbientVector& p) {
  if (!space.quadric_value) return 0.0;
  return inner(space, p, p) - *space.quadric_value;
}

enum class Causality { spacelike, timelike, lightlike };

inline std::string_view to_string(Causality c) noexcept {
  switch (c) {
  case Causality::spacelike: return "spacelike";
  case Causality::timelike: return "timelike";
  case Causality::lightlike: return "lightlike";
  }
  return "?";
}

struct CausalCharacter {
  Causality kind;
  double sq; // raw <v,v>
};

inline CausalCharacter causal_character(const AmbientSpace& space, const AmbientVector& v, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("causal_character: tol must be positive");
  const double sq = inner(space, v, v);
  if (std::abs(sq) <= tol) return {Causality::lightlike, sq};
  return {sq > 0.0 ? Causality::spacelike : Causality::timelike, sq};
}

// Default tolerance: 1e-10 relative to max(1, |v|^2_euclidean).
inline CausalCharacter causal_character(const AmbientSpace& space, const AmbientVector& v) {
  return causal_character(space, v, 1e-10 * std::max(1.0, v.euclidean_norm_sq()));
}

namespace detail {

inline double det3(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline double det3(std::array<std::array<double, 3>, 3> const& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Cofactors C_i with det[a;b;c;x] = sum_i x_i C_i.
inline std::array<double, 4> cofactors4(const AmbientVector& a, const AmbientVector& b,
                                        const AmbientVector& c) {
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<std::array<double, 3>, 3> m{};
    std::size_t col = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == i) continue;
      m[0][col] = a[j];
      m[1][col] = b[j];
      m[2][col] = c[j];
      ++col;
    }
    // Expansion along the last row: sign (-1)^(3+i).
    out[i] = ((3 + i) % 2 == 0 ? 1.0 : -1.0) * det3(m);
  }
  return out;
}

inline bool negligible(double cof_norm, double scale) {
  return !(cof_norm > 1e-14 * scale);
}

} // namespace detail

/// Metric cross product in R^3_1 on the branch that is real analytic in (v, w).
///
/// Returns n = -eta * (v x_E w) where x_E is the Euclidean cross product and eta the
/// signature. It is metric-orthogonal to v and w and satisfies
/// <n,n> = -<v,v><w,w> + <v,w>^2. For a graph (f_x,1,0) x (f_y,0,1) it gives (1,f_x,f_y).
/// Its orientation det[v;w;n] equals the Gram determinant, so it agrees with the
/// oriented product lorentz_cross3 on space-like pairs and differs by sign on time-like ones.
inline AmbientVector metric_cross3(const AmbientVector& v, const AmbientVector& w) {
  if (v.size() != 3 || w.size() != 3) throw DimensionError("metric_cross3: R^3_1 vectors required");
  const double c0 = v[1] * w[2] - v[2] * w[1];
  const double c1 = v[2] * w[0] - v[0] * w[2];
  const double c2 = v[0] * w[1] - v[1] * w[0];
  if (detail::negligible(std::sqrt(c0 * c0 + c1 * c1 + c2 * c2), v.euclidean_norm() * w.euclidean_norm()))
    return AmbientVector::zero(3);
  return {c0, -c1, -c2};
}

/// Oriented vector product in R^3_1: orthogonal to v and w, with squared norm
/// -<v,v><w,w> + <v,w>^2, and det[v;w;v x w] > 0 whenever {v, w, v x w} is a basis.
/// Returns the zero vector for dependent input.
inline AmbientVector lorentz_cross3(const AmbientVector& v, const AmbientVector& w) {
  AmbientVector n = metric_cross3(v, w);
  if (detail::det3(v, w, n) < 0.0) n *= -1.0;
  return n;
}

/// Metric triple product in a 4-dimensional host, analytic branch (see metric_cross3).
/// Orthogonal to a, b, c with <w,w> = (-1)^s Gram(a,b,c), s = number of negative
/// signature entries. For (pos, f_u, f_v) on either curved space form this yields <w,w> = -beta.
inline AmbientVector metric_cross4(const AmbientSpace& space, const AmbientVector& a,
                                   const AmbientVector& b, const AmbientVector& c) {
  if (space.ambient_dim != 4) throw DimensionError("metric_cross4: 4-dimensional host required");
  if (a.size() != 4 || b.size() != 4 || c.size() != 4)
    throw DimensionError("metric_cross4: vector length must be 4");
  const auto cof = detail::cofactors4(a, b, c);
  double cn = 0.0;
  for (double x : cof) cn += x * x;
  if (detail::negligible(std::sqrt(cn), a.euclidean_norm() * b.euclidean_norm() * c.euclidean_norm()))
    return AmbientVector::zero(4);
  AmbientVector out(4);
  for (std::size_t i = 0; i < 4; ++i) out[i] = -space.signature[i] * cof[i];
  return out;
}

/// Oriented triple product: metric_cross4 with the sign fixed so det[a;b;c;w] > 0
/// for independent input with non-null result.
inline AmbientVector triple_cross4(const AmbientSpace& space, const AmbientVector& a,
                                   const AmbientVector& b, const AmbientVector& c) {
  AmbientVector w = metric_cross4(space, a, b, c);
  const auto cof = detail::cofactors4(a, b, c);
  double det = 0.0;
  for (std::size_t i = 0; i < 4; ++i) det += w[i] * cof[i];
  if (det < 0.0) w *= -1.0;
  return w;
}

} // namespace mixtype
