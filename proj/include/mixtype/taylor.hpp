#pragma once

// Truncated second-order Taylor arithmetic in two variables.
//
// A Taylor2 carries a value together with its first and second partial derivatives
// with respect to two independent variables (x, y). Arithmetic and elementary
// functions propagate these exactly by the chain and product rules, so composing
// closed-form expressions yields exact 2-jets without symbolic differentiation.

#include <cmath>
#include <ostream>
#include <type_traits>

#include "mixtype/errors.hpp"

namespace mixtype {

template <class T>
struct Taylor2 {
  T f{};   // value
  T fx{};  // d/dx
  T fy{};  // d/dy
  T fxx{}; // d2/dx2
  T fxy{}; // d2/dxdy
  T fyy{}; // d2/dy2

  constexpr Taylor2() = default;
  constexpr Taylor2(T value) : f(value) {} // NOLINT: constants promote implicitly
  constexpr Taylor2(T value, T dx, T dy, T dxx, T dxy, T dyy)
      : f(value), fx(dx), fy(dy), fxx(dxx), fxy(dxy), fyy(dyy) {}

  static constexpr Taylor2 constant(T value) { return Taylor2(value); }
  static constexpr Taylor2 variable_x(T value) { return {value, T(1), T(0), T(0), T(0), T(0)}; }
  static constexpr Taylor2 variable_y(T value) { return {value, T(0), T(1), T(0), T(0), T(0)}; }

  Taylor2& operator+=(const Taylor2& o) {
    f += o.f; fx += o.fx; fy += o.fy; fxx += o.fxx; fxy += o.fxy; fyy += o.fyy;
    return *this;
  }
  Taylor2& operator-=(const Taylor2& o) {
    f -= o.f; fx -= o.fx; fy -= o.fy; fxx -= o.fxx; fxy -= o.fxy; fyy -= o.fyy;
    return *this;
  }
  Taylor2& operator*=(const Taylor2& o) { return *this = *this * o; }
  Taylor2& operator/=(const Taylor2& o) { return *this = *this / o; }

  friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
  friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
  friend Taylor2 operator-(const Taylor2& a) { return {-a.f, -a.fx, -a.fy, -a.fxx, -a.fxy, -a.fyy}; }
  friend Taylor2 operator+(const Taylor2& a) { return a; }

  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
    return {a.f * b.f,
            a.fx * b.f + a.f * b.fx,
            a.fy * b.f + a.f * b.fy,
            a.fxx * b.f + T(2) * a.fx * b.fx + a.f * b.fxx,
            a.fxy * b.f + a.fx * b.fy + a.fy * b.fx + a.f * b.fxy,
            a.fyy * b.f + T(2) * a.fy * b.fy + a.f * b.fyy};
  }

  friend Taylor2 operator/(const Taylor2& a, const Taylor2& b) { return a * reciprocal(b); }

  friend Taylor2 reciprocal(const Taylor2& b) {
    const T inv = T(1) / b.f;
    return chain(b, inv, -inv * inv, T(2) * inv * inv * inv);
  }

  // phi(a) given phi, phi', phi'' evaluated at a.f.
  friend Taylor2 chain(const Taylor2& a, T d0, T d1, T d2) {
    return {d0,
            d1 * a.fx,
            d1 * a.fy,
            d2 * a.fx * a.fx + d1 * a.fxx,
            d2 * a.fx * a.fy + d1 * a.fxy,
            d2 * a.fy * a.fy + d1 * a.fyy};
  }

  friend std::ostream& operator<<(std::ostream& os, const Taylor2& a) {
    return os << "{" << a.f << "; " << a.fx << ", " << a.fy << "; " << a.fxx << ", " << a.fxy
              << ", " << a.fyy << "}";
  }
};

// Mixed operations with plain scalars.
template <class T> Taylor2<T> operator+(const Taylor2<T>& a, T b) { return a + Taylor2<T>(b); }
template <class T> Taylor2<T> operator+(T a, const Taylor2<T>& b) { return Taylor2<T>(a) + b; }
template <class T> Taylor2<T> operator-(const Taylor2<T>& a, T b) { return a - Taylor2<T>(b); }
template <class T> Taylor2<T> operator-(T a, const Taylor2<T>& b) { return Taylor2<T>(a) - b; }
template <class T> Taylor2<T> operator*(const Taylor2<T>& a, T b) {
  return {a.f * b, a.fx * b, a.fy * b, a.fxx * b, a.fxy * b, a.fyy * b};
}
template <class T> Taylor2<T> operator*(T a, const Taylor2<T>& b) { return b * a; }
template <class T> Taylor2<T> operator/(const Taylor2<T>& a, T b) { return a * (T(1) / b); }
template <class T> Taylor2<T> operator/(T a, const Taylor2<T>& b) { return a * reciprocal(b); }

template <class T> Taylor2<T> sin(const Taylor2<T>& a) {
  const T s = std::sin(a.f), c = std::cos(a.f);
  return chain(a, s, c, -s);
}
template <class T> Taylor2<T> cos(const Taylor2<T>& a) {
  const T s = std::sin(a.f), c = std::cos(a.f);
  return chain(a, c, -s, -c);
}
template <class T> Taylor2<T> tan(const Taylor2<T>& a) {
  const T t = std::tan(a.f);
  const T d1 = T(1) + t * t;
  return chain(a, t, d1, T(2) * t * d1);
}
template <class T> Taylor2<T> sinh(const Taylor2<T>& a) {
  const T s = std::sinh(a.f), c = std::cosh(a.f);
  return chain(a, s, c, s);
}
template <class T> Taylor2<T> cosh(const Taylor2<T>& a) {
  const T s = std::sinh(a.f), c = std::cosh(a.f);
  return chain(a, c, s, c);
}
template <class T> Taylor2<T> tanh(const Taylor2<T>& a) {
  const T t = std::tanh(a.f);
  const T d1 = T(1) - t * t;
  return chain(a, t, d1, T(-2) * t * d1);
}
template <class T> Taylor2<T> sech(const Taylor2<T>& a) {
  const T s = T(1) / std::cosh(a.f), t = std::tanh(a.f);
  return chain(a, s, -s * t, s * (t * t - s * s));
}
template <class T> Taylor2<T> exp(const Taylor2<T>& a) {
  const T e = std::exp(a.f);
  return chain(a, e, e, e);
}
template <class T> Taylor2<T> log(const Taylor2<T>& a) {
  if (!(a.f > T(0))) throw DomainError("log of non-positive value");
  const T inv = T(1) / a.f;
  return chain(a, std::log(a.f), inv, -inv * inv);
}
template <class T> Taylor2<T> sqrt(const Taylor2<T>& a) {
  if (!(a.f > T(0))) throw DomainError("sqrt jet requires a positive value");
  const T r = std::sqrt(a.f);
  return chain(a, r, T(0.5) / r, T(-0.25) / (r * a.f));
}
template <class T> Taylor2<T> atan(const Taylor2<T>& a) {
  const T q = T(1) / (T(1) + a.f * a.f);
  return chain(a, std::atan(a.f), q, T(-2) * a.f * q * q);
}
template <class T> Taylor2<T> pow(const Taylor2<T>& a, std::type_identity_t<T> p) {
  if (p == T(0)) return Taylor2<T>(T(1));
  if (p == T(1)) return a;
  if (p == T(2)) return a * a;
  if (p == T(3)) return a * a * a;
  if (!(a.f > T(0)) && std::floor(p) != p) throw DomainError("non-integer power of non-positive value");
  const T v = std::pow(a.f, p);
  const T v1 = p * std::pow(a.f, p - T(1));
  const T v2 = p * (p - T(1)) * std::pow(a.f, p - T(2));
  return chain(a, v, v1, v2);
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

using ScalarJet2 = Taylor2<double>;

} // namespace mixtype
