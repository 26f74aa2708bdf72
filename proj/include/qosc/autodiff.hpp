#pragma once

#include <cmath>

namespace qosc {

// Scalar carrying value and first two time derivatives.  The derived-parameter
// chain needs d/dt and d^2/dt^2 of composite expressions (mass ratios, mixing
// frequencies); propagating them alongside the value keeps those derivatives
// exact instead of finite-differenced.
struct D2 {
  double v = 0;   // value
  double d1 = 0;  // first derivative
  double d2 = 0;  // second derivative

  constexpr D2() = default;
  constexpr D2(double value) : v(value) {}
  constexpr D2(double value, double first, double second) : v(value), d1(first), d2(second) {}
};

constexpr D2 operator+(const D2& a, const D2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr D2 operator-(const D2& a, const D2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr D2 operator-(const D2& a) { return {-a.v, -a.d1, -a.d2}; }

constexpr D2 operator*(const D2& a, const D2& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2};
}

inline D2 inv(const D2& a) {
  double i = 1.0 / a.v;
  double i2 = i * i;
  return {i, -a.d1 * i2, (2 * a.d1 * a.d1 * i - a.d2) * i2};
}

inline D2 operator/(const D2& a, const D2& b) { return a * inv(b); }

inline D2 sqrt(const D2& a) {
  double s = std::sqrt(a.v);
  double d1 = a.d1 / (2 * s);
  return {s, d1, a.d2 / (2 * s) - d1 * d1 / s};
}

inline D2 sin(const D2& a) {
  double s = std::sin(a.v), c = std::cos(a.v);
  return {s, c * a.d1, -s * a.d1 * a.d1 + c * a.d2};
}

inline D2 cos(const D2& a) {
  double s = std::sin(a.v), c = std::cos(a.v);
  return {c, -s * a.d1, -c * a.d1 * a.d1 - s * a.d2};
}

inline D2 exp(const D2& a) {
  double e = std::exp(a.v);
  return {e, e * a.d1, e * (a.d1 * a.d1 + a.d2)};
}

inline D2 sq(const D2& a) { return a * a; }

}  // namespace qosc
