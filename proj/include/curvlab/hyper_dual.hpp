#pragma once

#include <cmath>
#include <ostream>

namespace curvlab {

/// Hyper-dual number f + a e1 + b e2 + c e1e2 with e1^2 = e2^2 = 0.
///
/// Seeding x + e1 u + e2 v and evaluating a smooth function gives the value,
/// the directional derivatives along u and v, and the exact mixed second
/// derivative d^2 f(u, v) in the e1e2 slot. No truncation error.
struct HyperDual {
  double f = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double e12 = 0.0;

  constexpr HyperDual() = default;
  constexpr HyperDual(double value) : f(value) {}  // NOLINT: implicit on purpose
  constexpr HyperDual(double value, double d1, double d2, double d12)
      : f(value), e1(d1), e2(d2), e12(d12) {}

  constexpr HyperDual& operator+=(const HyperDual& o) {
    f += o.f; e1 += o.e1; e2 += o.e2; e12 += o.e12;
    return *this;
  }
  constexpr HyperDual& operator-=(const HyperDual& o) {
    f -= o.f; e1 -= o.e1; e2 -= o.e2; e12 -= o.e12;
    return *this;
  }
  constexpr HyperDual& operator*=(const HyperDual& o) {
    *this = HyperDual{f * o.f, f * o.e1 + e1 * o.f, f * o.e2 + e2 * o.f,
                      f * o.e12 + e1 * o.e2 + e2 * o.e1 + e12 * o.f};
    return *this;
  }
  constexpr HyperDual& operator/=(const HyperDual& o);
};

constexpr HyperDual operator-(const HyperDual& a) { return {-a.f, -a.e1, -a.e2, -a.e12}; }
constexpr HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
constexpr HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
constexpr HyperDual operator*(HyperDual a, const HyperDual& b) { return a *= b; }
constexpr HyperDual operator+(HyperDual a, double b) { a.f += b; return a; }
constexpr HyperDual operator+(double a, HyperDual b) { b.f += a; return b; }
constexpr HyperDual operator-(HyperDual a, double b) { a.f -= b; return a; }
constexpr HyperDual operator-(double a, const HyperDual& b) { return HyperDual{a} - b; }
constexpr HyperDual operator*(const HyperDual& a, double b) { return {a.f * b, a.e1 * b, a.e2 * b, a.e12 * b}; }
constexpr HyperDual operator*(double a, const HyperDual& b) { return b * a; }
constexpr HyperDual operator/(const HyperDual& a, double b) { return a * (1.0 / b); }

// Chain rule for a scalar function with value v, first derivative d1 and second d2.
constexpr HyperDual lift(const HyperDual& x, double v, double d1, double d2) {
  return {v, d1 * x.e1, d1 * x.e2, d1 * x.e12 + d2 * x.e1 * x.e2};
}

constexpr HyperDual reciprocal(const HyperDual& x) {
  const double inv = 1.0 / x.f;
  return lift(x, inv, -inv * inv, 2.0 * inv * inv * inv);
}

constexpr HyperDual& HyperDual::operator/=(const HyperDual& o) {
  return *this *= reciprocal(o);
}
constexpr HyperDual operator/(HyperDual a, const HyperDual& b) { return a /= b; }
constexpr HyperDual operator/(double a, const HyperDual& b) { return a * reciprocal(b); }

inline HyperDual sin(const HyperDual& x) {
  const double s = std::sin(x.f), c = std::cos(x.f);
  return lift(x, s, c, -s);
}
inline HyperDual cos(const HyperDual& x) {
  const double s = std::sin(x.f), c = std::cos(x.f);
  return lift(x, c, -s, -c);
}
inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.f);
  return lift(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) {
  return lift(x, std::log(x.f), 1.0 / x.f, -1.0 / (x.f * x.f));
}
inline HyperDual sqrt(const HyperDual& x) {
  const double r = std::sqrt(x.f);
  return lift(x, r, 0.5 / r, -0.25 / (r * x.f));
}
inline HyperDual pow(const HyperDual& x, double p) {
  const double v = std::pow(x.f, p);
  return lift(x, v, p * std::pow(x.f, p - 1.0), p * (p - 1.0) * std::pow(x.f, p - 2.0));
}

inline double value_of(double x) { return x; }
inline double value_of(const HyperDual& x) { return x.f; }

inline std::ostream& operator<<(std::ostream& os, const HyperDual& x) {
  return os << '(' << x.f << ", " << x.e1 << ", " << x.e2 << ", " << x.e12 << ')';
}

}  // namespace curvlab
