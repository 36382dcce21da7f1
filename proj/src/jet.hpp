#pragma once

// Second-order forward-mode jets in two variables: value, gradient and
// Hessian propagated exactly through arithmetic and elementary functions.
// Extended precision, since trace products of unbalanced matrices cancel.

#include <cmath>

namespace curvelab {

using Real = long double;

struct Jet2 {
  Real v = 0;
  Real g[2] = {0, 0};
  Real h[3] = {0, 0, 0};  // h00, h01, h11

  Jet2() = default;
  Jet2(Real value) : v(value) {}  // NOLINT: constants promote implicitly

  static Jet2 variable(Real value, int i) {
    Jet2 j(value);
    j.g[i] = 1;
    return j;
  }
};

// f(u) with f' and f'' evaluated at u.v.
inline Jet2 chain(const Jet2& u, Real f, Real df, Real d2f) {
  Jet2 r;
  r.v = f;
  r.g[0] = df * u.g[0];
  r.g[1] = df * u.g[1];
  r.h[0] = df * u.h[0] + d2f * u.g[0] * u.g[0];
  r.h[1] = df * u.h[1] + d2f * u.g[0] * u.g[1];
  r.h[2] = df * u.h[2] + d2f * u.g[1] * u.g[1];
  return r;
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v + b.v;
  for (int i = 0; i < 2; ++i) r.g[i] = a.g[i] + b.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = a.h[i] + b.h[i];
  return r;
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 r;
  r.v = -a.v;
  for (int i = 0; i < 2; ++i) r.g[i] = -a.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = -a.h[i];
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  r.g[0] = a.g[0] * b.v + a.v * b.g[0];
  r.g[1] = a.g[1] * b.v + a.v * b.g[1];
  r.h[0] = a.h[0] * b.v + 2 * a.g[0] * b.g[0] + a.v * b.h[0];
  r.h[1] = a.h[1] * b.v + a.g[0] * b.g[1] + a.g[1] * b.g[0] + a.v * b.h[1];
  r.h[2] = a.h[2] * b.v + 2 * a.g[1] * b.g[1] + a.v * b.h[2];
  return r;
}

inline Jet2 operator*(Real c, const Jet2& a) {
  Jet2 r;
  r.v = c * a.v;
  for (int i = 0; i < 2; ++i) r.g[i] = c * a.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = c * a.h[i];
  return r;
}

inline Jet2 reciprocal(const Jet2& a) {
  const Real inv = 1 / a.v;
  return chain(a, inv, -inv * inv, 2 * inv * inv * inv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline double reciprocal(double a) { return 1 / a; }
inline long double reciprocal(long double a) { return 1 / a; }

inline Jet2 sqrt(const Jet2& a) {
  const Real s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 log(const Jet2& a) { return chain(a, std::log(a.v), 1 / a.v, -1 / (a.v * a.v)); }
inline Jet2 cosh(const Jet2& a) {
  const Real c = std::cosh(a.v);
  return chain(a, c, std::sinh(a.v), c);
}
inline Jet2 sinh(const Jet2& a) {
  const Real s = std::sinh(a.v);
  return chain(a, s, std::cosh(a.v), s);
}
inline Jet2 abs(const Jet2& a) { return a.v < 0 ? -a : a; }

}  // namespace curvelab
