// SPDX-License-Identifier: Apache-2.0
#pragma once

// Double-precision intervals with outward rounding by one ulp per
// operation. Used by the quadrature and branch-and-bound kernels, where
// MPFR would be too slow; the arbitrary-precision paths use Interval.

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandlim {

struct FI {
  double lo = 0.0;
  double hi = 0.0;

  FI() = default;
  constexpr FI(double v) : lo(v), hi(v) {}  // NOLINT: exact doubles convert implicitly
  constexpr FI(double l, double h) : lo(l), hi(h) {}

  static FI entire() { return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()}; }

  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  double mig() const {
    if (lo > 0) return lo;
    if (hi < 0) return -hi;
    return 0.0;
  }
  double mid() const { return 0.5 * lo + 0.5 * hi; }
  double width() const { return down_up_sub(hi, lo); }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool contains(double v) const { return lo <= v && v <= hi; }

  static double dn(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
  static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

 private:
  static double down_up_sub(double a, double b) { return up(a - b); }
};

inline FI operator-(const FI& a) { return {-a.hi, -a.lo}; }

inline FI operator+(const FI& a, const FI& b) { return {FI::dn(a.lo + b.lo), FI::up(a.hi + b.hi)}; }

inline FI operator-(const FI& a, const FI& b) { return {FI::dn(a.lo - b.hi), FI::up(a.hi - b.lo)}; }

inline FI operator*(const FI& a, const FI& b) {
  if (a.lo >= 0 && b.lo >= 0) return {FI::dn(a.lo * b.lo), FI::up(a.hi * b.hi)};
  double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {FI::dn(std::min({p1, p2, p3, p4})), FI::up(std::max({p1, p2, p3, p4}))};
}

inline FI operator/(const FI& a, const FI& b) {
  if (b.contains_zero()) return FI::entire();
  double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  return {FI::dn(std::min({p1, p2, p3, p4})), FI::up(std::max({p1, p2, p3, p4}))};
}

inline FI& operator+=(FI& a, const FI& b) { return a = a + b; }
inline FI& operator*=(FI& a, const FI& b) { return a = a * b; }

inline FI fi_abs(const FI& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {0.0, a.mag()};
}

inline FI fi_hull(const FI& a, const FI& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

inline FI fi_sqr(const FI& a) {
  FI b = fi_abs(a);
  return {FI::dn(b.lo * b.lo), FI::up(b.hi * b.hi)};
}

inline FI fi_sqrt(const FI& a) { return {a.lo <= 0 ? 0.0 : FI::dn(std::sqrt(a.lo)), FI::up(std::sqrt(std::max(a.hi, 0.0)))}; }

/// Upper bound of a nonnegative double raised to a positive power p
/// (pow is not correctly rounded; two ulps of slack are added).
inline double pow_up(double x, double p) {
  if (x <= 0) return 0.0;
  double r = std::pow(x, p);
  return FI::up(FI::up(FI::up(r)));
}

inline double pow_dn(double x, double p) {
  if (x <= 0) return 0.0;
  double r = std::pow(x, p);
  return std::max(0.0, FI::dn(FI::dn(FI::dn(r))));
}

/// pi as an enclosing double interval.
inline constexpr FI kPiFI{3.141592653589793, 3.1415926535897936};

/// sin(pi x) and cos(pi x) for |x| <= 1/2 via Taylor series with an
/// explicit remainder bound.
inline void fi_sincospi_reduced(const FI& x, FI& s, FI& c) {
  FI y = kPiFI * x;
  FI y2 = y * y;
  // sin: y - y^3/3! + ...; cos: 1 - y^2/2! + ...  (|y| <= pi/2 + tiny)
  FI ts = y, tc = FI(1.0);
  FI ss = y, cc = FI(1.0);
  for (int j = 1; j <= 12; ++j) {
    ts = -(ts * y2) / FI(static_cast<double>((2 * j) * (2 * j + 1)));
    tc = -(tc * y2) / FI(static_cast<double>((2 * j - 1) * (2 * j)));
    ss += ts;
    cc += tc;
  }
  // next terms bounded by (pi/2)^25/25! and (pi/2)^26/26!, both < 1e-20
  constexpr double rem = 1e-20;
  s = FI(FI::dn(ss.lo - rem), FI::up(ss.hi + rem));
  c = FI(FI::dn(cc.lo - rem), FI::up(cc.hi + rem));
  s.lo = std::max(s.lo, -1.0);
  s.hi = std::min(s.hi, 1.0);
  c.lo = std::max(c.lo, -1.0);
  c.hi = std::min(c.hi, 1.0);
}

/// sin(pi t), cos(pi t) at a double point t.
inline void fi_sincospi(double t, FI& s, FI& c) {
  double n = std::nearbyint(t);
  double x = t - n;  // exact for doubles
  fi_sincospi_reduced(FI(x), s, c);
  if (std::fmod(std::fabs(n), 2.0) == 1.0) {
    s = -s;
    c = -c;
  }
}

}  // namespace bandlim
