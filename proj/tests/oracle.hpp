// Reference values for the test suites, computed with Boost.Multiprecision
// (200-bit binary floats and exact rationals), independent of MPFR.
#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <random>
#include <vector>

#include "bandlim/evaluator.hpp"
#include "bandlim/signal.hpp"

namespace oracle {

namespace mp = boost::multiprecision;
using F = mp::number<mp::cpp_bin_float<200>>;
using Q = mp::cpp_rational;

inline F pi() { return boost::math::constants::pi<F>(); }

inline Q to_q(const bandlim::Rational& r) { return Q(r.str()); }
inline F to_f(const bandlim::Rational& r) {
  return F(mp::cpp_int(r.numerator().get_str())) / F(mp::cpp_int(r.denominator().get_str()));
}
// Interval endpoints are dyadic with at most ~200 significant bits, so this
// conversion is exact for the precisions used in the tests.
inline F to_f(const bandlim::Float& x) { return to_f(x.to_rational()); }

/// v lies in [lo, hi] up to the oracle's own rounding (2^-180 relative).
inline bool encloses(const bandlim::Interval& iv, const F& v) {
  F slack = ldexp(F(1), -180) * (abs(v) > 1 ? F(abs(v)) : F(1));
  return to_f(iv.lo()) <= v + slack && v - slack <= to_f(iv.hi());
}

inline F sinc(const F& x) {
  if (x == 0) return F(1);
  return sin(pi() * x) / (pi() * x);
}

/// sinc'(x) = (pi x cos(pi x) - sin(pi x)) / (pi x^2); zero at x = 0.
inline F sinc_d1(const F& x) {
  if (x == 0) return F(0);
  return (pi() * x * cos(pi() * x) - sin(pi() * x)) / (pi() * x * x);
}

inline F signal(std::int64_t lo, const std::vector<bandlim::Rational>& c, const F& t, int d = 0) {
  F s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    F x = t - F(lo + static_cast<std::int64_t>(i));
    s += to_f(c[i]) * (d == 0 ? sinc(x) : sinc_d1(x));
  }
  return s;
}

/// -(1/pi) sum_{k=1}^N 1 / (k - 1/2).
inline F c_of_n(long N) {
  F s = 0;
  for (long k = 1; k <= N; ++k) s += F(1) / (F(k) - F(0.5));
  return -s / pi();
}

/// Closed expression over integers, pi, + - * /, integer powers and abs.
inline F eval(const bandlim::Expr& e) {
  using bandlim::Op;
  switch (e.op) {
    case Op::Int: return F(mp::cpp_int(e.value.get_str()));
    case Op::Pi: return pi();
    case Op::Neg: return -eval(*e.kids[0]);
    case Op::Abs: return abs(eval(*e.kids[0]));
    case Op::Add: return eval(*e.kids[0]) + eval(*e.kids[1]);
    case Op::Sub: return eval(*e.kids[0]) - eval(*e.kids[1]);
    case Op::Mul: return eval(*e.kids[0]) * eval(*e.kids[1]);
    case Op::Div: return eval(*e.kids[0]) / eval(*e.kids[1]);
    case Op::Pow: {
      F b = eval(*e.kids[0]);
      long n = e.kids[1]->value.get_si();
      F r = 1;
      for (long i = 0; i < n; ++i) r *= b;
      return r;
    }
    default: throw std::logic_error("oracle: unsupported operator");
  }
}

inline bandlim::Rational random_rational(std::mt19937_64& rng, long num = 40, long den = 12) {
  std::uniform_int_distribution<long> a(-num, num), b(1, den);
  return bandlim::Rational(a(rng), b(rng));
}

inline std::vector<bandlim::Rational> random_coeffs(std::mt19937_64& rng, std::size_t n) {
  std::vector<bandlim::Rational> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(random_rational(rng));
  return c;
}

}  // namespace oracle
