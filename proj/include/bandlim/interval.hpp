// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "bandlim/rational.hpp"

namespace bandlim {

/// Owning wrapper over an MPFR number. Every finite value is a dyadic
/// rational m * 2^e.
class Float {
 public:
  explicit Float(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Float(const Float& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Float(Float&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Float& operator=(const Float& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Float& operator=(Float&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Float() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  /// Exact conversion to a rational (the value is dyadic).
  Rational to_rational() const;
  /// Exact rendering "m*2^e" (or an integer when e >= 0).
  std::string exact_str() const;
  /// Advisory decimal rendering with `digits` significant digits.
  std::string decimal_str(int digits = 12) const;
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with dyadic endpoints. All operations round
/// outward, so the result contains every value the exact operation could
/// produce from points of the operands.
class Interval {
 public:
  Interval() : lo_(64), hi_(64) {}
  Interval(Float lo, Float hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  static Interval from_rational(const Rational& q, mpfr_prec_t prec);
  static Interval from_int(long v, mpfr_prec_t prec = 64);
  static Interval from_double(double v) ;
  /// Hull of two rationals.
  static Interval span(const Rational& a, const Rational& b, mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);
  static Interval ln2(mpfr_prec_t prec);

  const Float& lo() const { return lo_; }
  const Float& hi() const { return hi_; }
  mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

  bool contains(const Rational& q) const;
  bool contains(const Interval& o) const;
  bool contains_zero() const;
  bool excludes_zero() const { return !contains_zero(); }
  bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
  bool intersects(const Interval& o) const;

  /// Width rounded up.
  Float width() const;
  /// log2 of the width, or a very negative number for a point.
  double log2_width() const;
  /// Midpoint (exact) and radius (rounded up).
  Float mid() const;
  Float rad() const;
  /// Upper bound of |x| and lower bound of |x|.
  Float mag() const;
  Float mig() const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Rational& q);
  friend Interval operator+(const Interval& a, const Rational& q);

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  Interval abs() const;
  Interval sqr() const;
  Interval sqrt() const;
  Interval exp() const;
  Interval log() const;
  Interval sin() const;
  Interval cos() const;
  /// x^e for an integer exponent.
  Interval pow_int(long e) const;
  /// x^p for x >= 0 and rational p > 0.
  Interval pow_rational(const Rational& p) const;
  /// Widens both endpoints outward by `r` (r >= 0).
  Interval inflate(const Float& r) const;
  Interval hull(const Interval& o) const;
  /// Copy with both endpoints re-rounded outward to `prec` bits.
  Interval round_to(mpfr_prec_t prec) const;

  /// "[lo, hi]" with exact dyadic endpoints.
  std::string exact_str() const;
  /// "[lo, hi]" in decimal (advisory).
  std::string decimal_str(int digits = 12) const;

 private:
  Float lo_, hi_;
};

/// Sets `out` to op(a, b) with rounding `rnd`, using the precision of `out`.
inline void round_sum(Float& out, const Float& a, const Float& b, mpfr_rnd_t rnd) {
  mpfr_add(out.get(), a.get(), b.get(), rnd);
}

}  // namespace bandlim
