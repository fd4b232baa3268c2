// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "bandlim/errors.hpp"

namespace bandlim {

using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}                                // NOLINT
  Rational(int v) : q_(static_cast<long>(v)) {}              // NOLINT
  Rational(std::int64_t v, std::int64_t d) : q_(BigInt(static_cast<long>(v)), BigInt(static_cast<long>(d))) {
    if (d == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& n, const BigInt& d) : q_(n, d) {
    if (d == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "a", "-a" or "a/b".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  /// Numerator magnitude and denominator, as in the (sign, num, den) triple.
  BigInt numerator_abs() const { return ::abs(q_.get_num()); }
  const BigInt& numerator() const { return q_.get_num(); }
  const BigInt& denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  mpq_srcptr get_mpq_t() const { return q_.get_mpq_t(); }

  /// Bits needed for numerator plus denominator; a size measure.
  std::size_t bit_size() const {
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
  }

  /// Is the denominator a power of two?
  bool is_dyadic() const {
    const auto& d = q_.get_den();
    return mpz_popcount(d.get_mpz_t()) == 1;
  }

  std::optional<std::int64_t> to_int64() const {
    if (!is_integer() || !q_.get_num().fits_slong_p()) return std::nullopt;
    return static_cast<std::int64_t>(q_.get_num().get_si());
  }

  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    return Rational(mpq_class(1 / q_));
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Integer power; negative exponents invert.
  Rational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
  }

  std::string str() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

/// Four-function exact arithmetic on rationals.
enum class ArithOp { Add, Sub, Mul, Div };

inline Rational rational_arith(const Rational& a, const Rational& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return {};
}

}  // namespace bandlim
