// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bandlim/real.hpp"

namespace bandlim {

/// Coefficients c_k = scale * base_k on the index window [lo, hi]; zero
/// outside. The base values are either stored or produced on demand by a
/// generator (windows too large to store). Complex coefficients carry a
/// second (imaginary) column.
class Coefficients {
 public:
  using Generator = std::function<Value(std::int64_t)>;

  Coefficients() = default;
  Coefficients(std::int64_t lo, std::vector<Value> re, std::vector<Value> im = {});
  static Coefficients generated(std::int64_t lo, std::int64_t hi, Generator re, Generator im = {});

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  bool empty() const { return hi_ < lo_; }
  std::int64_t size() const { return empty() ? 0 : hi_ - lo_ + 1; }
  /// Half-width of the symmetric window {-L, ..., L} containing [lo, hi].
  std::int64_t half_width() const;
  bool is_complex() const { return complex_; }
  bool stored() const { return !gen_re_; }

  const Value& scale() const { return scale_; }
  void set_scale(Value s) { scale_ = std::move(s); }
  bool scale_is_one() const;

  /// Base value at k (zero outside the window).
  Value base_re(std::int64_t k) const;
  Value base_im(std::int64_t k) const;
  /// Effective coefficient scale * base.
  Value re(std::int64_t k, mpfr_prec_t prec = 128) const;
  Value im(std::int64_t k, mpfr_prec_t prec = 128) const;

  /// Calls fn(k, base_re, base_im_or_null) for every k in the window.
  void for_each(const std::function<void(std::int64_t, const Value&, const Value*)>& fn) const;

  /// True when every base value is an exact rational (stored windows only;
  /// generated windows report the generator's declared exactness).
  bool base_exact() const;
  void declare_exact(bool e) { declared_exact_ = e; }

  /// Drops the imaginary column when it is identically zero, and trims
  /// exact zeros at both ends of stored windows.
  Coefficients normalized() const;

  /// Coefficient-exact equality on the symmetric window (zero padding).
  friend bool operator==(const Coefficients& a, const Coefficients& b);

 private:
  std::int64_t lo_ = 0;
  std::int64_t hi_ = -1;
  bool complex_ = false;
  std::vector<Value> re_, im_;
  Generator gen_re_, gen_im_;
  bool declared_exact_ = false;
  Value scale_ = Rational(1);
};

/// f(z) = sum_k c_k sinc(z - k).
struct ElementarySignal {
  Coefficients c;
  friend bool operator==(const ElementarySignal& a, const ElementarySignal& b) { return a.c == b.c; }
};

/// x(k) = c_k.
struct ElementarySequence {
  Coefficients c;
  friend bool operator==(const ElementarySequence& a, const ElementarySequence& b) { return a.c == b.c; }
};

using Complex = std::pair<Interval, Interval>;

/// Signal with rational coefficients given as (lo, values).
ElementarySignal make_signal(std::int64_t lo, const std::vector<Rational>& values);
ElementarySequence make_sequence(std::int64_t lo, const std::vector<Rational>& values);

/// d-th derivative of sinc over an interval argument. The series with an
/// explicit remainder is used on |x| < 1/4, the closed form elsewhere.
Interval sinc(const Interval& x, int d = 0);

/// Enclosures of Re f(t) and Im f(t) with widths <= 2^-M.
Complex eval_signal(const ElementarySignal& f, const Rational& t, int M);
Complex eval_signal(const ElementarySignal& f, const RealDescription& t, int M);

/// Pointwise-evaluable derivative f^(order).
class Derivative {
 public:
  Derivative(ElementarySignal f, int order = 1);
  Complex eval(const Rational& t, int M) const;
  int order() const { return order_; }
  const ElementarySignal& signal() const { return f_; }

 private:
  ElementarySignal f_;
  int order_;
};
Derivative derivative(const ElementarySignal& f, int order = 1);

ElementarySequence sample(const ElementarySignal& f);
ElementarySignal interpolate(const ElementarySequence& x);

/// a*f + b*g with complex scalars a, b.
ElementarySignal linear_combine(const ComplexDescription& a, const ElementarySignal& f, const ComplexDescription& b,
                                const ElementarySignal& g);
/// Convenience overload for real rational scalars.
ElementarySignal linear_combine(const Rational& a, const ElementarySignal& f, const Rational& b,
                                const ElementarySignal& g);

/// (h * x)(k) = sum_l h(k - l) x(l).
ElementarySequence discrete_convolution(const ElementarySequence& h, const ElementarySequence& x);

/// Value multiplication helper (exact when both exact).
Value value_mul(const Value& a, const Value& b, mpfr_prec_t prec = 128);
Value value_add(const Value& a, const Value& b, mpfr_prec_t prec = 128);
bool value_equal(const Value& a, const Value& b);
bool value_is_zero(const Value& v);

}  // namespace bandlim
