// SPDX-License-Identifier: Apache-2.0
#include "bandlim/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace bandlim {

namespace {

mpfr_prec_t pmax(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }

Float make(mpfr_prec_t p) { return Float(p); }

struct MpfrString {
  char* s;
  ~MpfrString() { mpfr_free_str(s); }
};

}  // namespace

Rational Float::to_rational() const {
  if (!mpfr_number_p(v_)) fail(ErrorKind::GeneratorFailure, "non-finite value");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return Rational(q);
}

std::string Float::exact_str() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  // strip trailing zero bits
  auto tz = mpz_scan1(m.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), tz);
    e += static_cast<mpfr_exp_t>(tz);
  }
  if (e >= 0) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return m.get_str();
  }
  return m.get_str() + "*2^" + std::to_string(e);
}

std::string Float::decimal_str(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  if (!mpfr_number_p(v_)) return exact_str();
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
  return buf;
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
  Float lo(prec), hi(prec);
  mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from_int(long v, mpfr_prec_t prec) {
  prec = std::max<mpfr_prec_t>(prec, 64);
  Float lo(prec), hi(prec);
  mpfr_set_si(lo.get(), v, MPFR_RNDD);
  mpfr_set_si(hi.get(), v, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from_double(double v) {
  Float lo(53), hi(53);
  mpfr_set_d(lo.get(), v, MPFR_RNDD);
  mpfr_set_d(hi.get(), v, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::span(const Rational& a, const Rational& b, mpfr_prec_t prec) {
  const Rational& l = a <= b ? a : b;
  const Rational& h = a <= b ? b : a;
  Float lo(prec), hi(prec);
  mpfr_set_q(lo.get(), l.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), h.get_mpq_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::pi(mpfr_prec_t prec) {
  Float lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::ln2(mpfr_prec_t prec) {
  Float lo(prec), hi(prec);
  mpfr_const_log2(lo.get(), MPFR_RNDD);
  mpfr_const_log2(hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

bool Interval::intersects(const Interval& o) const {
  return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
}

Float Interval::width() const {
  Float w(std::max<mpfr_prec_t>(prec(), 64));
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double Interval::log2_width() const {
  Float w = width();
  if (mpfr_zero_p(w.get())) return -1e300;
  if (mpfr_inf_p(w.get())) return 1e300;
  long e = 0;
  double d = mpfr_get_d_2exp(&e, w.get(), MPFR_RNDU);
  return std::log2(d) + static_cast<double>(e);
}

Float Interval::mid() const {
  // exact: sum with one extra bit of room over the wider operand span
  mpfr_exp_t el = mpfr_zero_p(lo_.get()) ? 0 : mpfr_get_exp(lo_.get());
  mpfr_exp_t eh = mpfr_zero_p(hi_.get()) ? 0 : mpfr_get_exp(hi_.get());
  mpfr_exp_t span = std::abs(el - eh);
  mpfr_prec_t p = prec() + static_cast<mpfr_prec_t>(std::min<mpfr_exp_t>(span, 4096)) + 2;
  Float m(p);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

Float Interval::rad() const {
  Float r = width();
  mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDU);
  return r;
}

Float Interval::mag() const {
  Float m(prec());
  if (mpfr_cmpabs(lo_.get(), hi_.get()) > 0)
    mpfr_abs(m.get(), lo_.get(), MPFR_RNDU);
  else
    mpfr_abs(m.get(), hi_.get(), MPFR_RNDU);
  return m;
}

Float Interval::mig() const {
  Float m(prec());
  if (contains_zero()) return m;
  if (mpfr_sgn(lo_.get()) > 0)
    mpfr_set(m.get(), lo_.get(), MPFR_RNDD);
  else
    mpfr_neg(m.get(), hi_.get(), MPFR_RNDD);
  return m;
}

Interval Interval::operator-() const {
  Float lo(hi_.prec()), hi(lo_.prec());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator+(const Interval& a, const Interval& b) {
  auto p = pmax(a, b);
  Float lo(p), hi(p);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  auto p = pmax(a, b);
  Float lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, const Interval& b) {
  auto p = pmax(a, b);
  Float lo(p), hi(p), t(p);
  const mpfr_srcptr al = a.lo_.get(), ah = a.hi_.get(), bl = b.lo_.get(), bh = b.hi_.get();
  const mpfr_srcptr pairs[4][2] = {{al, bl}, {al, bh}, {ah, bl}, {ah, bh}};
  mpfr_mul(lo.get(), al, bl, MPFR_RNDD);
  mpfr_mul(hi.get(), al, bl, MPFR_RNDU);
  for (int i = 1; i < 4; ++i) {
    mpfr_mul(t.get(), pairs[i][0], pairs[i][1], MPFR_RNDD);
    if (mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), pairs[i][0], pairs[i][1], MPFR_RNDU);
    if (mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(ErrorKind::DivisionByZero, "divisor enclosure contains zero");
  auto p = pmax(a, b);
  Float lo(p), hi(p), t(p);
  const mpfr_srcptr al = a.lo_.get(), ah = a.hi_.get(), bl = b.lo_.get(), bh = b.hi_.get();
  const mpfr_srcptr pairs[4][2] = {{al, bl}, {al, bh}, {ah, bl}, {ah, bh}};
  mpfr_div(lo.get(), al, bl, MPFR_RNDD);
  mpfr_div(hi.get(), al, bl, MPFR_RNDU);
  for (int i = 1; i < 4; ++i) {
    mpfr_div(t.get(), pairs[i][0], pairs[i][1], MPFR_RNDD);
    if (mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
    mpfr_div(t.get(), pairs[i][0], pairs[i][1], MPFR_RNDU);
    if (mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, const Rational& q) {
  auto p = a.prec();
  Float lo(p), hi(p);
  if (q.sign() >= 0) {
    mpfr_mul_q(lo.get(), a.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), a.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(lo.get(), a.hi_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), a.lo_.get(), q.get_mpq_t(), MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi)};
}

Interval operator+(const Interval& a, const Rational& q) {
  auto p = a.prec();
  Float lo(p), hi(p);
  mpfr_add_q(lo.get(), a.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(hi.get(), a.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return -*this;
  Float lo(prec());
  return {std::move(lo), mag()};
}

Interval Interval::sqr() const {
  Interval a = abs();
  Float lo(prec()), hi(prec());
  mpfr_sqr(lo.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), a.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_.get()) < 0) fail(ErrorKind::GeneratorFailure, "sqrt of a negative enclosure");
  Float lo(prec()), hi(prec());
  if (mpfr_sgn(lo_.get()) > 0) mpfr_sqrt(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::exp() const {
  Float lo(prec()), hi(prec());
  mpfr_exp(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) fail(ErrorKind::GeneratorFailure, "log of a non-positive enclosure");
  Float lo(prec()), hi(prec());
  mpfr_log(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

namespace {

// Lipschitz-1 enclosure of a trigonometric function over an interval.
template <typename Fn>
Interval trig(const Interval& x, Fn fn) {
  auto p = x.prec();
  Float w = x.width();
  Float lo(p), hi(p);
  if (mpfr_cmp_d(w.get(), 6.0) > 0) {
    mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
  }
  Float m = x.mid();
  Float r = x.rad();
  fn(lo.get(), m.get(), MPFR_RNDD);
  fn(hi.get(), m.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), r.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi.get(), r.get(), MPFR_RNDU);
  if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

}  // namespace

Interval Interval::sin() const {
  return trig(*this, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sin(r, a, rnd); });
}

Interval Interval::cos() const {
  return trig(*this, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_cos(r, a, rnd); });
}

Interval Interval::pow_int(long e) const {
  if (e == 0) return from_int(1, prec());
  if (e < 0) return from_int(1, prec()) / pow_int(-e);
  auto p = prec();
  Float lo(p), hi(p);
  if (e % 2 == 1) {
    mpfr_pow_ui(lo.get(), lo_.get(), static_cast<unsigned long>(e), MPFR_RNDD);
    mpfr_pow_ui(hi.get(), hi_.get(), static_cast<unsigned long>(e), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
  }
  Interval a = abs();
  mpfr_pow_ui(lo.get(), a.lo_.get(), static_cast<unsigned long>(e), MPFR_RNDD);
  mpfr_pow_ui(hi.get(), a.hi_.get(), static_cast<unsigned long>(e), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::pow_rational(const Rational& pw) const {
  if (pw.sign() <= 0) fail(ErrorKind::GeneratorFailure, "pow_rational needs a positive exponent");
  if (mpfr_sgn(lo_.get()) < 0) fail(ErrorKind::GeneratorFailure, "pow_rational of a negative enclosure");
  if (pw.is_integer()) return pow_int(pw.to_int64().value());
  if (!pw.numerator().fits_ulong_p() || !pw.denominator().fits_ulong_p())
    fail(ErrorKind::ResourceLimit, "exponent too large");
  auto a = pw.numerator().get_ui();
  auto b = pw.denominator().get_ui();
  auto p = prec();
  Float lo(p), hi(p);
  mpfr_pow_ui(lo.get(), lo_.get(), a, MPFR_RNDD);
  mpfr_pow_ui(hi.get(), hi_.get(), a, MPFR_RNDU);
  mpfr_rootn_ui(lo.get(), lo.get(), b, MPFR_RNDD);
  mpfr_rootn_ui(hi.get(), hi.get(), b, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::inflate(const Float& r) const {
  Float lo(prec()), hi(prec());
  mpfr_sub(lo.get(), lo_.get(), r.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), r.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::hull(const Interval& o) const {
  auto p = pmax(*this, o);
  Float lo(p), hi(p);
  mpfr_min(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_max(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::round_to(mpfr_prec_t p) const {
  Float lo(p), hi(p);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

std::string Interval::exact_str() const { return "[" + lo_.exact_str() + ", " + hi_.exact_str() + "]"; }

std::string Interval::decimal_str(int digits) const {
  return "[" + lo_.decimal_str(digits) + ", " + hi_.decimal_str(digits) + "]";
}

}  // namespace bandlim
