// SPDX-License-Identifier: Apache-2.0
#include "bandlim/signal.hpp"

#include <climits>
#include <cmath>

namespace bandlim {

// ---------------------------------------------------------------- values

Value value_mul(const Value& a, const Value& b, mpfr_prec_t prec) {
  if (is_exact(a) && is_exact(b)) return exact(a) * exact(b);
  if (is_exact(b)) return to_interval(a, prec) * exact(b);
  if (is_exact(a)) return to_interval(b, prec) * exact(a);
  return to_interval(a, prec) * to_interval(b, prec);
}

Value value_add(const Value& a, const Value& b, mpfr_prec_t prec) {
  if (is_exact(a) && is_exact(b)) return exact(a) + exact(b);
  if (is_exact(b)) return to_interval(a, prec) + exact(b);
  if (is_exact(a)) return to_interval(b, prec) + exact(a);
  return to_interval(a, prec) + to_interval(b, prec);
}

bool value_is_zero(const Value& v) {
  if (is_exact(v)) return exact(v).is_zero();
  const auto& i = std::get<Interval>(v);
  return i.is_point() && mpfr_zero_p(i.lo().get());
}

bool value_equal(const Value& a, const Value& b) {
  if (is_exact(a) && is_exact(b)) return exact(a) == exact(b);
  if (!is_exact(a) && !is_exact(b)) {
    const auto& x = std::get<Interval>(a);
    const auto& y = std::get<Interval>(b);
    return mpfr_equal_p(x.lo().get(), y.lo().get()) && mpfr_equal_p(x.hi().get(), y.hi().get());
  }
  const Interval& x = is_exact(a) ? std::get<Interval>(b) : std::get<Interval>(a);
  const Rational& q = is_exact(a) ? exact(a) : exact(b);
  return x.is_point() && mpfr_cmp_q(x.lo().get(), q.get_mpq_t()) == 0;
}

// ---------------------------------------------------------------- coefficients

Coefficients::Coefficients(std::int64_t lo, std::vector<Value> re, std::vector<Value> im)
    : lo_(lo), hi_(lo + static_cast<std::int64_t>(re.size()) - 1), complex_(!im.empty()), re_(std::move(re)),
      im_(std::move(im)) {
  if (complex_ && im_.size() != re_.size()) fail(ErrorKind::GeneratorFailure, "real and imaginary columns differ");
}

Coefficients Coefficients::generated(std::int64_t lo, std::int64_t hi, Generator re, Generator im) {
  Coefficients c;
  c.lo_ = lo;
  c.hi_ = hi;
  c.gen_re_ = std::move(re);
  c.gen_im_ = std::move(im);
  c.complex_ = static_cast<bool>(c.gen_im_);
  return c;
}

std::int64_t Coefficients::half_width() const {
  if (empty()) return 0;
  return std::max(std::llabs(lo_), std::llabs(hi_));
}

bool Coefficients::scale_is_one() const { return is_exact(scale_) && exact(scale_) == Rational(1); }

Value Coefficients::base_re(std::int64_t k) const {
  if (k < lo_ || k > hi_) return Rational(0);
  if (gen_re_) return gen_re_(k);
  return re_[static_cast<std::size_t>(k - lo_)];
}

Value Coefficients::base_im(std::int64_t k) const {
  if (!complex_ || k < lo_ || k > hi_) return Rational(0);
  if (gen_im_) return gen_im_(k);
  return im_[static_cast<std::size_t>(k - lo_)];
}

Value Coefficients::re(std::int64_t k, mpfr_prec_t prec) const {
  Value b = base_re(k);
  return scale_is_one() ? b : value_mul(scale_, b, prec);
}

Value Coefficients::im(std::int64_t k, mpfr_prec_t prec) const {
  Value b = base_im(k);
  return scale_is_one() ? b : value_mul(scale_, b, prec);
}

void Coefficients::for_each(const std::function<void(std::int64_t, const Value&, const Value*)>& fn) const {
  for (std::int64_t k = lo_; k <= hi_; ++k) {
    if (gen_re_) {
      Value r = gen_re_(k);
      if (complex_) {
        Value i = gen_im_(k);
        fn(k, r, &i);
      } else {
        fn(k, r, nullptr);
      }
    } else {
      auto idx = static_cast<std::size_t>(k - lo_);
      fn(k, re_[idx], complex_ ? &im_[idx] : nullptr);
    }
  }
}

bool Coefficients::base_exact() const {
  if (gen_re_) return declared_exact_;
  for (const auto& v : re_)
    if (!is_exact(v)) return false;
  for (const auto& v : im_)
    if (!is_exact(v)) return false;
  return true;
}

Coefficients Coefficients::normalized() const {
  if (gen_re_) return *this;
  std::vector<Value> re = re_, im = im_;
  if (!im.empty()) {
    bool zero = true;
    for (const auto& v : im) zero = zero && value_is_zero(v);
    if (zero) im.clear();
  }
  std::size_t a = 0, b = re.size();
  auto is_zero_at = [&](std::size_t i) { return value_is_zero(re[i]) && (im.empty() || value_is_zero(im[i])); };
  while (a < b && is_zero_at(a)) ++a;
  while (b > a && is_zero_at(b - 1)) --b;
  std::vector<Value> r2(re.begin() + static_cast<std::ptrdiff_t>(a), re.begin() + static_cast<std::ptrdiff_t>(b));
  std::vector<Value> i2;
  if (!im.empty())
    i2.assign(im.begin() + static_cast<std::ptrdiff_t>(a), im.begin() + static_cast<std::ptrdiff_t>(b));
  Coefficients c(lo_ + static_cast<std::int64_t>(a), std::move(r2), std::move(i2));
  if (c.empty()) c.lo_ = 0, c.hi_ = -1;
  c.scale_ = scale_;
  return c;
}

bool operator==(const Coefficients& a, const Coefficients& b) {
  bool same_scale = value_equal(a.scale_, b.scale_);
  std::int64_t lo = std::min(a.empty() ? b.lo_ : a.lo_, b.empty() ? a.lo_ : b.lo_);
  std::int64_t hi = std::max(a.hi_, b.hi_);
  for (std::int64_t k = lo; k <= hi; ++k) {
    if (same_scale) {
      if (!value_equal(a.base_re(k), b.base_re(k)) || !value_equal(a.base_im(k), b.base_im(k))) return false;
    } else {
      if (!value_equal(a.re(k), b.re(k)) || !value_equal(a.im(k), b.im(k))) return false;
    }
  }
  return true;
}

ElementarySignal make_signal(std::int64_t lo, const std::vector<Rational>& values) {
  std::vector<Value> v(values.begin(), values.end());
  return {Coefficients(lo, std::move(v))};
}

ElementarySequence make_sequence(std::int64_t lo, const std::vector<Rational>& values) {
  std::vector<Value> v(values.begin(), values.end());
  return {Coefficients(lo, std::move(v))};
}

// ---------------------------------------------------------------- sinc

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Interval sinc_series(const Interval& x, int d, mpfr_prec_t prec) {
  Interval pi = Interval::pi(prec);
  Interval pi2 = pi.sqr();
  Interval xm = Interval(x.mag(), x.mag());
  Interval acc = Interval::from_int(0, prec);
  Float eps(prec);
  mpfr_set_ui_2exp(eps.get(), 1, -static_cast<long>(prec) - 4, MPFR_RNDN);
  int j0 = (d + 1) / 2;
  for (int j = j0;; ++j) {
    // T_j = (-1)^j pi^{2j} x^{2j-d} / ((2j+1) (2j-d)!)
    Interval t = pi2.pow_int(j) * x.pow_int(2 * j - d) *
                 Rational(BigInt(j % 2 ? -1 : 1), BigInt(2 * j + 1) * factorial(2 * j - d));
    acc = acc + t;
    // |T_{j+1}| bound; consecutive ratios are below 1/3 for |x| <= 1/4, so the tail is below 2|T_{j+1}|
    int jn = j + 1;
    Interval next = pi2.pow_int(jn) * xm.pow_int(2 * jn - d) * Rational(BigInt(2), BigInt(2 * jn + 1) * factorial(2 * jn - d));
    if (j > j0 + 1 && mpfr_lessequal_p(next.hi().get(), eps.get())) return acc.inflate(next.hi());
    if (j > j0 + 4000) fail(ErrorKind::ResourceLimit, "sinc series did not converge");
  }
}

Interval trig_shift(const Interval& s, const Interval& c, int i) {
  switch (i % 4) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
  }
}

Interval sinc_closed(const Interval& x, int d, mpfr_prec_t prec) {
  Interval pi = Interval::pi(prec);
  Interval px = pi * x;
  Interval s = px.sin(), c = px.cos();
  Interval acc = Interval::from_int(0, prec);
  Interval inv = Interval::from_int(1, prec) / x;
  for (int i = 0; i <= d; ++i) {
    // C(d,i) pi^(i-1) sin(pi x + i pi/2) (-1)^(d-i) (d-i)! / x^(d-i+1)
    BigInt coef = factorial(d) / factorial(i) * ((d - i) % 2 ? -1 : 1);
    Interval term = trig_shift(s, c, i) * pi.pow_int(i - 1) * inv.pow_int(d - i + 1) * Rational(coef);
    acc = acc + term;
  }
  return acc;
}

}  // namespace

Interval sinc(const Interval& x, int d) {
  if (d < 0) fail(ErrorKind::GeneratorFailure, "negative derivative order");
  mpfr_prec_t prec = std::max<mpfr_prec_t>(x.prec(), 64);
  Rational q(1, 4);
  Interval r;
  bool have = false;
  auto add = [&](const Interval& v) {
    r = have ? r.hull(v) : v;
    have = true;
  };
  Float qlo(prec), qhi(prec);
  mpfr_set_si_2exp(qlo.get(), -1, -2, MPFR_RNDN);
  mpfr_set_si_2exp(qhi.get(), 1, -2, MPFR_RNDN);
  // left part x < -1/4
  if (mpfr_less_p(x.lo().get(), qlo.get())) {
    Float hi(prec);
    mpfr_min(hi.get(), x.hi().get(), qlo.get(), MPFR_RNDN);
    add(sinc_closed(Interval(x.lo(), hi), d, prec));
  }
  // middle |x| <= 1/4
  if (mpfr_lessequal_p(x.lo().get(), qhi.get()) && mpfr_greaterequal_p(x.hi().get(), qlo.get())) {
    Float lo(prec), hi(prec);
    mpfr_max(lo.get(), x.lo().get(), qlo.get(), MPFR_RNDN);
    mpfr_min(hi.get(), x.hi().get(), qhi.get(), MPFR_RNDN);
    add(sinc_series(Interval(lo, hi), d, prec));
  }
  if (mpfr_greater_p(x.hi().get(), qhi.get())) {
    Float lo(prec);
    mpfr_max(lo.get(), x.lo().get(), qhi.get(), MPFR_RNDN);
    add(sinc_closed(Interval(lo, x.hi()), d, prec));
  }
  // |sinc^(d)| <= pi^d / (d+1)
  Interval bound = Interval::pi(prec).pow_int(d) * Rational(1, d + 1);
  Float lo(prec), hi(prec);
  mpfr_max(lo.get(), r.lo().get(), (-bound).lo().get(), MPFR_RNDD);
  mpfr_min(hi.get(), r.hi().get(), bound.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

// ---------------------------------------------------------------- evaluation

namespace {

// Raw MPFR interval with preallocated limbs for the summation loops.
struct RawInterval {
  mpfr_t lo, hi;
  explicit RawInterval(mpfr_prec_t p) {
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
  }
  ~RawInterval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  RawInterval(const RawInterval&) = delete;
  RawInterval& operator=(const RawInterval&) = delete;
  Interval get() const {
    Float l(mpfr_get_prec(lo)), h(mpfr_get_prec(hi));
    mpfr_set(l.get(), lo, MPFR_RNDD);
    mpfr_set(h.get(), hi, MPFR_RNDU);
    return {std::move(l), std::move(h)};
  }
};

// out = [num/den] for int64 num, den (den != 0)
void set_quotient(RawInterval& out, long num, long den) {
  mpfr_set_si(out.lo, num, MPFR_RNDD);
  mpfr_set_si(out.hi, num, MPFR_RNDU);
  mpfr_div_si(out.lo, out.lo, den, MPFR_RNDD);
  mpfr_div_si(out.hi, out.hi, den, MPFR_RNDU);
}

// a *= b for intervals of constant sign (b does not contain 0, a does not)
void mul_signed(RawInterval& a, const RawInterval& b, RawInterval& tmp) {
  // generic four-product
  mpfr_mul(tmp.lo, a.lo, b.lo, MPFR_RNDD);
  mpfr_mul(tmp.hi, a.lo, b.lo, MPFR_RNDU);
  auto upd = [&](mpfr_srcptr x, mpfr_srcptr y) {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(tmp.lo));
    mpfr_mul(t, x, y, MPFR_RNDD);
    if (mpfr_less_p(t, tmp.lo)) mpfr_set(tmp.lo, t, MPFR_RNDD);
    mpfr_mul(t, x, y, MPFR_RNDU);
    if (mpfr_greater_p(t, tmp.hi)) mpfr_set(tmp.hi, t, MPFR_RNDU);
    mpfr_clear(t);
  };
  upd(a.lo, b.hi);
  upd(a.hi, b.lo);
  upd(a.hi, b.hi);
  mpfr_swap(a.lo, tmp.lo);
  mpfr_swap(a.hi, tmp.hi);
}

// a *= q for a small rational q = num/den (den > 0)
void mul_small_rational(RawInterval& a, long num, long den) {
  if (num == 1 && den == 1) return;
  if (num >= 0) {
    mpfr_mul_si(a.lo, a.lo, num, MPFR_RNDD);
    mpfr_mul_si(a.hi, a.hi, num, MPFR_RNDU);
  } else {
    mpfr_swap(a.lo, a.hi);
    mpfr_mul_si(a.lo, a.lo, num, MPFR_RNDD);
    mpfr_mul_si(a.hi, a.hi, num, MPFR_RNDU);
  }
  if (den != 1) {
    mpfr_div_si(a.lo, a.lo, den, MPFR_RNDD);
    mpfr_div_si(a.hi, a.hi, den, MPFR_RNDU);
  }
}

void accumulate(RawInterval& acc, const RawInterval& t) {
  mpfr_add(acc.lo, acc.lo, t.lo, MPFR_RNDD);
  mpfr_add(acc.hi, acc.hi, t.hi, MPFR_RNDU);
}

bool small_rational(const Value& v, long& num, long& den) {
  if (!is_exact(v)) return false;
  const Rational& q = exact(v);
  if (!q.numerator().fits_slong_p() || !q.denominator().fits_slong_p()) return false;
  num = q.numerator().get_si();
  den = q.denominator().get_si();
  return true;
}

// sum_k c_k sinc^(d)(t - k) for one coefficient column (base values, no scale)
Interval eval_column(const Coefficients& c, bool imag, const Rational& t, int d, mpfr_prec_t prec) {
  BigInt k0b;
  {
    Rational s = t + Rational(1, 2);
    mpz_fdiv_q(k0b.get_mpz_t(), s.numerator().get_mpz_t(), s.denominator().get_mpz_t());
  }
  if (!k0b.fits_slong_p()) fail(ErrorKind::ResourceLimit, "evaluation point out of range");
  const std::int64_t k0 = k0b.get_si();
  const Rational x0 = t - Rational(k0);
  const bool at_integer = x0.is_zero();

  // power sums W_j = sum_{k != k0} c_k sigma_k (t-k)^-j, j = 1..d+1
  std::vector<RawInterval*> W;
  for (int j = 0; j <= d; ++j) W.push_back(new RawInterval(prec));
  struct Cleanup {
    std::vector<RawInterval*>& w;
    ~Cleanup() {
      for (auto* p : w) delete p;
    }
  } cleanup{W};

  const bool small_t = t.numerator().fits_slong_p() && t.denominator().fits_slong_p();
  const long ta = small_t ? t.numerator().get_si() : 0;
  const long tb = small_t ? t.denominator().get_si() : 1;
  RawInterval u(prec), pw(prec), tmp(prec);
  Value near = Rational(0);

  auto visit = [&](std::int64_t k, const Value& re, const Value* im) {
    const Value& v = imag ? *im : re;
    if (k == k0) {
      near = v;
      return;
    }
    if (value_is_zero(v)) return;
    const bool odd = ((k0 - k) % 2) != 0;
    // u = 1/(t-k)
    bool done = false;
    if (small_t) {
      __int128 den = static_cast<__int128>(ta) - static_cast<__int128>(k) * tb;
      if (den >= LONG_MIN && den <= LONG_MAX) {
        set_quotient(u, tb, static_cast<long>(den));
        done = true;
      }
    }
    if (!done) {
      Rational q = (t - Rational(k)).inverse();
      mpfr_set_q(u.lo, q.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(u.hi, q.get_mpq_t(), MPFR_RNDU);
    }
    mpfr_set(pw.lo, u.lo, MPFR_RNDD);
    mpfr_set(pw.hi, u.hi, MPFR_RNDU);
    long num = 0, den = 1;
    bool small = small_rational(v, num, den);
    Interval vi = small ? Interval() : to_interval(v, prec);
    for (int j = 0; j <= d; ++j) {
      if (j > 0) mul_signed(pw, u, tmp);
      RawInterval term(prec);
      mpfr_set(term.lo, pw.lo, MPFR_RNDD);
      mpfr_set(term.hi, pw.hi, MPFR_RNDU);
      if (small) {
        mul_small_rational(term, odd ? -num : num, den);
      } else {
        Float l(prec), h(prec);
        mpfr_set(l.get(), term.lo, MPFR_RNDD);
        mpfr_set(h.get(), term.hi, MPFR_RNDU);
        Interval r = Interval(std::move(l), std::move(h)) * vi;
        if (odd) r = -r;
        mpfr_set(term.lo, r.lo().get(), MPFR_RNDD);
        mpfr_set(term.hi, r.hi().get(), MPFR_RNDU);
      }
      accumulate(*W[static_cast<std::size_t>(j)], term);
    }
  };
  c.for_each([&](std::int64_t k, const Value& re, const Value* im) {
    if (imag && !im) return;
    visit(k, re, im);
  });

  // near term c_k0 sinc^(d)(x0)
  Interval result = Interval::from_int(0, prec);
  if (!value_is_zero(near)) {
    if (at_integer && d == 0) {
      result = to_interval(near, prec);
    } else {
      result = to_interval(near, prec) * sinc(Interval::from_rational(x0, prec), d);
    }
  }
  Interval pi = Interval::pi(prec);
  Interval s0 = Interval::from_int(0, prec), c0 = Interval::from_int(1, prec);
  if (!at_integer) {
    Interval px = pi * x0;
    s0 = px.sin();
    c0 = px.cos();
  }
  for (int i = 0; i <= d; ++i) {
    if (at_integer && i % 2 == 0) continue;  // sin(i pi/2) = 0
    BigInt coef = factorial(d) / factorial(i) * ((d - i) % 2 ? -1 : 1);
    Interval term = trig_shift(s0, c0, i) * pi.pow_int(i - 1) * W[static_cast<std::size_t>(d - i)]->get() *
                    Rational(coef);
    result = result + term;
  }
  return result;
}

Complex eval_rational(const Coefficients& c, const Rational& t, int d, int M) {
  long bits = 8;
  while ((std::int64_t{1} << bits) < c.size() + 1 && bits < 62) ++bits;
  mpfr_prec_t prec = M + 40 + bits;
  for (int attempt = 0; attempt < 8; ++attempt, prec *= 2) {
    Interval re = eval_column(c, false, t, d, prec);
    Interval im = c.is_complex() ? eval_column(c, true, t, d, prec) : Interval::from_int(0, prec);
    if (!c.scale_is_one()) {
      Interval s = to_interval(c.scale(), prec);
      re = re * s;
      im = im * s;
    }
    if (re.log2_width() <= -M && im.log2_width() <= -M) return {re, im};
  }
  fail(ErrorKind::ResourceLimit, "evaluation did not reach the requested precision");
}

// Upper bound for sum_k |c_k| (effective coefficients), as a double.
double coefficient_mass(const Coefficients& c) {
  Interval acc = Interval::from_int(0, 64);
  c.for_each([&](std::int64_t, const Value& re, const Value* im) {
    acc = acc + to_interval(re, 64).abs();
    if (im) acc = acc + to_interval(*im, 64).abs();
  });
  acc = acc * to_interval(c.scale(), 64).abs();
  return acc.hi().to_double(MPFR_RNDU);
}

Complex eval_real_point(const Coefficients& c, const RealDescription& t, int d, int M) {
  // |f^(d)(t) - f^(d)(m)| <= |t - m| sup|f^(d+1)| <= |t - m| pi^(d+1) sum|c_k|
  double lip = std::pow(3.1416, d + 1) * coefficient_mass(c) + 1.0;
  int extra = static_cast<int>(std::ceil(std::log2(lip))) + 2;
  Interval T = approximate(t, M + extra);
  Float mid = T.mid();
  Rational m = mid.to_rational();
  Complex v = eval_rational(c, m, d, M + 1);
  Float rad = T.rad();
  Float lp(64);
  mpfr_set_d(lp.get(), lip, MPFR_RNDU);
  mpfr_mul(lp.get(), lp.get(), rad.get(), MPFR_RNDU);
  return {v.first.inflate(lp), v.second.inflate(lp)};
}

}  // namespace

Complex eval_signal(const ElementarySignal& f, const Rational& t, int M) { return eval_rational(f.c, t, 0, M); }

Complex eval_signal(const ElementarySignal& f, const RealDescription& t, int M) {
  return eval_real_point(f.c, t, 0, M);
}

Derivative::Derivative(ElementarySignal f, int order) : f_(std::move(f)), order_(order) {
  if (order < 0 || order > 16) fail(ErrorKind::GeneratorFailure, "derivative order out of range");
}

Complex Derivative::eval(const Rational& t, int M) const { return eval_rational(f_.c, t, order_, M); }

Derivative derivative(const ElementarySignal& f, int order) { return Derivative(f, order); }

// ---------------------------------------------------------------- algebra

ElementarySequence sample(const ElementarySignal& f) { return {f.c}; }

ElementarySignal interpolate(const ElementarySequence& x) { return {x.c}; }

namespace {

Value scalar_of(const RealDescription& x) {
  if (free_vars(*x.sequence()).empty()) {
    Value v = x.term(0);
    if (is_exact(v)) return v;
  }
  return approximate(x, 120);
}

}  // namespace

ElementarySignal linear_combine(const ComplexDescription& a, const ElementarySignal& f, const ComplexDescription& b,
                                const ElementarySignal& g) {
  Value ar = scalar_of(a.re), ai = scalar_of(a.im), br = scalar_of(b.re), bi = scalar_of(b.im);
  const Coefficients& F = f.c;
  const Coefficients& G = g.c;
  if (F.empty() && G.empty()) return {};
  std::int64_t lo = F.empty() ? G.lo() : (G.empty() ? F.lo() : std::min(F.lo(), G.lo()));
  std::int64_t hi = std::max(F.hi(), G.hi());
  std::vector<Value> re, im;
  bool complex = F.is_complex() || G.is_complex() || !value_is_zero(ai) || !value_is_zero(bi);
  for (std::int64_t k = lo; k <= hi; ++k) {
    Value fr = F.re(k), fi = F.im(k), gr = G.re(k), gi = G.im(k);
    auto neg = [](const Value& v) -> Value {
      if (is_exact(v)) return -exact(v);
      return -std::get<Interval>(v);
    };
    Value r = value_add(value_add(value_mul(ar, fr), neg(value_mul(ai, fi))),
                  value_add(value_mul(br, gr), neg(value_mul(bi, gi))));
    re.push_back(r);
    if (complex) {
      Value s = value_add(value_add(value_mul(ar, fi), value_mul(ai, fr)),
                          value_add(value_mul(br, gi), value_mul(bi, gr)));
      im.push_back(s);
    }
  }
  return {Coefficients(lo, std::move(re), std::move(im)).normalized()};
}

ElementarySignal linear_combine(const Rational& a, const ElementarySignal& f, const Rational& b,
                                const ElementarySignal& g) {
  ComplexDescription A{RealDescription::constant(a), RealDescription::constant(Rational(0))};
  ComplexDescription B{RealDescription::constant(b), RealDescription::constant(Rational(0))};
  return linear_combine(A, f, B, g);
}

ElementarySequence discrete_convolution(const ElementarySequence& h, const ElementarySequence& x) {
  const Coefficients& H = h.c;
  const Coefficients& X = x.c;
  if (H.empty() || X.empty()) return {};
  if (H.size() * X.size() > (std::int64_t{1} << 28)) fail(ErrorKind::ResourceLimit, "convolution too large");
  std::int64_t lo = H.lo() + X.lo(), hi = H.hi() + X.hi();
  bool complex = H.is_complex() || X.is_complex();
  std::vector<Value> re(static_cast<std::size_t>(hi - lo + 1), Rational(0));
  std::vector<Value> im(complex ? re.size() : 0, Rational(0));
  auto neg = [](const Value& v) -> Value {
    if (is_exact(v)) return -exact(v);
    return -std::get<Interval>(v);
  };
  for (std::int64_t i = H.lo(); i <= H.hi(); ++i) {
    Value hr = H.base_re(i), hi_ = H.base_im(i);
    for (std::int64_t l = X.lo(); l <= X.hi(); ++l) {
      Value xr = X.base_re(l), xi = X.base_im(l);
      auto idx = static_cast<std::size_t>(i + l - lo);
      re[idx] = value_add(re[idx], value_add(value_mul(hr, xr), neg(value_mul(hi_, xi))));
      if (complex) im[idx] = value_add(im[idx], value_add(value_mul(hr, xi), value_mul(hi_, xr)));
    }
  }
  Coefficients c(lo, std::move(re), std::move(im));
  c.set_scale(value_mul(H.scale(), X.scale()));
  return {c};
}

}  // namespace bandlim
