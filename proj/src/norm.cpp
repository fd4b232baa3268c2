// SPDX-License-Identifier: Apache-2.0
#include "bandlim/norm.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/kernel.hpp"

namespace bandlim {

namespace {

constexpr double kMinRadius = 0x1p-42;

Interval from_fi(const FI& v) {
  Float lo(53), hi(53);
  mpfr_set_d(lo.get(), v.lo, MPFR_RNDD);
  mpfr_set_d(hi.get(), v.hi, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

double up(double v) { return FI::up(v); }
double dn(double v) { return FI::dn(v); }
double sqrt_up(double v) { return up(std::sqrt(std::max(v, 0.0))); }
double sqrt_dn(double v) { return v <= 0 ? 0.0 : std::max(0.0, dn(std::sqrt(v))); }

// Exponent p as a bracket of doubles, for |.|^p bounds.
struct PExp {
  double lo = 1, hi = 1;
  bool is_one = true;
  bool is_two = false;
  Rational exact{1};

  static PExp of(const Exponent& e) {
    PExp p;
    p.exact = e.value;
    p.is_one = e.is(1);
    p.is_two = e.is(2);
    FI f = to_fi(Value(e.value));
    p.lo = f.lo;
    p.hi = f.hi;
    return p;
  }
  double pow_up(double x) const {
    if (x <= 0) return 0.0;
    if (is_one) return x;
    double a = std::pow(x, lo), b = std::pow(x, hi);
    return FI::up(FI::up(FI::up(std::max(a, b))));
  }
  double pow_dn(double x) const {
    if (x <= 0) return 0.0;
    if (is_one) return x;
    double a = std::pow(x, lo), b = std::pow(x, hi);
    return std::max(0.0, FI::dn(FI::dn(FI::dn(std::min(a, b)))));
  }
};

// Mean of |sin(pi t)|^p over one period.
FI sine_mean(const PExp& p) {
  if (p.is_one) return FI(2.0) / kPiFI;
  if (p.is_two) return FI(0.5);
  // |sin(pi t)|^p increases on [0, 1/2]: left and right Riemann sums
  const int n = 1 << 14;
  const double h = 0.5 / n;
  double lo = 0, hi = 0;
  for (int i = 0; i <= n; ++i) {
    FI s, c;
    fi_sincospi(i * h, s, c);
    if (i < n) lo += p.pow_dn(std::max(0.0, s.lo));
    if (i > 0) hi += p.pow_up(std::min(1.0, s.hi));
  }
  // error of the plain double sums: n additions of values <= 1
  double slack = n * 0x1p-52;
  return {std::max(0.0, dn((lo - slack) * 2 * h)), std::min(1.0, up((hi + slack) * 2 * h))};
}

// pi^-p
FI pi_neg_pow(const PExp& p) {
  if (p.is_one) return FI(1.0) / kPiFI;
  if (p.is_two) return FI(1.0) / (kPiFI * kPiFI);
  double a = std::pow(kPiFI.lo, p.lo), b = std::pow(kPiFI.hi, p.hi);
  return {dn(dn(dn(1.0 / up(up(b))))), up(up(up(1.0 / dn(dn(a)))))};
}

enum class Mode { One, Two, General };

struct Components {
  std::vector<FastSignal> parts;
  std::int64_t klo = 0, khi = -1;
  double center = 0, rho = 0;
  bool empty = true;

  explicit Components(const Coefficients& c) {
    parts.emplace_back(c, false);
    if (c.is_complex()) parts.emplace_back(c, true);
    for (const auto& p : parts) {
      if (p.empty()) continue;
      if (empty) {
        klo = p.lo();
        khi = p.hi();
        empty = false;
      } else {
        klo = std::min(klo, p.lo());
        khi = std::max(khi, p.hi());
      }
    }
    center = 0.5 * static_cast<double>(klo) + 0.5 * static_cast<double>(khi);
    rho = 0.5 * static_cast<double>(khi - klo);
  }
  double abs_sum() const {
    double s = 0;
    for (const auto& p : parts) s = up(s + p.abs_sum());
    return s;
  }
  double first_moment_abs(double c) const {
    double s = 0;
    for (const auto& p : parts) s = up(s + p.first_moment_abs(c));
    return s;
  }
};

// Adaptive quadrature of |f|^p with a global width budget. Panels are
// either Taylor panels (anywhere) or product panels with integer endpoints
// outside the support, where f = sin(pi t) P(t) / pi.
class Quadrature {
 public:
  Quadrature(const Components& comps, Mode mode, PExp p, std::int64_t max_panels)
      : comps_(comps), mode_(mode), p_(p), max_panels_(max_panels) {
    if (mode_ == Mode::General) {
      sigma_ = sine_mean(p_);
      pi_p_ = pi_neg_pow(p_);
    }
  }

  void add_taylor(double a, double b) { push({a, b, eval_taylor(a, b), false}); }
  void add_product(double a, double b) { push({a, b, eval_product(a, b), true}); }

  void refine(double target) {
    std::int64_t steps = 0;
    while (true) {
      if (width_sum_ <= target) {
        width_sum_ = exact_width();
        if (width_sum_ <= target) return;
      }
      if (heap_.empty()) return;
      std::pop_heap(heap_.begin(), heap_.end(), Less());
      Panel top = heap_.back();
      heap_.pop_back();
      width_sum_ -= top.v.hi - top.v.lo;
      split(top);
      if (++steps % 4096 == 0) width_sum_ = exact_width();
      if (static_cast<std::int64_t>(heap_.size()) > max_panels_)
        fail(ErrorKind::ResourceLimit, "quadrature panel budget exhausted");
    }
  }

  FI total() const {
    FI s(0.0);
    for (const auto& p : heap_) s += p.v;
    return s;
  }

 private:
  struct Panel {
    double a, b;
    FI v;
    bool product;
  };
  struct Less {
    bool operator()(const Panel& x, const Panel& y) const {
      double wx = x.v.hi - x.v.lo, wy = y.v.hi - y.v.lo;
      if (wx != wy) return wx < wy;
      return x.a > y.a;  // leftmost first among ties
    }
  };

  void push(Panel p) {
    width_sum_ += p.v.hi - p.v.lo;
    heap_.push_back(p);
    std::push_heap(heap_.begin(), heap_.end(), Less());
  }

  double exact_width() const {
    double s = 0;
    for (const auto& p : heap_) s = up(s + up(p.v.hi - p.v.lo));
    return s;
  }

  void split(const Panel& p) {
    if (p.product) {
      double w = p.b - p.a;
      if (w >= 2) {
        double m = p.a + std::floor(w / 2);
        add_product(p.a, m);
        add_product(m, p.b);
      } else {
        double m = p.a + 0.5;
        add_taylor(p.a, m);
        add_taylor(m, p.b);
      }
      return;
    }
    double m = 0.5 * p.a + 0.5 * p.b;
    if ((p.b - p.a) / 2 < kMinRadius) fail(ErrorKind::ResourceLimit, "quadrature cannot reach the requested width");
    add_taylor(p.a, m);
    add_taylor(m, p.b);
  }

  FI eval_taylor(double a, double b) const {
    const double m = 0.5 * a + 0.5 * b;
    const FI r = FI(0.5) * (FI(b) - FI(a));
    const double rr = r.hi;
    const FI r2 = r * r, r3 = r2 * r, r4 = r3 * r;
    FI F[3];
    double B[4];
    switch (mode_) {
      case Mode::One: {
        const FastSignal& f = comps_.parts[0];
        f.eval(m, 2, F);
        f.bound(a, b, 3, B);
        double rhs = (FI(F[1].mag()) * r + FI(F[2].mag()) * r2 * FI(0.5) + FI(B[3]) * r3 / FI(6.0)).hi;
        double cap = (FI(2.0) * r * FI(B[0])).hi;
        if (F[0].mig() > rhs) {
          FI v = FI(2.0) * r * F[0] + r3 / FI(3.0) * F[2];
          if (F[0].hi < 0) v = -v;
          double err = (FI(B[3]) * r4 / FI(12.0)).hi;
          return {std::max(0.0, dn(v.lo - err)), std::min(cap, up(v.hi + err))};
        }
        // linear model: integral of |alpha + beta u| over [-r, r]
        // F >= 2r|alpha| always; the second form applies when |alpha| < |beta| r
        auto lin = [&](double al, double be, bool upper) {
          FI A(al), Bt(be);
          bool first = upper ? be == 0.0 || be * rr <= al * (1 - 1e-12) : be == 0.0 || be * rr <= al * (1 + 1e-12);
          FI v = first ? FI(2.0) * r * A : (A * A + Bt * Bt * r2) / Bt;
          return upper ? v.hi : v.lo;
        };
        double lo = lin(F[0].mig(), F[1].mig(), false);
        double hi = lin(F[0].mag(), F[1].mag(), true);
        double err = (FI(B[2]) * r3 / FI(3.0)).hi;
        return {std::max(0.0, dn(lo - err)), std::min(cap, up(hi + err))};
      }
      case Mode::Two: {
        FI v(0.0);
        double err = 0, cap = 0;
        for (const auto& f : comps_.parts) {
          if (f.empty()) continue;
          f.eval(m, 2, F);
          f.bound(a, b, 3, B);
          v += FI(2.0) * r * fi_sqr(F[0]) + r3 / FI(3.0) * (FI(2.0) * fi_sqr(F[1]) + FI(2.0) * F[0] * F[2]);
          err = up(err + (FI(6.0 * B[1]) * FI(B[2]) + FI(2.0 * B[0]) * FI(B[3])).hi);
          cap = up(cap + (FI(2.0) * r * FI(B[0]) * FI(B[0])).hi);
        }
        err = (FI(err) * r4 / FI(12.0)).hi;
        return {std::max(0.0, dn(v.lo - err)), std::min(cap, up(v.hi + err))};
      }
      case Mode::General: {
        double mig2 = 0, mag2 = 0;
        for (const auto& f : comps_.parts) {
          if (f.empty()) continue;
          f.eval(m, 1, F);
          f.bound(a, b, 2, B);
          double d = (FI(F[1].mag()) * r + FI(B[2]) * r2 * FI(0.5)).hi;
          FI e(dn(F[0].lo - d), up(F[0].hi + d));
          e.lo = std::max(e.lo, -B[0]);
          e.hi = std::min(e.hi, B[0]);
          mig2 = dn(mig2 + dn(e.mig() * e.mig()));
          mag2 = up(mag2 + up(e.mag() * e.mag()));
        }
        FI two_r = FI(2.0) * r;
        return {dn(two_r.lo * p_.pow_dn(sqrt_dn(mig2))), up(two_r.hi * p_.pow_up(sqrt_up(mag2)))};
      }
    }
    return FI::entire();
  }

  FI eval_product(double a, double b) const {
    const double m = 0.5 * a + 0.5 * b;
    const FI w = FI(b) - FI(a);
    const FI w3 = w * w * w;
    FI P[3], Pm[1];
    switch (mode_) {
      case Mode::One: {
        const FastSignal& f = comps_.parts[0];
        f.eval_p(a, b, 2, P);
        FI inv_pi = FI(1.0) / kPiFI;
        FI mean = FI(2.0) * inv_pi;  // mean of |sin(pi t)| over whole periods
        if (P[0].contains_zero()) {
          FI hi = w * mean * FI(P[0].mag()) * inv_pi;
          return {0.0, hi.hi};
        }
        f.eval_p(m, m, 0, Pm);
        FI core = w * mean * fi_abs(Pm[0]);
        double err = (FI(P[2].mag()) * w3 / FI(24.0)).hi;
        FI v = FI(dn(core.lo - err), up(core.hi + err)) * inv_pi;
        FI bounds = w * mean * FI(P[0].mig(), P[0].mag()) * inv_pi;
        return {std::max(v.lo, bounds.lo), std::min(v.hi, bounds.hi)};
      }
      case Mode::Two: {
        FI g(0.0);
        double G2 = 0, lo2 = 0, hi2 = 0;
        for (const auto& f : comps_.parts) {
          if (f.empty()) continue;
          f.eval_p(a, b, 2, P);
          f.eval_p(m, m, 0, Pm);
          g += fi_sqr(Pm[0]);
          G2 = up(G2 + up(2 * up(P[1].mag() * P[1].mag()) + 2 * up(P[0].mag() * P[2].mag())));
          lo2 = dn(lo2 + dn(P[0].mig() * P[0].mig()));
          hi2 = up(hi2 + up(P[0].mag() * P[0].mag()));
        }
        FI inv_pi2 = FI(1.0) / (kPiFI * kPiFI);
        FI core = w * FI(0.5) * g;
        double err = (FI(G2) * w3 / FI(24.0)).hi;
        FI v = FI(dn(core.lo - err), up(core.hi + err)) * inv_pi2;
        FI bounds = w * FI(0.5) * FI(lo2, hi2) * inv_pi2;
        return {std::max({0.0, v.lo, bounds.lo}), std::min(v.hi, bounds.hi)};
      }
      case Mode::General: {
        double mig2 = 0, mag2 = 0;
        for (const auto& f : comps_.parts) {
          if (f.empty()) continue;
          f.eval_p(a, b, 0, P);
          mig2 = dn(mig2 + dn(P[0].mig() * P[0].mig()));
          mag2 = up(mag2 + up(P[0].mag() * P[0].mag()));
        }
        FI k = w * sigma_ * pi_p_;
        return {dn(k.lo * p_.pow_dn(sqrt_dn(mig2))), up(k.hi * p_.pow_up(sqrt_up(mag2)))};
      }
    }
    return FI::entire();
  }

  const Components& comps_;
  Mode mode_;
  PExp p_;
  FI sigma_{1.0}, pi_p_{1.0};
  std::int64_t max_panels_;
  std::vector<Panel> heap_;
  double width_sum_ = 0;
};

// Taylor panels on [klo-1, khi+1], product panels out to [lo_end, hi_end].
void lay_out_line(Quadrature& q, const Components& c, double lo_end, double hi_end) {
  double a = static_cast<double>(c.klo) - 1, b = static_cast<double>(c.khi) + 1;
  for (double x = a; x < b; x += 1) q.add_taylor(x, x + 1);
  for (double x = b; x < hi_end;) {
    double w = std::max(1.0, std::floor((x - c.center) / 8));
    double y = std::min(hi_end, x + w);
    q.add_product(x, y);
    x = y;
  }
  for (double x = a; x > lo_end;) {
    double w = std::max(1.0, std::floor((c.center - x) / 8));
    double y = std::max(lo_end, x - w);
    q.add_product(y, x);
    x = y;
  }
}

Interval abs_scale(const Coefficients& c, mpfr_prec_t prec) { return to_interval(c.scale(), prec).abs(); }

Interval interval_of(double lo, double hi) { return from_fi(FI(lo, hi)); }

void check_precision(int M) {
  if (M < 0) fail(ErrorKind::GeneratorFailure, "precision must be nonnegative");
  if (M > 40) fail(ErrorKind::ResourceLimit, "signal norms are limited to M <= 40");
}

// Integral of |f|^p over the real line for the base coefficients, to total
// width <= target.
FI line_integral(const Components& c, Mode mode, const PExp& p, double target, std::int64_t max_panels) {
  const double tail_eps = target / 4;
  double R;
  if (mode == Mode::One || (mode == Mode::General && p.is_one)) {
    double A = c.first_moment_abs(c.center);
    R = c.rho + up(2 * A / (kPiFI.lo * tail_eps));
  } else if (mode == Mode::Two) {
    double S = c.abs_sum();
    R = c.rho + up(2 * S * S / (kPiFI.lo * kPiFI.lo * tail_eps));
  } else {
    double S = c.abs_sum();
    double k = up(2 * p.pow_up(up(S / kPiFI.lo)) / (dn(p.lo - 1) * tail_eps));
    R = c.rho + up(std::pow(k, 1.0 / dn(p.lo - 1)) * 1.000001);
  }
  if (!(R < 0x1p45)) fail(ErrorKind::ResourceLimit, "truncation radius too large");
  R = std::ceil(R) + 1;
  double hi_end = std::ceil(c.center + R), lo_end = std::floor(c.center - R);
  double Rmin = std::min(hi_end - c.center, c.center - lo_end);
  double tail;
  if (mode == Mode::One || (mode == Mode::General && p.is_one)) {
    tail = up(2 * c.first_moment_abs(c.center) / (kPiFI.lo * dn(Rmin - c.rho)));
  } else if (mode == Mode::Two) {
    double S = c.abs_sum();
    tail = up(2 * S * S / (kPiFI.lo * kPiFI.lo * dn(Rmin - c.rho)));
  } else {
    double S = c.abs_sum();
    tail = up(2 * p.pow_up(up(S / kPiFI.lo)) * p.pow_up(1.0 / dn(Rmin - c.rho)) * dn(Rmin - c.rho) / dn(p.lo - 1));
  }
  Quadrature q(c, mode, p, max_panels);
  lay_out_line(q, c, lo_end, hi_end);
  q.refine(target - tail);
  FI t = q.total();
  return {t.lo, up(t.hi + tail)};
}

struct Bracket {
  double lo, hi;
};

// Branch and bound for max |f| over [a, b] with initial panels of the
// given width (a power of two dividing b - a), or of growing width away
// from the support when width <= 0.
Bracket branch_and_bound(const Components& c, double a, double b, double width, double eps,
                         std::int64_t max_panels) {
  struct Box {
    double a, b, upper;
  };
  auto less = [](const Box& x, const Box& y) {
    if (x.upper != y.upper) return x.upper < y.upper;
    return x.a > y.a;
  };
  std::vector<Box> heap;
  double L = 0;
  FI F[2];
  double B[3];
  auto eval = [&](double x, double y) {
    const double m = 0.5 * x + 0.5 * y;
    const double r = up(0.5 * (y - x));
    double u2 = 0, l2 = 0;
    for (const auto& f : c.parts) {
      if (f.empty()) continue;
      f.eval(m, 1, F);
      f.bound(x, y, 2, B);
      double u = up(up(F[0].mag() + up(F[1].mag() * r)) + up(up(B[2] * r) * r * 0.5));
      u = std::min(u, B[0]);
      u2 = up(u2 + up(u * u));
      l2 = dn(l2 + dn(F[0].mig() * F[0].mig()));
    }
    double upper = c.parts.size() == 1 ? sqrt_up(u2) : sqrt_up(u2);
    L = std::max(L, sqrt_dn(l2));
    heap.push_back({x, y, upper});
    std::push_heap(heap.begin(), heap.end(), less);
  };
  if (width > 0) {
    for (double x = a; x < b; x += width) eval(x, std::min(b, x + width));
  } else {
    double s0 = std::max(a, static_cast<double>(c.klo) - 1), s1 = std::min(b, static_cast<double>(c.khi) + 1);
    if (s0 >= s1) s0 = s1 = std::clamp(std::floor(c.center), a, b);
    for (double x = s0; x < s1; x += 1) eval(x, std::min(s1, x + 1));
    for (double x = s1; x < b;) {
      double w = std::max(1.0, std::floor((x - c.center) / 4));
      double y = std::min(b, x + w);
      eval(x, y);
      x = y;
    }
    for (double x = s0; x > a;) {
      double w = std::max(1.0, std::floor((c.center - x) / 4));
      double y = std::max(a, x - w);
      eval(y, x);
      x = y;
    }
  }
  std::int64_t steps = 0;
  while (!heap.empty()) {
    const Box& top = heap.front();
    if (top.upper <= L) {
      std::pop_heap(heap.begin(), heap.end(), less);
      heap.pop_back();
      continue;
    }
    if (top.upper - L <= eps) break;
    Box bx = top;
    std::pop_heap(heap.begin(), heap.end(), less);
    heap.pop_back();
    if ((bx.b - bx.a) / 2 < kMinRadius) fail(ErrorKind::ResourceLimit, "peak search cannot reach the requested width");
    double m = 0.5 * bx.a + 0.5 * bx.b;
    eval(bx.a, m);
    eval(m, bx.b);
    if (++steps > max_panels) fail(ErrorKind::ResourceLimit, "peak search panel budget exhausted");
  }
  double U = heap.empty() ? L : std::max(L, heap.front().upper);
  return {L, U};
}

double scale_hi(const Coefficients& c) { return abs_scale(c, 64).hi().to_double(MPFR_RNDU); }

bool is_zero_signal(const Coefficients& c, const Components& comps) {
  return comps.empty || value_is_zero(c.scale());
}

double as_exact_double(const Rational& q, const char* what) {
  double d = q.to_double();
  if (!std::isfinite(d) || Rational(mpq_class(d)) != q)
    fail(ErrorKind::ValidationError, std::string(what) + " must be a dyadic rational representable as a double");
  return d;
}

}  // namespace

// ---------------------------------------------------------------- sequences

std::optional<Rational> lp_norm_sequence_exact(const ElementarySequence& x, const Exponent& p) {
  const Coefficients& c = x.c;
  if (!c.base_exact() || !is_exact(c.scale())) return std::nullopt;
  if (!p.inf && !p.is(1) && !p.is(2)) return std::nullopt;
  bool has_im = false;
  Rational acc(0);
  bool too_big = false;
  c.for_each([&](std::int64_t, const Value& re, const Value* im) {
    if (too_big || has_im) return;
    if (im && !exact(*im).is_zero()) {
      has_im = true;
      return;
    }
    const Rational& v = exact(re);
    if (p.inf) {
      Rational a = v.abs();
      if (a > acc) acc = a;
    } else if (p.is(1)) {
      acc = acc + v.abs();
    } else {
      acc = acc + v * v;
    }
    if (acc.bit_size() > (1u << 20)) too_big = true;
  });
  if (has_im || too_big) return std::nullopt;
  Rational s = exact(c.scale()).abs();
  if (p.is(2)) {
    const BigInt& n = acc.numerator();
    const BigInt& d = acc.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    BigInt rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd) * s;
  }
  return acc * s;
}

Interval lp_norm_sequence(const ElementarySequence& x, const Exponent& p, int M) {
  if (M < 0) fail(ErrorKind::GeneratorFailure, "precision must be nonnegative");
  if (auto q = lp_norm_sequence_exact(x, p)) {
    long mag = static_cast<long>(mpz_sizeinbase(q->numerator().get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(q->denominator().get_mpz_t(), 2));
    return Interval::from_rational(*q, static_cast<mpfr_prec_t>(std::max(64L, M + 8 + std::max(0L, mag + 2))));
  }
  const Coefficients& c = x.c;
  long bits = 1;
  while ((std::int64_t{1} << bits) < c.size() + 1 && bits < 62) ++bits;
  mpfr_prec_t prec = M + 64 + bits;
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
    Interval acc = Interval::from_int(0, prec);
    bool first = true;
    c.for_each([&](std::int64_t, const Value& re, const Value* im) {
      Interval a = to_interval(re, prec);
      Interval m = im ? (a.sqr() + to_interval(*im, prec).sqr()).sqrt() : a.abs();
      if (p.inf) {
        if (first) {
          acc = m;
        } else {
          Float lo(prec), hi(prec);
          mpfr_max(lo.get(), acc.lo().get(), m.lo().get(), MPFR_RNDD);
          mpfr_max(hi.get(), acc.hi().get(), m.hi().get(), MPFR_RNDU);
          acc = Interval(std::move(lo), std::move(hi));
        }
      } else if (p.is(1)) {
        acc = acc + m;
      } else if (p.is(2)) {
        acc = acc + m.sqr();
      } else {
        acc = acc + m.pow_rational(p.value);
      }
      first = false;
    });
    if (!p.inf && !p.is(1)) acc = p.is(2) ? acc.sqrt() : acc.pow_rational(p.value.inverse());
    acc = acc * abs_scale(c, prec);
    if (acc.log2_width() <= -M) return acc;
  }
  fail(ErrorKind::ResourceLimit, "sequence norm enclosure too wide");
}

// ---------------------------------------------------------------- signals

Integrability check_integrable(const ElementarySignal& f, int M) {
  const Coefficients& c = f.c;
  if (value_is_zero(c.scale())) return Integrability::Integrable;
  if (c.base_exact()) {
    Rational re(0), im(0);
    bool all_exact = true;
    c.for_each([&](std::int64_t k, const Value& r, const Value* i) {
      if (!all_exact || !is_exact(r) || (i && !is_exact(*i))) {
        all_exact = false;
        return;
      }
      bool odd = k % 2 != 0;
      re = odd ? re - exact(r) : re + exact(r);
      if (i) im = odd ? im - exact(*i) : im + exact(*i);
    });
    if (all_exact)
      return re.is_zero() && im.is_zero() ? Integrability::Integrable : Integrability::NotIntegrable;
  }
  mpfr_prec_t prec = M + 8 + 64;
  Interval re = Interval::from_int(0, prec), im = Interval::from_int(0, prec);
  c.for_each([&](std::int64_t k, const Value& r, const Value* i) {
    Interval a = to_interval(r, prec);
    re = (k % 2 != 0) ? re - a : re + a;
    if (i) {
      Interval b = to_interval(*i, prec);
      im = (k % 2 != 0) ? im - b : im + b;
    }
  });
  Interval s = to_interval(c.scale(), prec);
  re = re * s;
  im = im * s;
  if (re.excludes_zero() || im.excludes_zero()) return Integrability::NotIntegrable;
  return Integrability::Inconclusive;
}

Interval l1_norm_signal(const ElementarySignal& f, int M, const NormOptions& o) {
  check_precision(M);
  switch (check_integrable(f, M)) {
    case Integrability::NotIntegrable:
      fail(ErrorKind::NotIntegrable, "sum of (-1)^k c_k is not zero; the signal is not integrable");
    case Integrability::Inconclusive:
      fail(ErrorKind::Inconclusive, "sum of (-1)^k c_k cannot be separated from zero at this precision");
    case Integrability::Integrable: break;
  }
  Components comps(f.c);
  if (is_zero_signal(f.c, comps)) return Interval::from_int(0);
  Mode mode = f.c.is_complex() ? Mode::General : Mode::One;
  PExp p = PExp::of(Exponent::of(Rational(1)));
  double target = std::ldexp(1.0, -M - 1) / scale_hi(f.c);
  for (int attempt = 0; attempt < 4; ++attempt, target /= 8) {
    FI v = line_integral(comps, mode, p, target, o.max_panels);
    Interval r = interval_of(v.lo, v.hi) * abs_scale(f.c, 64 + M);
    if (r.log2_width() <= -M) return r;
  }
  fail(ErrorKind::ResourceLimit, "L1 enclosure too wide");
}

Interval l2_norm_signal(const ElementarySignal& f, int M) {
  return lp_norm_sequence(sample(f), Exponent::of(Rational(2)), M);
}

Interval l2_norm_quadrature(const ElementarySignal& f, int M, const NormOptions& o) {
  check_precision(M);
  Components comps(f.c);
  if (is_zero_signal(f.c, comps)) return Interval::from_int(0);
  PExp p = PExp::of(Exponent::of(Rational(2)));
  double s = scale_hi(f.c);
  double target = std::ldexp(1.0, -M - 2) / (s * s);
  for (int attempt = 0; attempt < 6; ++attempt, target /= 8) {
    FI v = line_integral(comps, Mode::Two, p, target, o.max_panels);
    Interval r = interval_of(std::max(0.0, v.lo), v.hi).sqrt() * abs_scale(f.c, 64 + M);
    if (r.log2_width() <= -M) return r;
  }
  fail(ErrorKind::ResourceLimit, "L2 quadrature enclosure too wide");
}

Interval lp_norm_signal(const ElementarySignal& f, const Exponent& p, int M, const NormOptions& o) {
  if (p.inf) return peak_value(f, M, o);
  if (p.is(1)) return l1_norm_signal(f, M, o);
  if (p.is(2)) return l2_norm_signal(f, M);
  check_precision(M);
  if (p.value <= Rational(1)) fail(ErrorKind::ValidationError, "p must be at least 1");
  Components comps(f.c);
  if (is_zero_signal(f.c, comps)) return Interval::from_int(0);
  PExp pe = PExp::of(p);
  double s = scale_hi(f.c);
  double target = std::ldexp(1.0, -M - 2) / std::max(1.0, pe.pow_up(s));
  for (int attempt = 0; attempt < 5; ++attempt, target /= 8) {
    FI v = line_integral(comps, Mode::General, pe, target, o.max_panels);
    Interval r = interval_of(std::max(0.0, v.lo), v.hi).pow_rational(p.value.inverse()) * abs_scale(f.c, 64 + M);
    if (r.log2_width() <= -M) return r;
  }
  fail(ErrorKind::ResourceLimit, "Lp enclosure too wide");
}

Interval peak_value(const ElementarySignal& f, int M, const NormOptions& o) {
  check_precision(M);
  Components comps(f.c);
  if (is_zero_signal(f.c, comps)) return Interval::from_int(0);
  const double L = static_cast<double>(f.c.half_width());
  const double S = comps.abs_sum();
  double T;
  if (o.T) {
    T = std::ceil(o.T->to_double());
    if (!(T > L)) fail(ErrorKind::ValidationError, "truncation radius must exceed the window half-width");
  } else {
    T = L + std::max(20.0, std::ceil(std::ldexp(1.0, M / 2)));
  }
  double eps = std::ldexp(1.0, -M - 1) / scale_hi(f.c);
  for (int attempt = 0; attempt < 24; ++attempt) {
    Bracket br = branch_and_bound(comps, -T, T, 0, eps, o.max_panels);
    double tail = up(S / dn(kPiFI.lo * dn(T - L)));
    if (!(tail < br.lo)) {
      T = 2 * T - L;  // the outside could still hold the maximum
      continue;
    }
    Interval r = interval_of(br.lo, br.hi) * abs_scale(f.c, 64 + M);
    if (r.log2_width() <= -M) return r;
    eps /= 4;
  }
  fail(ErrorKind::ResourceLimit, "peak search did not converge");
}

Interval time_concentration(const ElementarySignal& f, const Rational& Lc, const Exponent& p, int M,
                            const NormOptions& o) {
  check_precision(M);
  if (Lc.sign() <= 0) fail(ErrorKind::ValidationError, "concentration radius must be positive");
  const double lc = as_exact_double(Lc, "concentration radius");
  Components comps(f.c);
  if (is_zero_signal(f.c, comps)) return Interval::from_int(0);
  // initial panels: a power of two count with width <= 1
  double n = 1;
  while (2 * lc / n > 1) n *= 2;
  const double width = 2 * lc / n;
  double s = scale_hi(f.c);
  if (p.inf) {
    double eps = std::ldexp(1.0, -M - 1) / s;
    for (int attempt = 0; attempt < 4; ++attempt, eps /= 4) {
      Bracket br = branch_and_bound(comps, -lc, lc, width, eps, o.max_panels);
      Interval r = interval_of(br.lo, br.hi) * abs_scale(f.c, 64 + M);
      if (r.log2_width() <= -M) return r;
    }
    fail(ErrorKind::ResourceLimit, "concentration enclosure too wide");
  }
  PExp pe = PExp::of(p);
  Mode mode = pe.is_two ? Mode::Two : (pe.is_one && !f.c.is_complex() ? Mode::One : Mode::General);
  Interval sp = pe.is_one ? abs_scale(f.c, 64 + M) : abs_scale(f.c, 64 + M).pow_rational(p.value);
  double target = std::ldexp(1.0, -M - 1) / std::max(1e-300, sp.hi().to_double(MPFR_RNDU));
  for (int attempt = 0; attempt < 4; ++attempt, target /= 8) {
    Quadrature q(comps, mode, pe, o.max_panels);
    for (double x = -lc; x < lc; x += width) q.add_taylor(x, x + width);
    q.refine(target);
    FI v = q.total();
    Interval r = interval_of(std::max(0.0, v.lo), v.hi) * sp;
    if (r.log2_width() <= -M) return r;
  }
  fail(ErrorKind::ResourceLimit, "concentration enclosure too wide");
}

// ---------------------------------------------------------------- tails

namespace {

struct TailSums {
  double S = 0;   // sum |c_k|
  double A0 = 0;  // sum |c_k| |k|
  double L = 0;
};

TailSums tail_sums(const ElementarySignal& f) {
  Components comps(f.c);
  TailSums t;
  double s = scale_hi(f.c);
  t.S = up(comps.abs_sum() * s);
  t.A0 = up(comps.first_moment_abs(0.0) * s);
  t.L = static_cast<double>(f.c.half_width());
  return t;
}

}  // namespace

TailBound sup_tail(const ElementarySignal& f, double T) {
  TailSums t = tail_sums(f);
  if (!(T > t.L)) fail(ErrorKind::ValidationError, "tail radius must exceed the window half-width");
  return {TailBound::Kind::Sup, T, up(t.S / dn(kPiFI.lo * dn(T - t.L)))};
}

TailBound l1_tail(const ElementarySignal& f, double T) {
  if (check_integrable(f, 20) != Integrability::Integrable)
    fail(ErrorKind::NotIntegrable, "L1 tail needs an integrable signal");
  TailSums t = tail_sums(f);
  if (!(T > t.L)) fail(ErrorKind::ValidationError, "tail radius must exceed the window half-width");
  return {TailBound::Kind::L1, T, up(2 * t.A0 / dn(kPiFI.lo * dn(T - t.L)))};
}

TailBound l2_tail(const ElementarySignal& f, double T) {
  TailSums t = tail_sums(f);
  if (!(T > t.L)) fail(ErrorKind::ValidationError, "tail radius must exceed the window half-width");
  return {TailBound::Kind::L2, T, up(2 * t.S * t.S / dn(kPiFI.lo * kPiFI.lo * dn(T - t.L)))};
}

double tail_envelope(const ElementarySignal& f, double t) {
  TailSums s = tail_sums(f);
  double at = std::fabs(t);
  if (!(at > s.L)) return std::numeric_limits<double>::infinity();
  double e = up(s.S / dn(kPiFI.lo * dn(at - s.L)));
  if (check_integrable(f, 20) == Integrability::Integrable)
    e = std::min(e, up(s.A0 / dn(dn(kPiFI.lo * at) * dn(at - s.L))));
  return e;
}

Interval l1_norm_coefficients(std::int64_t lo, const std::vector<Value>& coeffs, int bits) {
  ElementarySignal f{Coefficients(lo, coeffs)};
  return l1_norm_signal(f, bits);
}

}  // namespace bandlim
