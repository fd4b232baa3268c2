// SPDX-License-Identifier: Apache-2.0
#include "bandlim/kernel.hpp"

#include <algorithm>

namespace bandlim {

namespace {

constexpr int kLeafSize = 16;
constexpr int kMaxMoments = 40;

const double kFact[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800};
const double kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

// (j+1)(j+2)...(j+d)
double rising(int j, int d) {
  double r = 1;
  for (int i = 1; i <= d; ++i) r *= j + i;
  return r;
}

// Lower bound of x - y, exact when the difference is representable.
double sub_dn(double x, double y) {
  double s = x - y;
  double bb = s - x;
  double err = (x - (s - bb)) + (-y - bb);  // TwoSum error term
  return err < 0 ? FI::dn(s) : s;
}

double dist_to(double c, double a, double b) {
  if (c < a) return sub_dn(a, c);
  if (c > b) return sub_dn(c, b);
  return 0.0;
}

FI trig(const FI& s, const FI& c, int j) {
  switch (j % 4) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
  }
}

FI pi_pow(int e) {
  FI r(1.0);
  for (int i = 0; i < e; ++i) r = r * kPiFI;
  for (int i = 0; i > e; --i) r = r / kPiFI;
  return r;
}

FI fi_pow(const FI& x, int e) {
  FI r(1.0);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

}  // namespace

FI to_fi(const Interval& v) { return {v.lo().to_double(MPFR_RNDD), v.hi().to_double(MPFR_RNDU)}; }

FI to_fi(const Value& v) {
  if (std::holds_alternative<Interval>(v)) return to_fi(std::get<Interval>(v));
  const Rational& q = exact(v);
  if (q.is_integer() && q.numerator().fits_slong_p()) {
    long n = q.numerator().get_si();
    if (n > -(1L << 53) && n < (1L << 53)) return FI(static_cast<double>(n));
  }
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDD);
  double lo = mpfr_get_d(t, MPFR_RNDD);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
  double hi = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return {lo, hi};
}

FI fi_sinc(const FI& x, int d) {
  if (x.mag() <= 0.25) {
    FI acc(0.0);
    int j0 = (d + 1) / 2;
    FI pi2 = kPiFI * kPiFI;
    FI p2j = pi_pow(2 * j0);
    for (int j = j0; j < j0 + 40; ++j) {
      double f = 1;  // (2j - d)!
      for (int i = 2; i <= 2 * j - d; ++i) f *= i;
      double den = (2.0 * j + 1) * f;
      FI term = p2j * fi_pow(x, 2 * j - d) / FI(den);
      acc += (j % 2) ? -term : term;
      double mag_next = (p2j * pi2).hi * std::pow(x.mag(), 2 * j + 2 - d) / ((2.0 * j + 3) * f * (2 * j + 1 - d) * (2 * j + 2 - d));
      if (j > j0 && mag_next < 1e-22 * std::max(1e-300, std::fabs(acc.mid()))) {
        double rem = FI::up(2.5 * mag_next);
        return {FI::dn(acc.lo - rem), FI::up(acc.hi + rem)};
      }
      if (j > j0 && mag_next < 1e-300) return acc;
      p2j = p2j * pi2;
    }
    // |x| <= 1/4 makes 40 terms far more than enough; keep a safe fallback
    double b = pi_pow(d).hi / (d + 1);
    return {-b, b};
  }
  FI xr = x;
  double sgn = 1;
  if (x.mid() > 0.5) {
    xr = x - FI(1.0);
    sgn = -1;
  } else if (x.mid() < -0.5) {
    xr = x + FI(1.0);
    sgn = -1;
  }
  FI s, c;
  fi_sincospi_reduced(xr, s, c);
  if (sgn < 0) {
    s = -s;
    c = -c;
  }
  FI inv = FI(1.0) / x;
  FI acc(0.0);
  for (int i = 0; i <= d; ++i) {
    double coef = kBinom[d][i] * kFact[d - i] * ((d - i) % 2 ? -1.0 : 1.0);
    acc += trig(s, c, i) * pi_pow(i - 1) * fi_pow(inv, d - i + 1) * FI(coef);
  }
  return acc;
}

FastSignal::FastSignal(const Coefficients& c, bool imag) {
  if (c.size() > kMaxSupport) fail(ErrorKind::ResourceLimit, "support too large for the fast kernel");
  if (imag && !c.is_complex()) return;
  c.for_each([&](std::int64_t k, const Value& re, const Value* im) {
    const Value& v = imag ? *im : re;
    if (value_is_zero(v)) return;
    FI cc = to_fi(v);
    FI a = (k % 2 != 0) ? -cc : cc;
    terms_.push_back({k, a, cc});
  });
  if (terms_.empty()) return;
  klo_ = terms_.front().k;
  khi_ = terms_.back().k;
  center_ = 0.5 * static_cast<double>(klo_) + 0.5 * static_cast<double>(khi_);
  radius_ = 0.5 * static_cast<double>(khi_ - klo_);
  build(0, terms_.size());
  abs_sum_ = nodes_[0].S;
  FI alt(0.0);
  double first = 0;
  for (const auto& t : terms_) {
    alt += t.a;
    first = FI::up(first + FI::up(t.a.mag() * std::fabs(static_cast<double>(t.k) - center_)));
  }
  alt_sum_ = alt;
  first_abs_ = first;
}

double FastSignal::first_moment_abs(double c) const {
  double s = 0;
  for (const auto& t : terms_) s = FI::up(s + FI::up(t.a.mag() * FI::up(std::fabs(static_cast<double>(t.k) - c))));
  return s;
}

int FastSignal::build(std::size_t begin, std::size_t end) {
  Node n;
  n.begin = begin;
  n.end = end;
  double k0 = static_cast<double>(terms_[begin].k), k1 = static_cast<double>(terms_[end - 1].k);
  n.center = 0.5 * k0 + 0.5 * k1;
  n.rho = std::max(0.5, 0.5 * (k1 - k0));
  n.mu = moments_.size();
  moments_.resize(moments_.size() + kMaxMoments + 1, FI(0.0));
  double S = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const Term& t = terms_[i];
    S = FI::up(S + t.a.mag());
    FI x = FI(static_cast<double>(t.k) - n.center) / FI(n.rho);  // |x| <= 1
    FI xp(1.0);
    for (int j = 0; j <= kMaxMoments; ++j) {
      moments_[n.mu + j] += t.a * xp;
      xp = xp * x;
    }
  }
  n.S = S;
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(n);
  if (end - begin > static_cast<std::size_t>(kLeafSize)) {
    std::size_t mid = begin + (end - begin) / 2;
    int l = build(begin, mid);
    int r = build(mid, end);
    nodes_[id].left = l;
    nodes_[id].right = r;
  }
  return id;
}

void FastSignal::walk(int id, const FI& t, int D, FI* P, FI* near_point, double* near_bound,
                      bool point) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  const double a = t.lo, b = t.hi;
  double dist = dist_to(n.center, a, b);
  if (dist >= 3 * n.rho + 2) {
    double q = FI::up(n.rho / dist);
    int J = kMaxMoments;
    if (q < 1e-300) {
      J = 0;
    } else {
      J = static_cast<int>(std::ceil(60.0 * std::log(2.0) / -std::log(q)));
      J = std::clamp(J, 2, kMaxMoments);
    }
    FI w = FI(1.0) / (t - FI(n.center));
    FI z = FI(n.rho) * w;
    FI sums[kMaxOrder + 1];
    for (int d = 0; d <= D; ++d) sums[d] = FI(0.0);
    FI zj(1.0);
    for (int j = 0; j <= J; ++j) {
      FI m = moments_[n.mu + j] * zj;
      for (int d = 0; d <= D; ++d) sums[d] += (d == 0 ? m : m * FI(rising(j, d)));
      zj = zj * z;
    }
    // remainder S (J+2)_d q^(J+1) / ((1-q)^(d+1) dist^(d+1))
    double qJ = FI::up(std::pow(q, J + 1) * (1 + 1e-12));
    double omq = FI::dn(1 - q);
    FI wp = w;
    for (int d = 0; d <= D; ++d) {
      double R = FI::up(n.S * rising(J + 1, d) * qJ / std::pow(omq * dist, d + 1) * (1 + 1e-12));
      FI v = wp * sums[d];
      if (d % 2) v = -v;
      P[d] += FI(FI::dn(v.lo - R), FI::up(v.hi + R));
      wp = wp * w;
    }
    return;
  }
  if (n.left < 0) {
    for (std::size_t i = n.begin; i < n.end; ++i) {
      const Term& tm = terms_[i];
      double k = static_cast<double>(tm.k);
      double dk = dist_to(k, a, b);
      if (dk >= 1.0) {
        FI inv = FI(1.0) / (t - FI(k));
        FI ip = inv;
        for (int d = 0; d <= D; ++d) {
          FI v = tm.a * ip * FI(kFact[d]);
          P[d] += (d % 2) ? -v : v;
          ip = ip * inv;
        }
      } else if (point) {
        FI x = t - FI(k);
        for (int d = 0; d <= D; ++d) near_point[d] += tm.c * fi_sinc(x, d);
      } else {
        for (int d = 0; d <= D; ++d) near_bound[d] = FI::up(near_bound[d] + FI::up(tm.c.mag() * pi_pow(d).hi / (d + 1)));
      }
    }
    return;
  }
  walk(n.left, t, D, P, near_point, near_bound, point);
  walk(n.right, t, D, P, near_point, near_bound, point);
}

void FastSignal::eval(double t, int D, FI* out) const {
  for (int d = 0; d <= D; ++d) out[d] = FI(0.0);
  if (terms_.empty()) return;
  FI P[kMaxOrder + 1], near[kMaxOrder + 1];
  double nb[kMaxOrder + 1] = {0, 0, 0, 0};
  for (int d = 0; d <= D; ++d) P[d] = near[d] = FI(0.0);
  walk(0, FI(t), D, P, near, nb, true);
  FI s, c;
  fi_sincospi(t, s, c);
  for (int d = 0; d <= D; ++d) {
    FI acc = near[d];
    for (int i = 0; i <= d; ++i) {
      acc += FI(kBinom[d][i]) * pi_pow(d - i - 1) * trig(s, c, d - i) * P[i];
    }
    out[d] = acc;
  }
}

void FastSignal::bound(double a, double b, int D, double* out) const {
  for (int d = 0; d <= D; ++d) out[d] = 0.0;
  if (terms_.empty()) return;
  FI P[kMaxOrder + 1], near[kMaxOrder + 1];
  double nb[kMaxOrder + 1] = {0, 0, 0, 0};
  for (int d = 0; d <= D; ++d) P[d] = near[d] = FI(0.0);
  walk(0, FI(a, b), D, P, near, nb, false);
  for (int d = 0; d <= D; ++d) {
    double acc = nb[d];
    for (int i = 0; i <= d; ++i) acc = FI::up(acc + FI::up(kBinom[d][i] * pi_pow(d - i - 1).hi * P[i].mag()));
    // |sinc^(d)| <= pi^d / (d+1)
    out[d] = std::min(acc, FI::up(pi_pow(d).hi * abs_sum_ / (d + 1) * (1 + 1e-15)));
  }
}

void FastSignal::eval_p(double a, double b, int D, FI* out) const {
  for (int d = 0; d <= D; ++d) out[d] = FI(0.0);
  if (terms_.empty()) return;
  FI near[kMaxOrder + 1];
  double nb[kMaxOrder + 1] = {0, 0, 0, 0};
  for (int d = 0; d <= D; ++d) near[d] = FI(0.0);
  walk(0, FI(a, b), D, out, near, nb, a == b);
  for (int d = 0; d <= D; ++d)
    if (nb[d] != 0.0 || near[d].lo != 0.0 || near[d].hi != 0.0)
      fail(ErrorKind::GeneratorFailure, "product panel touches the support");
}

}  // namespace bandlim
