// SPDX-License-Identifier: Apache-2.0
#include "bandlim/verify.hpp"

#include <random>
#include <sstream>

#include "bandlim/compilers.hpp"
#include "bandlim/fuzz.hpp"

namespace bandlim {

namespace {

std::string dec(const Interval& x, int digits = 10) { return x.decimal_str(digits); }

Float pow2(long e) {
  Float f(64);
  mpfr_set_ui_2exp(f.get(), 1, e, MPFR_RNDN);
  return f;
}

bool width_le(const Interval& x, long e) { return mpfr_cmp(x.width().get(), pow2(e).get()) <= 0; }

void add(SuiteReport& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

SuiteReport lemma1(const VerifyOptions& o) {
  SuiteReport r{"lemma1", {}};
  for (long n = 1; n <= o.n_max; ++n) {
    GWitness w = build_g_witness(n, o.budget);
    std::string tag = "n=" + std::to_string(n) + " ";
    add(r, tag + "f_n(1/2) encloses 1, width <= 2^-20", w.value_ok, dec(w.value_half, 20));
    add(r, tag + "||S f_n||_inf < 1/n", w.sample_ok, dec(w.sample_sup));
    add(r, tag + "|C(N)| > log2(N)/4", w.c_bound_ok, "|C| = " + dec(w.C.abs()) + ", log2(N)/4 = " + std::to_string(2 * n));
    add(r, tag + "C(N) summation and harmonic routes agree", w.routes_agree, dec(w.C_direct) + " vs " + dec(w.C));
  }
  return r;
}

SuiteReport lemma3(const VerifyOptions& o) {
  SuiteReport r{"lemma3", {}};
  for (long N : {8L, 64L, 512L}) {
    QWitness w = build_q_witness(N, 10, o.budget);
    std::string tag = "N=" + std::to_string(N) + " ";
    add(r, tag + "||q_N||_1 inside the sandwich", w.inside,
        dec(w.l1) + " in (" + dec(w.lower, 6) + ", " + dec(w.upper, 6) + ")");
    add(r, tag + "enclosure width <= 2^-10", width_le(w.l1, -10), "log2 width " + std::to_string(w.l1.log2_width()));
    add(r, tag + "||S q_N||_1 = 2", w.sample_l1 == Rational(2), w.sample_l1.str());
  }
  return r;
}

SuiteReport lemma4(const VerifyOptions& o) {
  SuiteReport r{"lemma4-scaled", {}};
  std::optional<Interval> prev;
  for (long N : {64L, 512L, 4096L}) {
    NormalizedQ q = build_normalized_q_family(1, BigInt(N), 10, QSchedule::Scaled, o.budget);
    std::string tag = "N=" + std::to_string(N) + " ";
    add(r, tag + "||f||_1 encloses 1", q.norm.contains(Rational(1)), dec(q.norm));
    add(r, tag + "widths <= 2^-10", width_le(q.norm, -10) && width_le(q.sample_norm, -10),
        dec(q.sample_norm) + " (sample norm)");
    if (prev)
      add(r, tag + "||S f||_1 strictly below the previous N", mpfr_cmp(q.sample_norm.hi().get(), prev->lo().get()) < 0,
          dec(q.sample_norm) + " < " + dec(*prev));
    prev = q.sample_norm;
  }
  return r;
}

SuiteReport roundtrip(const VerifyOptions& o) {
  SuiteReport r{"roundtrip-p2", {}};
  std::mt19937_64 rng(o.seed);
  FuzzOptions fo;
  fo.p = Exponent::of(Rational(2));
  int coeff_fail = 0, mod_fail = 0, dist_fail = 0, shift_nonzero = 0;
  const int docs = 50;
  for (int i = 0; i < docs; ++i) {
    Document d = random_document(rng, fo);
    RoundTripReport rep = roundtrip_check(d, 16, o.M);
    if (!rep.modulus_ok) ++mod_fail;
    if (rep.shift != 0) ++shift_nonzero;
    for (const auto& row : rep.rows) {
      if (!row.coefficients_equal) ++coeff_fail;
      if (!row.distance_ok) ++dist_fail;
    }
  }
  add(r, "coefficients reproduced exactly", coeff_fail == 0, std::to_string(coeff_fail) + " mismatches");
  add(r, "moduli equal xi(c + M) for M = 0..32", mod_fail == 0, std::to_string(mod_fail) + " mismatches");
  add(r, "shift constant c = 0", shift_nonzero == 0, std::to_string(shift_nonzero) + " documents with c != 0");
  add(r, "distances <= 2^-M", dist_fail == 0, std::to_string(dist_fail) + " failures at M = " + std::to_string(o.M));
  return r;
}

SuiteReport soundness(const VerifyOptions& o) {
  SuiteReport r{"soundness", {}};
  std::mt19937_64 rng(o.seed);
  int cases = 0, misses = 0, div0 = 0;
  mpfr_t ref, slack;
  mpfr_init2(ref, 256);
  mpfr_init2(slack, 256);
  while (cases < 1000) {
    ExprPtr e = random_expression(rng, {}, 4, true);
    Interval v;
    try {
      v = interval_eval(*e, 40);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DivisionByZero) throw;
      ++div0;
      continue;
    }
    ++cases;
    reference_value(ref, *e, 256);
    // the reference is accurate to far below 2^-200 relative
    mpfr_abs(slack, ref, MPFR_RNDU);
    mpfr_mul_2si(slack, slack, -200, MPFR_RNDU);
    mpfr_t a;
    mpfr_init2(a, 256);
    mpfr_add(a, ref, slack, MPFR_RNDU);
    bool below = mpfr_cmp(v.lo().get(), a) <= 0;
    mpfr_sub(a, ref, slack, MPFR_RNDD);
    bool above = mpfr_cmp(v.hi().get(), a) >= 0;
    mpfr_clear(a);
    if (!(below && above)) ++misses;
  }
  mpfr_clear(ref);
  mpfr_clear(slack);
  add(r, "interval evaluation contains the 256-bit reference", misses == 0,
      std::to_string(misses) + " misses in " + std::to_string(cases) + " cases");

  FuzzOptions fo;
  fo.kind = Kind::Continuous;
  int parseval = 0, quad = 0;
  for (int i = 0; i < 50; ++i) {
    Document d = random_document(rng, fo);
    ElementarySignal f = instantiate_signal(d, i % 4);
    Interval a = l2_norm_signal(f, o.M);
    Interval b = lp_norm_sequence(sample(f), Exponent::of(Rational(2)), o.M);
    if (!(mpfr_equal_p(a.lo().get(), b.lo().get()) && mpfr_equal_p(a.hi().get(), b.hi().get()))) ++parseval;
    Interval c = l2_norm_quadrature(f, 12);
    if (!a.intersects(c)) ++quad;
  }
  add(r, "l2 norm equals the sample l2 norm", parseval == 0, std::to_string(parseval) + " mismatches in 50 signals");
  add(r, "l2 norm agrees with quadrature of |f|^2", quad == 0, std::to_string(quad) + " disjoint in 50 signals");
  return r;
}

}  // namespace

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1", "lemma3", "lemma4-scaled", "roundtrip-p2", "soundness"};
  return names;
}

SuiteReport verify_suite(const std::string& suite, const VerifyOptions& o) {
  if (suite == "lemma1") return lemma1(o);
  if (suite == "lemma3") return lemma3(o);
  if (suite == "lemma4-scaled") return lemma4(o);
  if (suite == "roundtrip-p2") return roundtrip(o);
  if (suite == "soundness") return soundness(o);
  fail(ErrorKind::ValidationError, "unknown suite '" + suite + "'");
}

void reference_value(mpfr_t out, const Expr& e, mpfr_prec_t prec) {
  mpfr_set_prec(out, prec);
  auto kid = [&](int i, mpfr_t dst) { reference_value(dst, *e.kids[static_cast<std::size_t>(i)], prec); };
  mpfr_t a, b;
  switch (e.op) {
    case Op::Int: mpfr_set_z(out, e.value.get_mpz_t(), MPFR_RNDN); return;
    case Op::Pi: mpfr_const_pi(out, MPFR_RNDN); return;
    case Op::Neg: kid(0, out); mpfr_neg(out, out, MPFR_RNDN); return;
    case Op::Abs: kid(0, out); mpfr_abs(out, out, MPFR_RNDN); return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow:
      mpfr_init2(a, prec);
      mpfr_init2(b, prec);
      kid(0, a);
      kid(1, b);
      if (e.op == Op::Add) mpfr_add(out, a, b, MPFR_RNDN);
      else if (e.op == Op::Sub) mpfr_sub(out, a, b, MPFR_RNDN);
      else if (e.op == Op::Mul) mpfr_mul(out, a, b, MPFR_RNDN);
      else if (e.op == Op::Div) mpfr_div(out, a, b, MPFR_RNDN);
      else mpfr_pow_si(out, a, mpfr_get_si(b, MPFR_RNDN), MPFR_RNDN);
      mpfr_clear(a);
      mpfr_clear(b);
      return;
    default: fail(ErrorKind::ValidationError, "reference evaluator: unsupported operator");
  }
}

}  // namespace bandlim
