#include <doctest.h>

#include "bandlim/fuzz.hpp"
#include "bandlim/real.hpp"
#include "oracle.hpp"

using namespace bandlim;
using oracle::F;

namespace {

Float pow2(long e) {
  Float f(64);
  mpfr_set_ui_2exp(f.get(), 1, e, MPFR_RNDN);
  return f;
}

bool width_at_most(const Interval& iv, long e) { return mpfr_cmp(iv.width().get(), pow2(e).get()) <= 0; }

}  // namespace

TEST_CASE("rational arithmetic examples") {
  CHECK(rational_arith(Rational(1, 2), Rational(1, 3), ArithOp::Add) == Rational(5, 6));
  CHECK(rational_arith(Rational(2, 4), Rational(1), ArithOp::Mul) == Rational(1, 2));
  CHECK(rational_arith(Rational(-3, 7), Rational(-3, 7), ArithOp::Div) == Rational(1));
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK_THROWS_AS(rational_arith(Rational(1), Rational(0), ArithOp::Div), Error);
}

TEST_CASE("rational arithmetic against a big-integer oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> big(-(std::int64_t{1} << 62), std::int64_t{1} << 62);
  std::uniform_int_distribution<std::int64_t> small(-50, 50);
  const ArithOp ops[] = {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div};
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    bool wide = i % 2 == 0;
    auto draw = [&] { return wide ? big(rng) : small(rng); };
    std::int64_t an = draw(), ad = draw(), bn = draw(), bd = draw();
    if (ad == 0) ad = 1;
    if (bd == 0) bd = 7;
    if (bn == 0) bn = 3;
    Rational a(an, ad), b(bn, bd);
    // the oracle wants positive denominators
    if (ad < 0) an = -an, ad = -ad;
    if (bd < 0) bn = -bn, bd = -bd;
    oracle::Q qa{oracle::mp::cpp_int{an}, oracle::mp::cpp_int{ad}};
    oracle::Q qb{oracle::mp::cpp_int{bn}, oracle::mp::cpp_int{bd}};
    for (auto op : ops) {
      oracle::Q want;
      switch (op) {
        case ArithOp::Add: want = qa + qb; break;
        case ArithOp::Sub: want = qa - qb; break;
        case ArithOp::Mul: want = qa * qb; break;
        case ArithOp::Div: want = qa / qb; break;
      }
      if (rational_arith(a, b, op).str() != want.str()) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("approximate: examples") {
  Interval z = approximate(RealDescription::constant(Rational(0)), 10);
  CHECK(z.contains(Rational(0)));
  CHECK(width_at_most(z, -8));

  Interval p = approximate(RealDescription::pi(), 20);
  CHECK(oracle::encloses(p, oracle::pi()));
  CHECK(width_at_most(p, -18));
  CHECK(p.decimal_str(6).find("3.14159") != std::string::npos);

  Interval c2 = approximate(RealDescription::c_of(2), 16);
  CHECK(oracle::encloses(c2, -(F(8) / 3) / oracle::pi()));
}

TEST_CASE("approximate: soundness over M in {4, 8, 16, 32}") {
  struct Case {
    RealDescription x;
    F v;
  };
  std::vector<Case> cases{
      {RealDescription::constant(Rational(0)), F(0)},
      {RealDescription::constant(Rational(1)), F(1)},
      {RealDescription::constant(Rational(-5, 7)), F(-5) / 7},
      {RealDescription::pi(), oracle::pi()},
      {RealDescription::c_of(1), oracle::c_of_n(1)},
      {RealDescription::c_of(2), oracle::c_of_n(2)},
      {RealDescription::c_of(9), oracle::c_of_n(9)},
  };
  for (const auto& c : cases)
    for (int M : {4, 8, 16, 32}) {
      Interval iv = approximate(c.x, M);
      CHECK(oracle::encloses(iv, c.v));
      CHECK(width_at_most(iv, -M + 2));
    }
}

TEST_CASE("approximate: monotone refinement") {
  for (const auto& x : {RealDescription::pi(), RealDescription::c_of(3), RealDescription::constant(Rational(1, 3))}) {
    for (int M = 1; M < 32; ++M) {
      Interval a = approximate(x, M), b = approximate(x, M + 1);
      Float bound(128);
      mpfr_add(bound.get(), a.width().get(), pow2(-M).get(), MPFR_RNDU);
      CHECK(mpfr_cmp(b.width().get(), bound.get()) <= 0);
    }
  }
}

TEST_CASE("real descriptions serialize and reparse") {
  RealDescription pi = RealDescription::pi();
  RealDescription again = RealDescription::parse(pi.to_text());
  CHECK(again.to_text() == pi.to_text());
  CHECK(approximate(again, 24).exact_str() == approximate(pi, 24).exact_str());
}

TEST_CASE("interval_eval examples") {
  Interval h = interval_eval("1/2", 30);
  CHECK(h.is_point());
  CHECK(h.contains(Rational(1, 2)));

  Interval q = interval_eval("pi * (1/4)", 20);
  CHECK(oracle::encloses(q, oracle::pi() / 4));
  CHECK(width_at_most(q, -20));

  try {
    interval_eval("1/(1 - 1)", 10);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("interval_eval encloses 200-bit reference values") {
  std::mt19937_64 rng(5);
  int failures = 0;
  for (int i = 0; i < 300; ++i) {
    ExprPtr e = random_expression(rng, {}, 5, true);
    int M = 8 + (i % 5) * 8;
    Interval iv = interval_eval(*e, M);
    if (!oracle::encloses(iv, oracle::eval(*e))) ++failures;
    if (!width_at_most(iv, -M)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("interval operations contain point results") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    Rational a = oracle::random_rational(rng), b = oracle::random_rational(rng);
    Interval x = Interval::from_rational(a, 80), y = Interval::from_rational(b, 80);
    F fa = oracle::to_f(a), fb = oracle::to_f(b);
    CHECK(oracle::encloses(x + y, fa + fb));
    CHECK(oracle::encloses(x - y, fa - fb));
    CHECK(oracle::encloses(x * y, fa * fb));
    if (!b.is_zero()) CHECK(oracle::encloses(x / y, fa / fb));
    CHECK(oracle::encloses(x.sin(), sin(fa)));
    CHECK(oracle::encloses(x.cos(), cos(fa)));
    CHECK(oracle::encloses(x.abs().sqrt(), sqrt(abs(fa))));
    if (a.sign() > 0) CHECK(oracle::encloses(x.log(), log(fa)));
  }
}

TEST_CASE("harmonic numbers") {
  CHECK(exact(harmonic_value(BigInt(4), 128)) == Rational(25, 12));
  for (long n : {10L, 1000L, 70000L, 200000L}) {
    F s = 0;
    for (long k = 1; k <= n; ++k) s += F(1) / k;
    CHECK(oracle::encloses(harmonic_enclosure(BigInt(n), 160), s));
  }
  // asymptotic oracle ln n + gamma + 1/(2n) - 1/(12 n^2), error below 1/(120 n^4)
  BigInt n = BigInt(1) << 100;
  F fn = ldexp(F(1), 100);
  F v = log(fn) + boost::math::constants::euler<F>() + 1 / (2 * fn) - 1 / (12 * fn * fn);
  Interval h = harmonic_enclosure(n, 160);
  CHECK(oracle::encloses(h, v));
  CHECK(h.log2_width() < -100);
}
