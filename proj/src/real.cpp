// SPDX-License-Identifier: Apache-2.0
#include "bandlim/real.hpp"

namespace bandlim {

namespace {

// Machin partial sum with terms j = 0..n; the alternating tails are below
// 20/(3 * 125 * 25^n) < 2^-n.
const char* kMachin =
    "16 * sum(j, 0, n, (-1)^j / ((2*j + 1) * 5^(2*j + 1))) - "
    "4 * sum(j, 0, n, (-1)^j / ((2*j + 1) * 239^(2*j + 1)))";

}  // namespace

RealDescription RealDescription::from_document(const Document& d) {
  if (d.kind != Kind::Real) fail(ErrorKind::ValidationError, "not a real description");
  return {d.sequence, d.modulus};
}

RealDescription RealDescription::parse(const std::string& text) { return from_document(parse_document(text)); }

RealDescription RealDescription::constant(const Rational& q) { return {ex::rational(q), ex::integer(0)}; }

RealDescription RealDescription::pi() { return {parse_expression(kMachin), parse_expression("M")}; }

RealDescription RealDescription::c_of(long N) {
  if (N < 1) fail(ErrorKind::GeneratorFailure, "C(N) needs N >= 1");
  // |S/pi - S/P_n| <= S 2^-n / (pi P_n) with P_n > 3 and S < 48 for N < 2^64,
  // so the error is below 2^(3-n).
  std::string seq = "-sum(k, 1, " + std::to_string(N) + ", 1/(k - 1/2)) / (" + kMachin + ")";
  return {parse_expression(seq), parse_expression("M + 3")};
}

Document RealDescription::to_document() const {
  Document d;
  d.space = Space::R;
  d.kind = Kind::Real;
  d.sequence = seq_;
  d.modulus = mod_;
  return d;
}

BigInt RealDescription::modulus_at(long M) const {
  Evaluator ev;
  Env env;
  env.push("M", Rational(M));
  BigInt n = ev.eval_integer(*mod_, env, "modulus value");
  if (n < 0) fail(ErrorKind::GeneratorFailure, "modulus returned a negative index");
  return n;
}

Value RealDescription::term(long n, mpfr_prec_t prec) const {
  EvalOptions o;
  o.prec = prec;
  Evaluator ev(o);
  Env env;
  env.push("n", Rational(n));
  Value v = ev.eval(*seq_, env);
  if (std::holds_alternative<bool>(v)) fail(ErrorKind::GeneratorFailure, "sequence program is a condition");
  return v;
}

Interval approximate(const RealDescription& x, long M) {
  if (M < 0) fail(ErrorKind::GeneratorFailure, "precision must be nonnegative");
  BigInt nb = x.modulus_at(M);
  if (!nb.fits_slong_p()) fail(ErrorKind::ResourceLimit, "modulus index out of range");
  long n = nb.get_si();
  mpfr_prec_t prec = M + 64;
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
    Value v = x.term(n, prec);
    Interval r = to_interval(v, prec);
    // room for the magnitude so outward rounding adds at most 2^-(M+3)
    long mag_bits = 0;
    if (!mpfr_zero_p(r.mag().get())) mag_bits = std::max<long>(0, mpfr_get_exp(r.mag().get()));
    mpfr_prec_t p = static_cast<mpfr_prec_t>(M + 4 + mag_bits);
    if (!is_exact(v) && r.log2_width() > -(M + 1)) continue;
    Float eps(p);
    mpfr_set_ui_2exp(eps.get(), 1, -M, MPFR_RNDU);
    Interval w = r.round_to(std::max<mpfr_prec_t>(p, 2));
    return w.inflate(eps).round_to(std::max<mpfr_prec_t>(p, 2));
  }
  fail(ErrorKind::ResourceLimit, "sequence term enclosure too wide");
}

}  // namespace bandlim
