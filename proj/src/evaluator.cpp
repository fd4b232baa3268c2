// SPDX-License-Identifier: Apache-2.0
#include "bandlim/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/norm.hpp"

namespace bandlim {

bool is_exact(const Value& v) { return std::holds_alternative<Rational>(v); }

const Rational& exact(const Value& v) { return std::get<Rational>(v); }

Interval to_interval(const Value& v, mpfr_prec_t prec) {
  if (auto q = std::get_if<Rational>(&v)) return Interval::from_rational(*q, prec);
  if (auto i = std::get_if<Interval>(&v)) return *i;
  fail(ErrorKind::GeneratorFailure, "condition used as a number");
}

namespace {

const Rational& need_number_exact(const Value& v, const char* what) {
  if (auto q = std::get_if<Rational>(&v)) return *q;
  fail(ErrorKind::GeneratorFailure, std::string(what) + " must be exact");
}

bool need_bool(const Value& v) {
  if (auto b = std::get_if<bool>(&v)) return *b;
  fail(ErrorKind::GeneratorFailure, "number used as a condition");
}

void need_number(const Value& v) {
  if (std::holds_alternative<bool>(v)) fail(ErrorKind::GeneratorFailure, "condition used as a number");
}

// Rational results larger than this many bits are demoted to enclosures.
constexpr std::size_t kExactSlack = 64;

Value arith(const Value& a, const Value& b, ArithOp op, mpfr_prec_t prec) {
  need_number(a);
  need_number(b);
  if (is_exact(a) && is_exact(b)) return rational_arith(exact(a), exact(b), op);
  if (op == ArithOp::Div && is_exact(b) && exact(b).is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
  if (is_exact(b) && op == ArithOp::Mul) return to_interval(a, prec) * exact(b);
  if (is_exact(b) && op == ArithOp::Add) return to_interval(a, prec) + exact(b);
  Interval x = to_interval(a, prec), y = to_interval(b, prec);
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  return x;
}

int compare(const Value& a, const Value& b, mpfr_prec_t prec) {
  need_number(a);
  need_number(b);
  if (is_exact(a) && is_exact(b)) {
    auto c = exact(a) <=> exact(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  Interval d = to_interval(a, prec) - to_interval(b, prec);
  if (d.is_positive()) return 1;
  if (d.is_negative()) return -1;
  if (d.is_point()) return 0;
  fail(ErrorKind::GeneratorFailure, "comparison cannot be decided from enclosures");
}

std::int64_t to_i64(const BigInt& v, const char* what) {
  if (!v.fits_slong_p()) fail(ErrorKind::ResourceLimit, std::string(what) + " is out of range");
  return v.get_si();
}

}  // namespace

BigInt Evaluator::eval_integer(const Expr& e, Env& env, const char* what) {
  Value v = eval(e, env);
  const Rational& q = need_number_exact(v, what);
  if (!q.is_integer()) fail(ErrorKind::GeneratorFailure, std::string(what) + " must be an integer");
  return q.numerator();
}

Value Evaluator::eval(const Expr& e, Env& env) {
  const auto prec = opts_.prec;
  switch (e.op) {
    case Op::Int: return Rational(e.value);
    case Op::Var: {
      const Value* v = env.find(e.name);
      if (!v) fail(ErrorKind::GeneratorFailure, "unbound variable '" + e.name + "'");
      return *v;
    }
    case Op::Pi: return Interval::pi(prec);
    case Op::Neg: {
      Value v = eval(*e.kids[0], env);
      need_number(v);
      if (is_exact(v)) return -exact(v);
      return -std::get<Interval>(v);
    }
    case Op::Add: return arith(eval(*e.kids[0], env), eval(*e.kids[1], env), ArithOp::Add, prec);
    case Op::Sub: return arith(eval(*e.kids[0], env), eval(*e.kids[1], env), ArithOp::Sub, prec);
    case Op::Mul: return arith(eval(*e.kids[0], env), eval(*e.kids[1], env), ArithOp::Mul, prec);
    case Op::Div: return arith(eval(*e.kids[0], env), eval(*e.kids[1], env), ArithOp::Div, prec);
    case Op::Pow: {
      Value base = eval(*e.kids[0], env);
      Value ev = eval(*e.kids[1], env);
      need_number(base);
      const Rational& q = need_number_exact(ev, "exponent");
      if (!q.is_integer()) fail(ErrorKind::GeneratorFailure, "exponent must be an integer");
      long n = static_cast<long>(to_i64(q.numerator(), "exponent"));
      if (is_exact(base)) {
        const Rational& b = exact(base);
        if (b.is_zero() && n < 0) fail(ErrorKind::DivisionByZero, "zero to a negative power");
        if (b.is_zero() || b == Rational(1)) return b.is_zero() && n == 0 ? Rational(1) : b;
        if (b == Rational(-1)) return (n % 2 == 0) ? Rational(1) : Rational(-1);
        double bits = static_cast<double>(b.bit_size()) * std::fabs(static_cast<double>(n));
        if (bits > double(1 << 26)) fail(ErrorKind::ResourceLimit, "power result too large");
        return b.pow(n);
      }
      return std::get<Interval>(base).pow_int(n);
    }
    case Op::Sum: return sum(e, env);
    case Op::L1Norm: return l1norm(e, env);
    case Op::Harmonic: {
      BigInt n = eval_integer(*e.kids[0], env, "harmonic argument");
      if (n < 0) fail(ErrorKind::GeneratorFailure, "harmonic of a negative number");
      return harmonic_value(n, prec);
    }
    case Op::Mod: {
      BigInt a = eval_integer(*e.kids[0], env, "mod argument");
      BigInt b = eval_integer(*e.kids[1], env, "mod argument");
      if (b == 0) fail(ErrorKind::DivisionByZero, "mod by zero");
      if (b < 0) fail(ErrorKind::GeneratorFailure, "mod by a negative number");
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      return Rational(r);
    }
    case Op::Abs: {
      Value v = eval(*e.kids[0], env);
      need_number(v);
      if (is_exact(v)) return exact(v).abs();
      return std::get<Interval>(v).abs();
    }
    case Op::Gated: {
      if (!opts_.gated) fail(ErrorKind::GeneratorFailure, "gated() without a table");
      BigInt k = eval_integer(*e.kids[0], env, "gated index");
      if (k < 0 || k > opts_.gated->kmax)
        fail(ErrorKind::GeneratorFailure,
             "gated table is partial: index " + k.get_str() + " beyond kmax " + std::to_string(opts_.gated->kmax));
      return Rational(opts_.gated->h[k.get_ui()]);
    }
    case Op::If: return need_bool(eval(*e.kids[0], env)) ? eval(*e.kids[1], env) : eval(*e.kids[2], env);
    case Op::Or: return need_bool(eval(*e.kids[0], env)) || need_bool(eval(*e.kids[1], env));
    case Op::And: return need_bool(eval(*e.kids[0], env)) && need_bool(eval(*e.kids[1], env));
    case Op::Not: return !need_bool(eval(*e.kids[0], env));
    case Op::Eq: return compare(eval(*e.kids[0], env), eval(*e.kids[1], env), prec) == 0;
    case Op::Ne: return compare(eval(*e.kids[0], env), eval(*e.kids[1], env), prec) != 0;
    case Op::Lt: return compare(eval(*e.kids[0], env), eval(*e.kids[1], env), prec) < 0;
    case Op::Le: return compare(eval(*e.kids[0], env), eval(*e.kids[1], env), prec) <= 0;
    case Op::Gt: return compare(eval(*e.kids[0], env), eval(*e.kids[1], env), prec) > 0;
    case Op::Ge: return compare(eval(*e.kids[0], env), eval(*e.kids[1], env), prec) >= 0;
    case Op::Where: {
      std::size_t depth = env.size();
      for (const auto& b : e.binds) env.push(b.name, eval(*b.value, env));
      Value v = eval(*e.kids[0], env);
      while (env.size() > depth) env.pop();
      return v;
    }
  }
  fail(ErrorKind::GeneratorFailure, "unknown expression node");
}

Value Evaluator::sum(const Expr& e, Env& env) {
  std::int64_t lo = to_i64(eval_integer(*e.kids[0], env, "sum bound"), "sum bound");
  std::int64_t hi = to_i64(eval_integer(*e.kids[1], env, "sum bound"), "sum bound");
  if (hi < lo) return Rational(0);
  if (hi - lo >= opts_.max_sum_terms) fail(ErrorKind::ResourceLimit, "sum has too many terms");
  const mpfr_prec_t prec = opts_.prec;
  Rational qacc(0);
  Float lo_acc(prec), hi_acc(prec);
  bool demoted = false;
  env.push(e.name, Rational(lo));
  for (std::int64_t j = lo; j <= hi; ++j) {
    env.set_last(Rational(j));
    Value t = eval(*e.kids[2], env);
    need_number(t);
    if (!demoted && is_exact(t)) {
      qacc += exact(t);
      if (qacc.bit_size() > static_cast<std::size_t>(prec) + kExactSlack) {
        demoted = true;
        mpfr_set_q(lo_acc.get(), qacc.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_acc.get(), qacc.get_mpq_t(), MPFR_RNDU);
      }
      continue;
    }
    if (!demoted) {
      demoted = true;
      mpfr_set_q(lo_acc.get(), qacc.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(hi_acc.get(), qacc.get_mpq_t(), MPFR_RNDU);
    }
    if (is_exact(t)) {
      mpfr_add_q(lo_acc.get(), lo_acc.get(), exact(t).get_mpq_t(), MPFR_RNDD);
      mpfr_add_q(hi_acc.get(), hi_acc.get(), exact(t).get_mpq_t(), MPFR_RNDU);
    } else {
      const Interval& x = std::get<Interval>(t);
      mpfr_add(lo_acc.get(), lo_acc.get(), x.lo().get(), MPFR_RNDD);
      mpfr_add(hi_acc.get(), hi_acc.get(), x.hi().get(), MPFR_RNDU);
    }
  }
  env.pop();
  if (!demoted) return qacc;
  return Interval(std::move(lo_acc), std::move(hi_acc));
}

Value Evaluator::l1norm(const Expr& e, Env& env) {
  std::int64_t lo = to_i64(eval_integer(*e.kids[0], env, "l1norm bound"), "l1norm bound");
  std::int64_t hi = to_i64(eval_integer(*e.kids[1], env, "l1norm bound"), "l1norm bound");
  if (hi < lo) return Rational(0);
  if (hi - lo >= opts_.max_sum_terms) fail(ErrorKind::ResourceLimit, "l1norm window too large");
  std::vector<Value> coeffs;
  coeffs.reserve(static_cast<std::size_t>(hi - lo + 1));
  env.push(e.name, Rational(lo));
  for (std::int64_t j = lo; j <= hi; ++j) {
    env.set_last(Rational(j));
    coeffs.push_back(eval(*e.kids[2], env));
    need_number(coeffs.back());
  }
  env.pop();
  std::string key = std::to_string(lo) + ":" + std::to_string(hi) + ":" + std::to_string(opts_.l1_bits) + ":";
  for (const auto& c : coeffs) key += is_exact(c) ? exact(c).str() + "," : to_interval(c, 53).exact_str() + ",";
  auto it = l1_cache_.find(key);
  if (it != l1_cache_.end()) return it->second;
  Interval r = l1_norm_coefficients(lo, coeffs, opts_.l1_bits);
  l1_cache_.emplace(key, r);
  return r;
}

Interval interval_eval(const Expr& e, int M, EvalOptions opts) {
  opts.prec = std::max<mpfr_prec_t>(opts.prec, M + 32);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Evaluator ev(opts);
    Env env;
    Value v = ev.eval(e, env);
    if (std::holds_alternative<bool>(v)) fail(ErrorKind::GeneratorFailure, "expression is a condition");
    Interval r = to_interval(v, opts.prec);
    if (r.log2_width() <= -M) return r;
    opts.prec *= 2;
  }
  fail(ErrorKind::ResourceLimit, "could not reach the requested precision");
}

Interval interval_eval(const std::string& text, int M) { return interval_eval(*parse_expression(text), M); }

Interval harmonic_enclosure(const BigInt& n, mpfr_prec_t prec) {
  if (n <= 0) return Interval::from_int(0, prec);
  if (n <= (1 << 16)) {
    long m = n.get_si();
    Float lo(prec), hi(prec), t(prec);
    // sum small terms first
    for (long j = m; j >= 1; --j) {
      mpfr_set_ui(t.get(), 1, MPFR_RNDN);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(j), MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_set_ui(t.get(), 1, MPFR_RNDN);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(j), MPFR_RNDU);
      mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
    return {std::move(lo), std::move(hi)};
  }
  // H_n = ln n + gamma + 1/(2n) - 1/(12n^2) + 1/(120n^4) - 1/(252n^6) + r, 0 < r < 1/(240n^8)
  mpfr_prec_t p = prec + 16;
  Float nl(p), nh(p);
  mpfr_set_z(nl.get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(nh.get(), n.get_mpz_t(), MPFR_RNDU);
  Interval x(nl, nh);
  Interval ln = x.log();
  Float gl(p), gh(p);
  mpfr_const_euler(gl.get(), MPFR_RNDD);
  mpfr_const_euler(gh.get(), MPFR_RNDU);
  Interval inv = Interval::from_int(1, p) / x;
  Interval inv2 = inv.sqr();
  Interval s = ln + Interval(gl, gh) + inv * Rational(1, 2) - inv2 * Rational(1, 12) +
               inv2.sqr() * Rational(1, 120) - inv2.pow_int(3) * Rational(1, 252);
  Interval rem = inv2.pow_int(4) * Rational(1, 240);
  Float zero(p);
  Interval r(s.lo(), s.hi());
  r = r + Interval(zero, rem.hi());
  return r.round_to(prec);
}

Value harmonic_value(const BigInt& n, mpfr_prec_t prec) {
  if (n <= 64) {
    Rational h(0);
    for (long j = 1; j <= n.get_si(); ++j) h += Rational(1, j);
    return h;
  }
  return harmonic_enclosure(n, prec);
}

}  // namespace bandlim
