// SPDX-License-Identifier: Apache-2.0
#include "bandlim/fuzz.hpp"

namespace bandlim {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ExprPtr leaf(std::mt19937_64& rng, const std::vector<std::string>& vars, bool allow_pi) {
  int r = pick(rng, 0, 9);
  if (allow_pi && r == 0) return ex::pi();
  if (!vars.empty() && r < 5) return ex::var(vars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(vars.size()) - 1))]);
  return ex::integer(pick(rng, 0, 9));
}

}  // namespace

ExprPtr random_expression(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth, bool allow_pi,
                          bool raw_division) {
  if (depth <= 0 || pick(rng, 0, 3) == 0) return leaf(rng, vars, allow_pi);
  auto sub = [&] { return random_expression(rng, vars, depth - 1, allow_pi, raw_division); };
  switch (pick(rng, 0, 7)) {
    case 0: return ex::binary(Op::Add, sub(), sub());
    case 1: return ex::binary(Op::Sub, sub(), sub());
    case 2: return ex::binary(Op::Mul, sub(), sub());
    case 3: {
      if (raw_division) return ex::binary(Op::Div, sub(), sub());
      auto d = sub();
      // 1 + d^2 > 0
      return ex::binary(Op::Div, sub(), ex::binary(Op::Add, ex::integer(1), ex::binary(Op::Pow, d, ex::integer(2))));
    }
    case 4: return ex::binary(Op::Div, sub(), ex::integer(pick(rng, 1, 12)));
    case 5: return ex::binary(Op::Pow, sub(), ex::integer(pick(rng, 0, 3)));
    case 6: return ex::unary(Op::Neg, sub());
    default: return ex::unary(Op::Abs, sub());
  }
}

Document random_document(std::mt19937_64& rng, const FuzzOptions& o) {
  Document d;
  d.kind = o.kind ? *o.kind : (pick(rng, 0, 1) ? Kind::Continuous : Kind::Discrete);
  d.space = d.kind == Kind::Continuous ? Space::Bpi : Space::Ell;
  if (o.p) {
    d.p = *o.p;
  } else {
    static const Exponent ps[] = {Exponent::of(Rational(1)), Exponent::of(Rational(3, 2)), Exponent::of(Rational(2)),
                                  Exponent::infinity()};
    d.p = ps[pick(rng, 0, 3)];
  }
  if (pick(rng, 0, 1)) {
    d.half_width = ex::binary(Op::Add, ex::var("n"), ex::integer(pick(rng, 0, 4)));
  } else {
    int a = pick(rng, -6, 3);
    d.window_lo = a < 0 ? ex::unary(Op::Neg, ex::integer(-a)) : ex::integer(a);
    d.window_hi = ex::binary(Op::Add, ex::integer(a + pick(rng, 0, 6)), ex::var("n"));
  }
  d.coeff_re = random_expression(rng, {"n", "k"}, o.depth, o.allow_pi);
  switch (pick(rng, 0, 2)) {
    case 0: d.modulus = ex::var("M"); break;
    case 1: d.modulus = ex::binary(Op::Add, ex::var("M"), ex::integer(pick(rng, 1, 5))); break;
    default: d.modulus = ex::binary(Op::Mul, ex::integer(2), ex::var("M")); break;
  }
  validate(d);
  return d;
}

}  // namespace bandlim
