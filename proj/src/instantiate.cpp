// SPDX-License-Identifier: Apache-2.0
#include "bandlim/instantiate.hpp"

#include <memory>

namespace bandlim {

namespace {

std::int64_t to_index(const BigInt& v, const char* what) {
  if (!v.fits_slong_p()) fail(ErrorKind::ResourceLimit, std::string(what) + " out of range");
  return v.get_si();
}

bool depends_on(const Expr& e, const std::set<std::string>& names) {
  for (const auto& v : free_vars(e))
    if (names.count(v)) return true;
  return false;
}

// Splits body = scale * base where scale does not depend on `varying`.
void factor(const ExprPtr& e, const std::set<std::string>& varying, std::vector<ExprPtr>& num,
            std::vector<ExprPtr>& den, bool& negate, ExprPtr& base) {
  auto inv = [&](const ExprPtr& x) { return !depends_on(*x, varying); };
  switch (e->op) {
    case Op::Mul:
      if (inv(e->kids[0])) {
        num.push_back(e->kids[0]);
        factor(e->kids[1], varying, num, den, negate, base);
        return;
      }
      if (inv(e->kids[1])) {
        num.push_back(e->kids[1]);
        factor(e->kids[0], varying, num, den, negate, base);
        return;
      }
      break;
    case Op::Div:
      if (inv(e->kids[1])) {
        den.push_back(e->kids[1]);
        factor(e->kids[0], varying, num, den, negate, base);
        return;
      }
      break;
    case Op::Neg:
      negate = !negate;
      factor(e->kids[0], varying, num, den, negate, base);
      return;
    default: break;
  }
  if (inv(e)) {
    num.push_back(e);
    base = ex::integer(1);
    return;
  }
  base = e;
}

bool is_alternating_sign(const Expr& e) {
  if (e.op != Op::Pow || e.kids[1]->op != Op::Var || e.kids[1]->name != "k") return false;
  const Expr& b = *e.kids[0];
  return b.op == Op::Neg && b.kids[0]->op == Op::Int && b.kids[0]->value == 1;
}

Value need_number(Value v) {
  if (std::holds_alternative<bool>(v)) fail(ErrorKind::GeneratorFailure, "coefficient program is a condition");
  return v;
}

struct GenState {
  ExprPtr base;
  std::optional<GatedTable> gated;
  EvalOptions eo;
  Env env;
};

}  // namespace

Coefficients instantiate_coefficients(const Document& d, long n, const InstantiateOptions& o) {
  if (d.kind == Kind::Real) fail(ErrorKind::ValidationError, "real documents have no elements");
  if (n < 0) fail(ErrorKind::GeneratorFailure, "element index must be nonnegative");
  auto st = std::make_shared<GenState>();
  st->gated = d.gated;
  st->eo.prec = o.prec;
  st->eo.l1_bits = o.l1_bits;
  st->eo.gated = st->gated ? &*st->gated : nullptr;
  Evaluator ev(st->eo);
  Env& env = st->env;
  env.push("n", Rational(n));

  std::int64_t lo, hi;
  if (d.symmetric_window()) {
    std::int64_t L = to_index(ev.eval_integer(*d.half_width, env, "window half-width"), "window half-width");
    if (L < 0) fail(ErrorKind::GeneratorFailure, "negative window half-width");
    lo = -L;
    hi = L;
  } else {
    lo = to_index(ev.eval_integer(*d.window_lo, env, "window bound"), "window bound");
    hi = to_index(ev.eval_integer(*d.window_hi, env, "window bound"), "window bound");
  }
  if (hi >= lo && hi - lo + 1 > o.max_window) fail(ErrorKind::ResourceLimit, "window exceeds the configured budget");

  // complex documents: plain per-k evaluation of both columns
  if (d.coeff_im) {
    std::vector<Value> re, im;
    if (hi - lo + 1 > o.store_limit) fail(ErrorKind::ResourceLimit, "complex windows must fit the store limit");
    for (std::int64_t k = lo; k <= hi; ++k) {
      env.push("k", Rational(k));
      re.push_back(need_number(ev.eval(*d.coeff_re, env)));
      im.push_back(need_number(ev.eval(*d.coeff_im, env)));
      env.pop();
    }
    return Coefficients(lo, std::move(re), std::move(im));
  }

  // hoist k-invariant where-bindings
  ExprPtr body = d.coeff_re;
  std::set<std::string> varying{"k"};
  std::vector<Binding> kept;
  if (body->op == Op::Where) {
    for (const auto& b : body->binds) {
      if (depends_on(*b.value, varying) || !kept.empty()) {
        kept.push_back(b);
        varying.insert(b.name);
      } else {
        env.push(b.name, need_number(ev.eval(*b.value, env)));
      }
    }
    body = body->kids[0];
  }

  std::vector<ExprPtr> num, den;
  bool negate = false;
  ExprPtr base;
  factor(body, varying, num, den, negate, base);
  Value scale = Rational(negate ? -1 : 1);
  for (const auto& e : num) scale = value_mul(scale, need_number(ev.eval(*e, env)), o.prec);
  for (const auto& e : den) {
    Value v = need_number(ev.eval(*e, env));
    if (is_exact(v)) {
      scale = value_mul(scale, exact(v).inverse(), o.prec);
    } else {
      scale = value_mul(scale, Interval::from_int(1, o.prec) / std::get<Interval>(v), o.prec);
    }
  }
  if (!kept.empty()) base = ex::where(base, kept);
  st->base = base;

  Coefficients c;
  if (hi < lo) {
    c = Coefficients(0, {});
  } else if (hi - lo + 1 <= o.store_limit) {
    std::vector<Value> re;
    re.reserve(static_cast<std::size_t>(hi - lo + 1));
    env.push("k", Rational(lo));
    for (std::int64_t k = lo; k <= hi; ++k) {
      env.set_last(Rational(k));
      re.push_back(need_number(ev.eval(*base, env)));
    }
    env.pop();
    c = Coefficients(lo, std::move(re));
  } else if (is_alternating_sign(*base)) {
    c = Coefficients::generated(lo, hi, [](std::int64_t k) -> Value { return Rational(k % 2 ? -1 : 1); });
    c.declare_exact(true);
  } else {
    c = Coefficients::generated(lo, hi, [st](std::int64_t k) -> Value {
      Evaluator gev(st->eo);
      st->env.push("k", Rational(k));
      Value v = need_number(gev.eval(*st->base, st->env));
      st->env.pop();
      return v;
    });
    bool exact_ops = !contains_op(*base, Op::Pi) && !contains_op(*base, Op::L1Norm) &&
                     !contains_op(*base, Op::Harmonic);
    for (const auto& v : free_vars(*base)) {
      const Value* bound = env.find(v);
      if (bound && !is_exact(*bound)) exact_ops = false;
    }
    c.declare_exact(exact_ops);
  }
  c.set_scale(scale);
  return c;
}

Element instantiate(const Document& d, long n, const InstantiateOptions& o) {
  Coefficients c = instantiate_coefficients(d, n, o);
  if (d.kind == Kind::Continuous) return ElementarySignal{std::move(c)};
  return ElementarySequence{std::move(c)};
}

ElementarySignal instantiate_signal(const Document& d, long n, const InstantiateOptions& o) {
  if (d.kind != Kind::Continuous) fail(ErrorKind::ValidationError, "not a continuous-time description");
  return {instantiate_coefficients(d, n, o)};
}

ElementarySequence instantiate_sequence(const Document& d, long n, const InstantiateOptions& o) {
  if (d.kind != Kind::Discrete) fail(ErrorKind::ValidationError, "not a discrete-time description");
  return {instantiate_coefficients(d, n, o)};
}

BigInt modulus_of(const Document& d, long M) {
  if (M < 0) fail(ErrorKind::GeneratorFailure, "precision must be nonnegative");
  Evaluator ev;
  Env env;
  env.push("M", Rational(M));
  BigInt v = ev.eval_integer(*d.modulus, env, "modulus value");
  if (v < 0) fail(ErrorKind::GeneratorFailure, "modulus returned a negative index");
  return v;
}

Interval element_norm(const Document& d, const Element& e, int M, const NormOptions& no) {
  if (const auto* f = std::get_if<ElementarySignal>(&e)) return lp_norm_signal(*f, d.p, M, no);
  return lp_norm_sequence(std::get<ElementarySequence>(e), d.p, M);
}

Interval norm_of_description(const Document& d, int M, const NormOptions& no, const InstantiateOptions& o) {
  if (M < 0) fail(ErrorKind::GeneratorFailure, "precision must be nonnegative");
  BigInt n = modulus_of(d, M + 2);
  if (!n.fits_slong_p()) fail(ErrorKind::ResourceLimit, "modulus index out of range");
  Element e = instantiate(d, n.get_si(), o);
  Interval v = element_norm(d, e, M + 2, no);
  Float eps(64);
  mpfr_set_ui_2exp(eps.get(), 1, -(M + 2), MPFR_RNDN);
  Interval r = v.inflate(eps);
  // norms are nonnegative
  if (mpfr_sgn(r.lo().get()) < 0) {
    Float z(r.lo().prec());
    r = Interval(z, r.hi());
  }
  return r;
}

}  // namespace bandlim
