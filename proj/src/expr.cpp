// SPDX-License-Identifier: Apache-2.0
#include "bandlim/expr.hpp"

#include <sstream>

namespace bandlim {

namespace ex {

ExprPtr integer(const BigInt& v) {
  if (v < 0) return unary(Op::Neg, integer(BigInt(-v)));
  auto e = std::make_shared<Expr>();
  e->op = Op::Int;
  e->value = v;
  return e;
}

ExprPtr integer(long v) { return integer(BigInt(v)); }

ExprPtr var(const std::string& name) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Var;
  e->name = name;
  return e;
}

ExprPtr pi() {
  auto e = std::make_shared<Expr>();
  e->op = Op::Pi;
  return e;
}

ExprPtr unary(Op op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->kids = {std::move(a)};
  return e;
}

ExprPtr binary(Op op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->kids = {std::move(a), std::move(b)};
  return e;
}

ExprPtr ternary(Op op, ExprPtr a, ExprPtr b, ExprPtr c) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->kids = {std::move(a), std::move(b), std::move(c)};
  return e;
}

ExprPtr sum(const std::string& v, ExprPtr lo, ExprPtr hi, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Sum;
  e->name = v;
  e->kids = {std::move(lo), std::move(hi), std::move(body)};
  return e;
}

ExprPtr l1norm(const std::string& v, ExprPtr lo, ExprPtr hi, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->op = Op::L1Norm;
  e->name = v;
  e->kids = {std::move(lo), std::move(hi), std::move(body)};
  return e;
}

ExprPtr where(ExprPtr body, std::vector<Binding> binds) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Where;
  e->kids = {std::move(body)};
  e->binds = std::move(binds);
  return e;
}

ExprPtr rational(const Rational& q) {
  ExprPtr mag = q.is_integer() ? integer(q.numerator_abs())
                               : binary(Op::Div, integer(q.numerator_abs()), integer(q.denominator()));
  return q.sign() < 0 ? unary(Op::Neg, mag) : mag;
}

}  // namespace ex

bool is_comparison(Op op) {
  switch (op) {
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return true;
    default: return false;
  }
}

bool is_boolean(Op op) { return is_comparison(op) || op == Op::Or || op == Op::And || op == Op::Not; }

bool equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.op != b.op || a.name != b.name || a.value != b.value) return false;
  if (a.kids.size() != b.kids.size() || a.binds.size() != b.binds.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  for (std::size_t i = 0; i < a.binds.size(); ++i)
    if (a.binds[i].name != b.binds[i].name || !equal(*a.binds[i].value, *b.binds[i].value)) return false;
  return true;
}

namespace {

void collect_free(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (e.op) {
    case Op::Var:
      if (!bound.count(e.name)) out.insert(e.name);
      return;
    case Op::Sum:
    case Op::L1Norm: {
      collect_free(*e.kids[0], bound, out);
      collect_free(*e.kids[1], bound, out);
      bool fresh = bound.insert(e.name).second;
      collect_free(*e.kids[2], bound, out);
      if (fresh) bound.erase(e.name);
      return;
    }
    case Op::Where: {
      std::vector<std::string> added;
      for (const auto& b : e.binds) {
        collect_free(*b.value, bound, out);
        if (bound.insert(b.name).second) added.push_back(b.name);
      }
      collect_free(*e.kids[0], bound, out);
      for (const auto& n : added) bound.erase(n);
      return;
    }
    default:
      for (const auto& k : e.kids) collect_free(*k, bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  collect_free(e, bound, out);
  return out;
}

bool contains_op(const Expr& e, Op op) {
  if (e.op == op) return true;
  for (const auto& k : e.kids)
    if (contains_op(*k, op)) return true;
  for (const auto& b : e.binds)
    if (contains_op(*b.value, op)) return true;
  return false;
}

ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& repl) {
  switch (e->op) {
    case Op::Var:
      return e->name == name ? repl : e;
    case Op::Sum:
    case Op::L1Norm: {
      auto lo = substitute(e->kids[0], name, repl);
      auto hi = substitute(e->kids[1], name, repl);
      auto body = e->name == name ? e->kids[2] : substitute(e->kids[2], name, repl);
      return e->op == Op::Sum ? ex::sum(e->name, lo, hi, body) : ex::l1norm(e->name, lo, hi, body);
    }
    case Op::Where: {
      std::vector<Binding> binds;
      bool shadowed = false;
      for (const auto& b : e->binds) {
        binds.push_back({b.name, shadowed ? b.value : substitute(b.value, name, repl)});
        if (b.name == name) shadowed = true;
      }
      auto body = shadowed ? e->kids[0] : substitute(e->kids[0], name, repl);
      return ex::where(body, std::move(binds));
    }
    default: {
      if (e->kids.empty()) return e;
      auto c = std::make_shared<Expr>(*e);
      for (auto& k : c->kids) k = substitute(k, name, repl);
      return c;
    }
  }
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& k : e.kids) n += node_count(*k);
  for (const auto& b : e.binds) n += node_count(*b.value);
  return n;
}

namespace {

int prec_of(const Expr& e) {
  switch (e.op) {
    case Op::Where: return 0;
    case Op::If: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not: return 4;
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return 5;
    case Op::Add: case Op::Sub: return 6;
    case Op::Mul: case Op::Div: return 7;
    case Op::Neg: return 8;
    case Op::Pow: return 9;
    default: return 10;
  }
}

const char* cmp_text(Op op) {
  switch (op) {
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    default: return "?";
  }
}

void emit(const Expr& e, std::ostream& os);

void emit_at(const Expr& e, int need, std::ostream& os) {
  if (prec_of(e) < need) {
    os << '(';
    emit(e, os);
    os << ')';
  } else {
    emit(e, os);
  }
}

void emit_call(const char* fn, const Expr& e, std::ostream& os, bool binder) {
  os << fn << '(';
  if (binder) os << e.name << ", ";
  for (std::size_t i = 0; i < e.kids.size(); ++i) {
    if (i) os << ", ";
    emit_at(*e.kids[i], 1, os);
  }
  os << ')';
}

void emit(const Expr& e, std::ostream& os) {
  switch (e.op) {
    case Op::Int: os << e.value.get_str(); return;
    case Op::Var: os << e.name; return;
    case Op::Pi: os << "pi"; return;
    case Op::Neg: os << '-'; emit_at(*e.kids[0], 8, os); return;
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: {
      int p = prec_of(e);
      emit_at(*e.kids[0], p, os);
      const char* sym = e.op == Op::Add ? " + " : e.op == Op::Sub ? " - " : e.op == Op::Mul ? " * " : " / ";
      os << sym;
      emit_at(*e.kids[1], p + 1, os);
      return;
    }
    case Op::Pow:
      emit_at(*e.kids[0], 10, os);
      os << '^';
      emit_at(*e.kids[1], 8, os);
      return;
    case Op::Sum: emit_call("sum", e, os, true); return;
    case Op::L1Norm: emit_call("l1norm", e, os, true); return;
    case Op::Harmonic: emit_call("harmonic", e, os, false); return;
    case Op::Mod: emit_call("mod", e, os, false); return;
    case Op::Abs: emit_call("abs", e, os, false); return;
    case Op::Gated: emit_call("gated", e, os, false); return;
    case Op::If:
      os << "if ";
      emit_at(*e.kids[0], 2, os);
      os << " then ";
      emit_at(*e.kids[1], 1, os);
      os << " else ";
      emit_at(*e.kids[2], 1, os);
      return;
    case Op::Or: case Op::And: {
      int p = prec_of(e);
      emit_at(*e.kids[0], p, os);
      os << (e.op == Op::Or ? " or " : " and ");
      emit_at(*e.kids[1], p + 1, os);
      return;
    }
    case Op::Not: os << "not "; emit_at(*e.kids[0], 4, os); return;
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      emit_at(*e.kids[0], 6, os);
      os << ' ' << cmp_text(e.op) << ' ';
      emit_at(*e.kids[1], 6, os);
      return;
    case Op::Where:
      emit_at(*e.kids[0], 1, os);
      os << " where ";
      for (std::size_t i = 0; i < e.binds.size(); ++i) {
        if (i) os << ", ";
        os << e.binds[i].name << " = ";
        emit_at(*e.binds[i].value, 1, os);
      }
      return;
  }
}

}  // namespace

std::string to_text(const Expr& e) {
  std::ostringstream os;
  emit(e, os);
  return os.str();
}

}  // namespace bandlim
