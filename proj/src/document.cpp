// SPDX-License-Identifier: Apache-2.0
#include "bandlim/document.hpp"

#include <sstream>

namespace bandlim {

const char* to_string(Space s) {
  switch (s) {
    case Space::Bpi: return "Bpi";
    case Space::Ell: return "ell";
    case Space::R: return "R";
  }
  return "?";
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Continuous: return "continuous";
    case Kind::Discrete: return "discrete";
    case Kind::Real: return "real";
  }
  return "?";
}

bool structurally_equal(const Document& a, const Document& b) {
  return a.space == b.space && a.kind == b.kind && (a.kind == Kind::Real || a.p == b.p) && a.gated == b.gated &&
         equal(a.half_width, b.half_width) && equal(a.window_lo, b.window_lo) &&
         equal(a.window_hi, b.window_hi) && equal(a.coeff_re, b.coeff_re) && equal(a.coeff_im, b.coeff_im) &&
         equal(a.sequence, b.sequence) && equal(a.modulus, b.modulus);
}

namespace {

enum class Ty { Num, Bool };

[[noreturn]] void invalid(const std::string& msg) { fail(ErrorKind::ValidationError, msg); }

Ty type_of(const Expr& e, const std::string& where) {
  auto num = [&](const ExprPtr& k) {
    if (type_of(*k, where) != Ty::Num) invalid(where + ": boolean used where a number is expected");
  };
  auto boolean = [&](const ExprPtr& k) {
    if (type_of(*k, where) != Ty::Bool) invalid(where + ": number used where a condition is expected");
  };
  switch (e.op) {
    case Op::Int: case Op::Var: case Op::Pi: return Ty::Num;
    case Op::Or: case Op::And: boolean(e.kids[0]); boolean(e.kids[1]); return Ty::Bool;
    case Op::Not: boolean(e.kids[0]); return Ty::Bool;
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      num(e.kids[0]);
      num(e.kids[1]);
      return Ty::Bool;
    case Op::If: {
      boolean(e.kids[0]);
      Ty a = type_of(*e.kids[1], where), b = type_of(*e.kids[2], where);
      if (a != b) invalid(where + ": if-branches have different types");
      return a;
    }
    case Op::Where:
      for (const auto& b : e.binds) num(b.value);
      return type_of(*e.kids[0], where);
    default:
      for (const auto& k : e.kids) num(k);
      return Ty::Num;
  }
}

void check_binders(const Expr& e, const std::string& where) {
  static const std::set<std::string> program_vars = {"n", "k", "M"};
  auto check = [&](const std::string& name) {
    if (program_vars.count(name)) invalid(where + ": binder '" + name + "' shadows a program variable");
  };
  if (e.op == Op::Sum || e.op == Op::L1Norm) check(e.name);
  if (e.op == Op::Where) {
    std::set<std::string> names;
    for (const auto& b : e.binds) {
      check(b.name);
      if (!names.insert(b.name).second) invalid(where + ": duplicate binding '" + b.name + "'");
    }
  }
  for (const auto& k : e.kids) check_binders(*k, where);
  for (const auto& b : e.binds) check_binders(*b.value, where);
}

void check_program(const ExprPtr& e, const std::string& where, const std::set<std::string>& allowed,
                   bool gated_ok) {
  if (!e) invalid("missing " + where);
  for (const auto& v : free_vars(*e))
    if (!allowed.count(v)) invalid(where + ": unbound variable '" + v + "'");
  if (!gated_ok && contains_op(*e, Op::Gated)) invalid(where + ": gated() requires a gated block");
  check_binders(*e, where);
  if (type_of(*e, where) != Ty::Num) invalid(where + ": program must be numeric");
}

}  // namespace

void validate(const Document& d) {
  switch (d.kind) {
    case Kind::Continuous:
      if (d.space != Space::Bpi) invalid("continuous descriptions live in space Bpi");
      break;
    case Kind::Discrete:
      if (d.space != Space::Ell) invalid("discrete descriptions live in space ell");
      break;
    case Kind::Real:
      if (d.space != Space::R) invalid("real descriptions live in space R");
      break;
  }
  if (d.kind != Kind::Real && !d.p.inf && d.p.value < Rational(1)) invalid("p must be at least 1");
  bool gated = d.gated.has_value();
  if (gated) {
    if (d.gated->machine.empty()) invalid("gated block: empty machine id");
    if (d.gated->kmax < 0) invalid("gated block: negative kmax");
    if (d.gated->h.size() != static_cast<std::size_t>(d.gated->kmax) + 1)
      invalid("gated block: h-table must have kmax+1 entries");
    for (const auto& v : d.gated->h)
      if (v < 0) invalid("gated block: negative h value");
  }
  if (d.kind == Kind::Real) {
    if (d.half_width || d.window_lo || d.coeff_re || d.coeff_im) invalid("real descriptions have no generator");
    check_program(d.sequence, "sequence r(n)", {"n"}, gated);
  } else {
    if (d.sequence) invalid("sequence block is only allowed in real descriptions");
    if (!d.half_width && !d.window_lo) invalid("missing generator window: give L(n) or window(n)");
    if (d.half_width) check_program(d.half_width, "L(n)", {"n"}, gated);
    if (d.window_lo) {
      check_program(d.window_lo, "window(n) lower end", {"n"}, gated);
      check_program(d.window_hi, "window(n) upper end", {"n"}, gated);
    }
    check_program(d.coeff_re, "coefficient c(n,k)", {"n", "k"}, gated);
    if (d.coeff_im) check_program(d.coeff_im, "coefficient ci(n,k)", {"n", "k"}, gated);
  }
  check_program(d.modulus, "modulus xi(M)", {"M"}, false);
}

namespace {

std::string bounded(const ExprPtr& e) {
  // window bounds sit next to '..'; a trailing where-clause gets parentheses
  std::string s = to_text(*e);
  return e->op == Op::Where ? "(" + s + ")" : s;
}

}  // namespace

std::string serialize(const Document& d) {
  std::ostringstream os;
  os << "space " << to_string(d.space) << ";\n";
  if (d.kind != Kind::Real) os << "p " << d.p.str() << ";\n";
  os << "kind " << to_string(d.kind) << ";\n";
  if (d.gated) {
    os << "gated {\n  machine \"" << d.gated->machine << "\";\n  kmax " << d.gated->kmax << ";\n  h = [";
    for (std::size_t i = 0; i < d.gated->h.size(); ++i) os << (i ? ", " : "") << d.gated->h[i].get_str();
    os << "];\n}\n";
  }
  if (d.kind == Kind::Real) {
    os << "sequence {\n  r(n) = " << to_text(*d.sequence) << ";\n}\n";
  } else {
    os << "generator {\n";
    if (d.half_width)
      os << "  L(n) = " << to_text(*d.half_width) << ";\n";
    else
      os << "  window(n) = " << bounded(d.window_lo) << " .. " << bounded(d.window_hi) << ";\n";
    os << "  c(n,k) = " << to_text(*d.coeff_re) << ";\n";
    if (d.coeff_im) os << "  ci(n,k) = " << to_text(*d.coeff_im) << ";\n";
    os << "}\n";
  }
  os << "modulus {\n  xi(M) = " << to_text(*d.modulus) << ";\n}\n";
  return os.str();
}

}  // namespace bandlim
