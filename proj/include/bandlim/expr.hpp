// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bandlim/rational.hpp"

namespace bandlim {

enum class Op {
  Int,       // nonnegative integer literal
  Var,       // bound variable
  Pi,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Sum,       // sum(var, lo, hi, body)
  L1Norm,    // l1norm(var, lo, hi, body): B^1 norm of sum body*sinc(t - var)
  Harmonic,  // harmonic(e) = 1 + 1/2 + ... + 1/e
  Mod,
  Abs,
  Gated,     // gated(e): lookup in the document's h-table
  If,
  Or,
  And,
  Not,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Where,     // body where name1 = e1, name2 = e2, ...
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Binding {
  std::string name;
  ExprPtr value;
};

/// Immutable expression node. `name` holds the variable for Var and the
/// bound index for Sum/L1Norm; `kids` the operands; `binds` the
/// where-bindings (kids[0] is then the body).
struct Expr {
  Op op;
  BigInt value;  // Int only
  std::string name;
  std::vector<ExprPtr> kids;
  std::vector<Binding> binds;
};

namespace ex {
ExprPtr integer(const BigInt& v);
ExprPtr integer(long v);
ExprPtr var(const std::string& name);
ExprPtr pi();
ExprPtr unary(Op op, ExprPtr a);
ExprPtr binary(Op op, ExprPtr a, ExprPtr b);
ExprPtr ternary(Op op, ExprPtr a, ExprPtr b, ExprPtr c);
ExprPtr sum(const std::string& v, ExprPtr lo, ExprPtr hi, ExprPtr body);
ExprPtr l1norm(const std::string& v, ExprPtr lo, ExprPtr hi, ExprPtr body);
ExprPtr where(ExprPtr body, std::vector<Binding> binds);
/// Literal for an arbitrary rational: a, -a or a/b.
ExprPtr rational(const Rational& q);
}  // namespace ex

bool is_comparison(Op op);
bool is_boolean(Op op);

/// Structural equality.
bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  return equal(*a, *b);
}

/// Free variables (names not bound by sum/l1norm/where inside the tree).
std::set<std::string> free_vars(const Expr& e);

/// Does the tree contain a node with this operator?
bool contains_op(const Expr& e, Op op);

/// Replaces free occurrences of `name` by `repl`.
ExprPtr substitute(const ExprPtr& e, const std::string& name, const ExprPtr& repl);

/// Canonical text with minimal parentheses; parse(to_text(e)) is
/// structurally equal to e.
std::string to_text(const Expr& e);

/// Number of nodes; used to bound fuzzing.
std::size_t node_count(const Expr& e);

}  // namespace bandlim
