// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bandlim/document.hpp"
#include "bandlim/interval.hpp"

namespace bandlim {

/// Result of evaluating an expression: exact when no irrational operation
/// was involved, an enclosure otherwise, or a truth value for conditions.
using Value = std::variant<Rational, Interval, bool>;

struct EvalOptions {
  mpfr_prec_t prec = 128;                     // working precision for enclosures
  std::int64_t max_sum_terms = std::int64_t{1} << 25;
  const GatedTable* gated = nullptr;
  int l1_bits = 16;                           // target width 2^-l1_bits for l1norm(...)
};

class Env {
 public:
  void push(std::string name, Value v) { vars_.emplace_back(std::move(name), std::move(v)); }
  void pop() { vars_.pop_back(); }
  void set_last(Value v) { vars_.back().second = std::move(v); }
  const Value* find(const std::string& name) const {
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  std::size_t size() const { return vars_.size(); }

 private:
  std::vector<std::pair<std::string, Value>> vars_;
};

class Evaluator {
 public:
  explicit Evaluator(EvalOptions opts = {}) : opts_(opts) {}

  Value eval(const Expr& e, Env& env);
  const EvalOptions& options() const { return opts_; }

  /// Evaluates and requires an exact integer.
  BigInt eval_integer(const Expr& e, Env& env, const char* what);

 private:
  Value sum(const Expr& e, Env& env);
  Value l1norm(const Expr& e, Env& env);

  EvalOptions opts_;
  std::map<std::string, Interval> l1_cache_;
};

Interval to_interval(const Value& v, mpfr_prec_t prec);
bool is_exact(const Value& v);
const Rational& exact(const Value& v);

/// Enclosure of a closed numeric expression with width <= 2^-M, raising the
/// working precision as needed.
Interval interval_eval(const Expr& e, int M, EvalOptions opts = {});
Interval interval_eval(const std::string& text, int M);

/// H_n = 1 + 1/2 + ... + 1/n: exact for small n, otherwise an enclosure
/// (direct summation, then Euler-Maclaurin with an explicit remainder).
Value harmonic_value(const BigInt& n, mpfr_prec_t prec);
Interval harmonic_enclosure(const BigInt& n, mpfr_prec_t prec);

}  // namespace bandlim
