// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bandlim/expr.hpp"

namespace bandlim {

enum class Space { Bpi, Ell, R };
enum class Kind { Continuous, Discrete, Real };

/// p in [1, inf]; only rationals and the symbol inf are expressible.
struct Exponent {
  bool inf = true;
  Rational value{1};

  static Exponent infinity() { return {}; }
  static Exponent of(const Rational& q) { return {false, q}; }
  bool is(long v) const { return !inf && value == Rational(v); }
  std::string str() const { return inf ? "inf" : value.str(); }
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.inf == b.inf && (a.inf || a.value == b.value);
  }
};

/// Precomputed runtime-function table h(k), k = 0..kmax, for the
/// `gated(k)` built-in.
struct GatedTable {
  std::string machine;
  int kmax = 0;
  std::vector<BigInt> h;
  friend bool operator==(const GatedTable& a, const GatedTable& b) {
    return a.machine == b.machine && a.kmax == b.kmax && a.h == b.h;
  }
};

/// A parsed description document. Continuous and discrete documents carry a
/// generator (window + coefficient programs); real documents a sequence
/// program. All carry a modulus program xi(M).
struct Document {
  Space space = Space::Bpi;
  Exponent p;
  Kind kind = Kind::Continuous;
  std::optional<GatedTable> gated;

  // generator: either L(n) (symmetric window) or window(n) = lo .. hi
  ExprPtr half_width;
  ExprPtr window_lo, window_hi;
  ExprPtr coeff_re;
  ExprPtr coeff_im;  // optional imaginary part ci(n,k)

  ExprPtr sequence;  // r(n), real documents
  ExprPtr modulus;   // xi(M)

  bool symmetric_window() const { return half_width != nullptr; }
};

bool structurally_equal(const Document& a, const Document& b);

/// Checks the document invariants; throws ValidationError naming the
/// violated one.
void validate(const Document& d);

/// Canonical text. parse(serialize(d)) is structurally equal to d.
std::string serialize(const Document& d);

/// Parses and validates a document.
Document parse_document(const std::string& text);

/// Parses a single expression (used by tests and the CLI).
ExprPtr parse_expression(const std::string& text);

const char* to_string(Space s);
const char* to_string(Kind k);

}  // namespace bandlim
