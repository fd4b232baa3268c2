// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "bandlim/evaluator.hpp"

namespace bandlim {

/// A computable real as a pair (sequence program r(n), modulus program
/// xi(M)). Contract: |x - r(n)| <= 2^-M whenever n >= xi(M).
class RealDescription {
 public:
  RealDescription(ExprPtr sequence, ExprPtr modulus) : seq_(std::move(sequence)), mod_(std::move(modulus)) {}
  static RealDescription from_document(const Document& d);
  static RealDescription parse(const std::string& text);

  /// Exact rational constant: r(n) = q, xi(M) = 0.
  static RealDescription constant(const Rational& q);
  /// pi via Machin's formula, r(n) = partial sums with terms j = 0..n.
  static RealDescription pi();
  /// C(N) = -(1/pi) * sum_{k=1}^{N} 1/(k - 1/2), with the Machin partial
  /// sums in the denominator.
  static RealDescription c_of(long N);

  const ExprPtr& sequence() const { return seq_; }
  const ExprPtr& modulus() const { return mod_; }

  Document to_document() const;
  std::string to_text() const { return serialize(to_document()); }

  /// xi(M).
  BigInt modulus_at(long M) const;
  /// r(n), exact or (for programs using pi or huge sums) an enclosure.
  Value term(long n, mpfr_prec_t prec = 128) const;

 private:
  ExprPtr seq_;
  ExprPtr mod_;
};

struct ComplexDescription {
  RealDescription re;
  RealDescription im;
};

/// [r(xi(M)) - 2^-M, r(xi(M)) + 2^-M] rounded outward to dyadics; width
/// at most 2^(-M+2).
Interval approximate(const RealDescription& x, long M);

}  // namespace bandlim
