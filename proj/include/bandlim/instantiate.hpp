// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <variant>

#include "bandlim/norm.hpp"

namespace bandlim {

struct InstantiateOptions {
  std::int64_t max_window = std::int64_t{1} << 25;
  /// Windows larger than this are generated on demand instead of stored.
  std::int64_t store_limit = std::int64_t{1} << 16;
  mpfr_prec_t prec = 128;
  int l1_bits = 16;
};

using Element = std::variant<ElementarySignal, ElementarySequence>;

/// Coefficients of the n-th element. Bindings of c(n,k) that do not depend
/// on k are evaluated once; a k-invariant factor of the body becomes the
/// coefficient scale.
Coefficients instantiate_coefficients(const Document& d, long n, const InstantiateOptions& o = {});
Element instantiate(const Document& d, long n, const InstantiateOptions& o = {});
ElementarySignal instantiate_signal(const Document& d, long n, const InstantiateOptions& o = {});
ElementarySequence instantiate_sequence(const Document& d, long n, const InstantiateOptions& o = {});

/// xi(M).
BigInt modulus_of(const Document& d, long M);

/// Norm of the limit object: the element at xi(M+2) to precision M+2,
/// widened by 2^-(M+2) on each side.
Interval norm_of_description(const Document& d, int M, const NormOptions& no = {},
                             const InstantiateOptions& o = {});

/// Norm of one element in the document's space and exponent.
Interval element_norm(const Document& d, const Element& e, int M, const NormOptions& no = {});

}  // namespace bandlim
