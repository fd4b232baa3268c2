// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bandlim/document.hpp"

namespace bandlim {

/// Deterministic random programs for round-trip and soundness batteries.
struct FuzzOptions {
  std::optional<Kind> kind;     // continuous or discrete; random when unset
  std::optional<Exponent> p;    // random from {1, 3/2, 2, inf} when unset
  int depth = 3;
  bool allow_pi = false;
};

/// Random numeric expression over `vars` built from integers, + - * /, small
/// integer powers and abs. Divisors are kept nonzero by construction
/// (1 + x^2 or positive constants) unless `raw_division` is set.
ExprPtr random_expression(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth, bool allow_pi,
                          bool raw_division = false);

/// Random valid continuous or discrete document with a small window.
Document random_document(std::mt19937_64& rng, const FuzzOptions& o = {});

}  // namespace bandlim
