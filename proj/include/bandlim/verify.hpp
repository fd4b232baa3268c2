// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bandlim/witness.hpp"

namespace bandlim {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool ok() const;
};

struct VerifyOptions {
  WitnessBudget budget;
  int M = 20;
  std::uint64_t seed = 20240611;
  long n_max = 3;  // lemma1
};

/// Suites: lemma1, lemma3, lemma4-scaled, roundtrip-p2, soundness.
SuiteReport verify_suite(const std::string& suite, const VerifyOptions& o = {});
const std::vector<std::string>& suite_names();

/// Evaluates a closed expression built from integers, pi, + - * /, integer
/// powers and abs in round-to-nearest MPFR at `prec` bits (not an enclosure;
/// used as a reference value).
void reference_value(mpfr_t out, const Expr& e, mpfr_prec_t prec);

}  // namespace bandlim
