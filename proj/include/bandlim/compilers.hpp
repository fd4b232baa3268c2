// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bandlim/document.hpp"
#include "bandlim/interval.hpp"

namespace bandlim {

/// Norm-equivalence constants per exponent, each with a citation.
/// Sampling: ||S f||_p <= C1(p) ||f||_p. Interpolation: ||T x||_p <= C_R(p) ||x||_p.
class ConstantTable {
 public:
  struct Entry {
    Rational value;
    std::string citation;
  };

  static ConstantTable sampling_defaults();       // p = 2 and p = inf, both 1
  static ConstantTable interpolation_defaults();  // p = 2 only (Parseval)

  /// Adds entries from a JSON file of the form
  /// {"constants": [{"p": "3/2", "value": "4", "citation": "..."}]}.
  /// Entries without a citation are rejected.
  void load_json(const std::string& path);
  void set(const Exponent& p, Entry e);
  const Entry* find(const Exponent& p) const;

 private:
  std::map<std::string, Entry> entries_;
};

/// Smallest c >= 0 with 2^c >= C.
long shift_for(const Rational& C);

struct CompilerReport {
  std::string input_hash;  // FNV-1a 64 of the canonical input text, hex
  std::string output;      // canonical output text
  long shift = 0;
  std::vector<std::string> notes;
};

struct Compiled {
  Document doc;
  CompilerReport report;
};

std::string document_hash(const Document& d);

/// Continuous -> discrete. Generator programs are kept (sampling copies
/// coefficients); the modulus becomes M -> xi(c + M).
Compiled compile_sampling(const Document& d, const ConstantTable& c1 = ConstantTable::sampling_defaults());

/// Discrete -> continuous, only for 1 < p < inf with a configured C_R.
Compiled compile_interpolation(const Document& d,
                               const ConstantTable& cr = ConstantTable::interpolation_defaults());

struct RoundTripRow {
  long n = 0;
  bool coefficients_equal = false;
  Interval distance;  // norm of the element difference
  bool distance_ok = false;
};

struct RoundTripReport {
  bool modulus_ok = false;  // compiled modulus equals xi(c+M) for M = 0..32
  long shift = 0;
  std::vector<RoundTripRow> rows;
  bool ok() const;
};

/// Compiles d to the other side and back, then compares elements n = 0..depth
/// coefficient-wise and by norm distance (<= 2^-M).
RoundTripReport roundtrip_check(const Document& d, long depth, int M,
                                const ConstantTable& c1 = ConstantTable::sampling_defaults(),
                                const ConstantTable& cr = ConstantTable::interpolation_defaults());

}  // namespace bandlim
