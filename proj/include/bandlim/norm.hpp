// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bandlim/signal.hpp"

namespace bandlim {

struct NormOptions {
  /// Truncation radius override for the peak search; must exceed the
  /// window half-width.
  std::optional<Rational> T;
  std::int64_t max_panels = std::int64_t{1} << 22;
};

/// Sequence norms. Exact whenever the coefficients are exact and p is 1
/// or inf; enclosures of width <= 2^-M otherwise.
Interval lp_norm_sequence(const ElementarySequence& x, const Exponent& p, int M);
std::optional<Rational> lp_norm_sequence_exact(const ElementarySequence& x, const Exponent& p);

/// sup_t |f(t)|.
Interval peak_value(const ElementarySignal& f, int M, const NormOptions& o = {});

enum class Integrability { Integrable, NotIntegrable, Inconclusive };
/// Decides sum_k (-1)^k c_k = 0 exactly for exact coefficients; otherwise
/// a certified enclosure at precision M+8 either excludes 0
/// (NotIntegrable) or does not (Inconclusive).
Integrability check_integrable(const ElementarySignal& f, int M);

/// Integral of |f| over the real line. Throws NotIntegrable/Inconclusive.
Interval l1_norm_signal(const ElementarySignal& f, int M, const NormOptions& o = {});
inline Interval bibo_norm(const ElementarySignal& h, int M, const NormOptions& o = {}) {
  return l1_norm_signal(h, M, o);
}
/// (sum |c_k|^2)^(1/2).
Interval l2_norm_signal(const ElementarySignal& f, int M);
/// The same norm computed by quadrature of |f|^2 (independent route).
Interval l2_norm_quadrature(const ElementarySignal& f, int M, const NormOptions& o = {});
/// Dispatch on p: 1, 2, inf, or a rational p > 1 (first-order quadrature).
Interval lp_norm_signal(const ElementarySignal& f, const Exponent& p, int M, const NormOptions& o = {});

/// Integral of |f|^p over [-Lc, Lc] (p finite) or max over [-Lc, Lc] (p = inf).
/// Lc must be a dyadic rational representable as a double.
Interval time_concentration(const ElementarySignal& f, const Rational& Lc, const Exponent& p, int M,
                            const NormOptions& o = {});

/// Tail envelopes outside [-T, T] (T > L, the window half-width).
struct TailBound {
  enum class Kind { Sup, L1, L2 };
  Kind kind;
  double radius;
  double bound;
};
TailBound sup_tail(const ElementarySignal& f, double T);
TailBound l1_tail(const ElementarySignal& f, double T);
TailBound l2_tail(const ElementarySignal& f, double T);
/// Pointwise envelope behind the tails: |f(t)| <= S / (pi (|t| - L)), and
/// for integrable f also |f(t)| <= A / (pi |t| (|t| - L)) with
/// A = sum |c_k| |k|. Returns the smaller one.
double tail_envelope(const ElementarySignal& f, double t);

/// Integral of |sum_k c_k sinc(t - k)| for coefficients starting at index
/// lo, to within 2^-bits (the l1norm built-in of the description language).
Interval l1_norm_coefficients(std::int64_t lo, const std::vector<Value>& coeffs, int bits);

}  // namespace bandlim
