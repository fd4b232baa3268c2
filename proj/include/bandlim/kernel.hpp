// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fast certified evaluation of f(t) = sum_k c_k sinc(t - k) and its first
// few derivatives in double intervals. Uses the factorization
//   f(t) = sin(pi t) / pi * P(t),   P(t) = sum_k (-1)^k c_k / (t - k),
// with a one-dimensional treecode for P: clusters that are well separated
// from the evaluation point are summed from truncated multipole moments
// with an explicit remainder bound, the rest directly.

#include <cstdint>
#include <vector>

#include "bandlim/fast_interval.hpp"
#include "bandlim/signal.hpp"

namespace bandlim {

/// Coefficient enclosure in double precision (outward rounded).
FI to_fi(const Value& v);
FI to_fi(const Interval& v);

class FastSignal {
 public:
  static constexpr int kMaxOrder = 3;
  static constexpr std::int64_t kMaxSupport = std::int64_t{1} << 20;

  /// Uses the base values of one column (real or imaginary) of c; the scale
  /// is not applied.
  explicit FastSignal(const Coefficients& c, bool imag = false);

  bool empty() const { return terms_.empty(); }
  std::int64_t lo() const { return klo_; }
  std::int64_t hi() const { return khi_; }
  double center() const { return center_; }
  /// max |k - center| over the support.
  double radius() const { return radius_; }

  /// f^(d)(t) for d = 0..D at a point.
  void eval(double t, int D, FI* out) const;
  /// Upper bounds of |f^(d)| on [a, b] for d = 0..D.
  void bound(double a, double b, int D, double* out) const;
  /// P^(d) over the interval t = [a, b] (a point when a == b), d = 0..D.
  /// Every k must be at distance >= 1 from [a, b].
  void eval_p(double a, double b, int D, FI* out) const;

  /// Upper bound of sum |c_k|.
  double abs_sum() const { return abs_sum_; }
  /// Enclosure of sum (-1)^k c_k (the moment mu_0 of P).
  FI alternating_sum() const { return alt_sum_; }
  /// Upper bound of sum |c_k| |k - center|.
  double first_moment_abs() const { return first_abs_; }
  /// Upper bound of sum |c_k| |k - c|.
  double first_moment_abs(double c) const;

 private:
  struct Term {
    std::int64_t k;
    FI a;  // (-1)^k c_k
    FI c;
  };
  struct Node {
    std::size_t begin, end;  // range into terms_
    double center, rho;
    double S;  // sum |a_k|
    int left = -1, right = -1;
    std::size_t mu;  // offset into moments_
  };

  int build(std::size_t begin, std::size_t end);
  // Accumulates P^(d) contributions over the interval t and near sinc terms.
  void walk(int node, const FI& t, int D, FI* P, FI* near_point, double* near_bound, bool point) const;

  std::vector<Term> terms_;
  std::vector<Node> nodes_;
  std::vector<FI> moments_;
  std::int64_t klo_ = 0, khi_ = -1;
  double center_ = 0, radius_ = 0;
  double abs_sum_ = 0, first_abs_ = 0;
  FI alt_sum_{0.0};
};

/// sinc^(d)(x) for a narrow interval x with |x| < 1 (series near 0, closed
/// form elsewhere).
FI fi_sinc(const FI& x, int d);

}  // namespace bandlim
