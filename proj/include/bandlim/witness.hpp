// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bandlim/instantiate.hpp"
#include "bandlim/machine.hpp"

namespace bandlim {

struct WitnessBudget {
  std::int64_t max_window = std::int64_t{1} << 25;
  std::int64_t max_steps = std::int64_t{1} << 22;
  std::int64_t max_panels = std::int64_t{1} << 22;
};

// ---- g(t, N) and the family f_n = g(., 2^(8n)) ----

/// C(N) = -(1/pi) sum_{k=1}^N 1/(k - 1/2) through harmonic numbers:
/// -(2/pi) (H_{2N} - H_N / 2). Works for any N >= 1.
Interval c_of_n(const BigInt& N, mpfr_prec_t prec = 128);
/// The same constant by direct summation (second route, N <= budget).
Interval c_of_n_direct(std::int64_t N, mpfr_prec_t prec = 128);

/// sum_{k=1}^N (-1)^k sinc(1/2 - k), using sinc(1/2 - k) = -1 / (pi (k - 1/2)).
Interval alternating_half_sum(const BigInt& N, mpfr_prec_t prec = 128);

/// Upper bound on sup |g(t, N)|: (2 + 2/pi + (2/pi) log2 N) / |C(N)|.
Interval g_peak_bound(const BigInt& N, mpfr_prec_t prec = 128);

/// Description text of the family n -> g(., 2^(8n)).
std::string g_family_text();

struct GWitness {
  long n = 0;
  BigInt N;
  Interval C;         // harmonic route
  Interval C_direct;  // summation route
  ElementarySignal signal;
  Interval value_half;  // f_n(1/2)
  Interval sample_sup;  // ||S f_n||_inf = 1 / |C(N)|
  bool value_ok = false;       // encloses 1 with width <= 2^-20
  bool sample_ok = false;      // upper end < 1/n
  bool c_bound_ok = false;     // lower end of |C| > log2(N)/4
  bool routes_agree = false;   // the two C enclosures intersect
  bool ok() const { return value_ok && sample_ok && c_bound_ok && routes_agree; }
};

GWitness build_g_witness(long n, const WitnessBudget& b = {});

// ---- q_N and the normalized family ----

ElementarySignal q_signal(long N);
/// Description text of the constant family n -> q_N.
std::string q_text(long N);

Interval lemma3_lower(const BigInt& N, mpfr_prec_t prec = 128);  // (1/(6 pi)) ln(N/2) - 1/pi
Interval lemma3_upper(const BigInt& N, mpfr_prec_t prec = 128);  // 4 + (5/pi) ln(2N + 1)

struct QWitness {
  long N = 0;
  ElementarySignal signal;
  Rational sample_l1;  // exact
  Interval l1;
  Interval lower, upper;
  bool inside = false;
};

QWitness build_q_witness(long N, int M = 10, const WitnessBudget& b = {});

enum class QSchedule { Scaled, Paper };
/// 2 * 4^(n+4) or 2 * 2^(96 n + 96).
BigInt q_schedule(QSchedule s, long n);

/// f_n = q_N / ||q_N||_1 as a description (the norm is the l1norm built-in).
std::string normalized_q_text(QSchedule s);
std::string normalized_q_text(const BigInt& N);

struct NormalizedQ {
  long n = 0;
  BigInt N;
  std::string text;
  Interval norm;         // ||f_n||_1, encloses 1
  Interval sample_norm;  // ||S f_n||_1 = 2 / ||q_N||_1
};

NormalizedQ build_normalized_q_family(long n, std::optional<BigInt> scaled_N, int M = 10,
                                      QSchedule s = QSchedule::Scaled, const WitnessBudget& b = {});

// ---- runtime-gated families ----

enum class GatedMode { PointValue, Norm };

/// h(m, k) = sum_{l=0}^{2^(k+2)} (1 - g(m, l)) for k = 0..kmax.
std::vector<BigInt> h_table(const Machine& m, int kmax, const WitnessBudget& b = {});

struct GatedRow {
  int k = 0;
  BigInt h;
  bool frozen = false;        // the machine halted within 2^(k+2) steps
  Interval sample_norm;       // ||x_{m,k}|| (sup norm or l1)
  bool bound_ok = false;      // non-frozen rows: sample_norm <= 2^-(k+2)
  std::optional<Interval> frozen_value;  // f(1/2) (pointvalue) or ||f||_1 (norm)
  std::string value_route;
};

struct GatedReport {
  std::string machine;
  GatedMode mode = GatedMode::PointValue;
  int kmax = 0;
  std::optional<std::int64_t> halt_step;
  std::optional<int> freeze_k;
  bool partial = true;  // the table stops at kmax
  std::string text;     // the emitted document
  std::vector<GatedRow> rows;
  bool ok() const;
};

GatedReport build_gated_family(const Machine& m, GatedMode mode, int kmax, const WitnessBudget& b = {});

// ---- divergence tables ----

struct DivergenceRow {
  long n = 0;
  BigInt N;
  Interval norm;
  Interval sample_norm;
  std::optional<Float> ratio_lo;  // norm.lo / sample_norm.hi, rounded down
};

enum class FamilyKind { G, Q, Zero };

std::vector<DivergenceRow> divergence_table(FamilyKind f, long n_max, int M = 10, const WitnessBudget& b = {});
/// Rows for an arbitrary continuous description: ||f_n|| against ||S f_n||
/// in the document's exponent.
std::vector<DivergenceRow> divergence_table(const Document& d, long n_max, int M = 10);

std::string divergence_csv(const std::vector<DivergenceRow>& rows);
std::string divergence_text(const std::vector<DivergenceRow>& rows);

}  // namespace bandlim
