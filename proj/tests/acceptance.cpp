// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every failing criterion is listed in kKnownFailures
// (failures that follow from the mathematics, documented in the README) and
// 1 on any other failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "bandlim/compilers.hpp"
#include "bandlim/fuzz.hpp"
#include "bandlim/witness.hpp"
#include "oracle.hpp"

using namespace bandlim;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// |C(2^24)| = 5.92 < log2(2^24)/4 = 6: the inequality only holds up to
// log2 N ~ 21, so clause three of criterion 1 cannot pass at n = 3.
const std::set<std::string> kKnownFailures{"1:c_bound:n=3"};

Float pow2(long e) {
  Float f(64);
  mpfr_set_ui_2exp(f.get(), 1, e, MPFR_RNDN);
  return f;
}

bool width_le(const Interval& iv, long e) { return mpfr_cmp(iv.width().get(), pow2(e).get()) <= 0; }
bool lt(const Float& a, const Float& b) { return mpfr_cmp(a.get(), b.get()) < 0; }

std::vector<std::string> failure_tags;

void fail_tag(Outcome& o, const std::string& tag, const std::string& why) {
  o.pass = false;
  failure_tags.push_back(tag);
  o.detail += (o.detail.empty() ? "" : "; ") + why;
}

Outcome lemma1() {
  Outcome o;
  std::ostringstream info;
  for (long n = 1; n <= 3; ++n) {
    GWitness g = build_g_witness(n);
    std::string N = "n=" + std::to_string(n);
    if (!g.value_ok) fail_tag(o, "1:value:" + N, N + " f_n(1/2) " + g.value_half.decimal_str(10));
    if (!g.sample_ok) fail_tag(o, "1:sample:" + N, N + " ||S f_n|| " + g.sample_sup.decimal_str(10));
    if (!g.routes_agree) fail_tag(o, "1:routes:" + N, N + " C(N) routes disagree");
    if (!g.c_bound_ok)
      fail_tag(o, "1:c_bound:" + N,
               N + " |C(2^" + std::to_string(8 * n) + ")| = " + g.C.abs().decimal_str(6) + " is not > " +
                   std::to_string(2 * n) + " (the log2(N)/4 bound fails for log2 N > ~21)");
    info << (n > 1 ? ", " : "") << "n=" << n << " |C|=" << g.C.abs().decimal_str(5)
         << " ||Sf||=" << g.sample_sup.decimal_str(5);
  }
  o.detail = info.str() + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome lemma3() {
  Outcome o;
  std::ostringstream info;
  for (long N : {8L, 64L, 512L}) {
    QWitness q = build_q_witness(N, 10);
    info << "N=" << N << " " << q.l1.decimal_str(8) << " ";
    if (!q.inside) fail_tag(o, "2:inside:" + std::to_string(N), "N=" + std::to_string(N) + " outside the sandwich");
    if (!width_le(q.l1, -10)) fail_tag(o, "2:width:" + std::to_string(N), "N=" + std::to_string(N) + " too wide");
  }
  o.detail = info.str() + o.detail;
  return o;
}

Outcome sample_identity() {
  Outcome o;
  for (long N = 2; N <= 512; ++N) {
    // through the description language and the exact sequence norm
    ElementarySignal q = instantiate_signal(parse_document(q_text(N)), 0);
    auto s = lp_norm_sequence_exact(sample(q), Exponent::of(Rational(1)));
    Rational direct;
    for (std::int64_t k = q.c.lo(); k <= q.c.hi(); ++k) direct += exact(q.c.re(k)).abs();
    if (!s || *s != Rational(2) || direct != Rational(2))
      fail_tag(o, "3:" + std::to_string(N), "N=" + std::to_string(N) + " gives " + (s ? s->str() : "inexact"));
  }
  if (o.pass) o.detail = "||S q_N||_1 = 2 exactly for N = 2..512";
  return o;
}

Outcome divergence() {
  Outcome o;
  std::ostringstream info;
  auto rows = divergence_table(FamilyKind::G, 3, 10);
  for (const auto& r : rows) {
    bool ok = r.ratio_lo && mpfr_cmp_si(r.ratio_lo->get(), r.n) >= 0;
    info << "n=" << r.n << " ratio_lo=" << (r.ratio_lo ? r.ratio_lo->decimal_str(5) : "n/a") << " ";
    if (!ok) fail_tag(o, "4:" + std::to_string(r.n), "row " + std::to_string(r.n) + " below n");
  }
  o.detail = info.str() + o.detail;
  return o;
}

Outcome roundtrip() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  int cont = 0, disc = 0;
  for (int i = 0; i < 50; ++i) {
    FuzzOptions f;
    f.p = Exponent::of(Rational(2));
    f.kind = i % 2 ? Kind::Discrete : Kind::Continuous;
    f.depth = 6;
    Document d = random_document(rng, f);
    RoundTripReport r = roundtrip_check(d, 8, 20);
    (d.kind == Kind::Continuous ? cont : disc)++;
    if (!r.ok() || r.shift != 0) fail_tag(o, "5:" + std::to_string(i), "document " + std::to_string(i) + ": " + serialize(d));
  }
  if (o.pass)
    o.detail = "50 documents (" + std::to_string(cont) + " continuous, " + std::to_string(disc) +
               " discrete), coefficients equal, shift 0, distances <= 2^-20";
  return o;
}

Outcome refusal() {
  Outcome o;
  std::mt19937_64 rng(7);
  ConstantTable any = ConstantTable::interpolation_defaults();
  any.set(Exponent::of(Rational(1)), {Rational(1000), "deliberately offered"});
  any.set(Exponent::infinity(), {Rational(1000), "deliberately offered"});
  int refused = 0;
  for (int i = 0; i < 100; ++i) {
    FuzzOptions f;
    f.kind = Kind::Discrete;
    f.p = i % 2 ? Exponent::of(Rational(1)) : Exponent::infinity();
    Document d = random_document(rng, f);
    try {
      compile_interpolation(d, any);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnsupportedExponent) ++refused;
    }
  }
  if (refused != 100) fail_tag(o, "6", std::to_string(100 - refused) + " inputs not refused");
  o.detail = std::to_string(refused) + "/100 refused with UnsupportedExponent" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome gated() {
  Outcome o;
  std::string dir = SAMPLES_DIR;
  GatedReport h = build_gated_family(load_machine(dir + "/halt37.tm"), GatedMode::PointValue, 6);
  if (!h.halt_step || *h.halt_step != 37) fail_tag(o, "7:machine", "halt37 does not halt at 37");
  if (!h.freeze_k || *h.freeze_k != 4) fail_tag(o, "7:freeze", "freeze index is not 4");
  for (const auto& row : h.rows)
    if (row.frozen && (!row.frozen_value || !row.frozen_value->contains(Rational(1)) || !width_le(*row.frozen_value, -16)))
      fail_tag(o, "7:value:" + std::to_string(row.k), "frozen value at k=" + std::to_string(row.k));
  GatedReport l = build_gated_family(load_machine(dir + "/loop.tm"), GatedMode::PointValue, 6);
  for (const auto& row : l.rows)
    if (row.frozen || mpfr_cmp(row.sample_norm.hi().get(), pow2(-(row.k + 2)).get()) > 0)
      fail_tag(o, "7:loop:" + std::to_string(row.k), "loop row K=" + std::to_string(row.k) + " above 2^-(K+2)");
  std::ostringstream info;
  info << "halt37 freezes at k=" << (h.freeze_k ? std::to_string(*h.freeze_k) : "none");
  if (h.freeze_k) info << " with f(1/2) in " << h.rows[static_cast<std::size_t>(*h.freeze_k)].frozen_value->decimal_str(8);
  info << "; loop K=6 norm " << l.rows.back().sample_norm.decimal_str(4);
  o.detail = info.str() + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome soundness() {
  Outcome o;
  std::mt19937_64 rng(99);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    ExprPtr e = random_expression(rng, {}, 6, true);
    int M = 4 + i % 60;
    Interval iv = interval_eval(*e, M);
    if (!oracle::encloses(iv, oracle::eval(*e)) || !width_le(iv, -M)) {
      ++bad;
      if (bad <= 3) fail_tag(o, "8:eval", "not enclosed: " + to_text(*e));
    }
  }
  int parseval = 0, mism = 0;
  for (int i = 0; i < 100; ++i) {
    FuzzOptions f;
    f.kind = Kind::Continuous;
    f.p = Exponent::of(Rational(2));
    f.allow_pi = i % 2 == 1;
    Document d = random_document(rng, f);
    for (long n = 0; n <= 2; ++n) {
      ElementarySignal s = instantiate_signal(d, n);
      ++parseval;
      if (l2_norm_signal(s, 24).exact_str() != lp_norm_sequence(sample(s), Exponent::of(Rational(2)), 24).exact_str())
        ++mism;
    }
  }
  if (mism) fail_tag(o, "8:parseval", std::to_string(mism) + " Parseval mismatches");
  o.detail = "1000 interval evaluations, " + std::to_string(bad) + " containment failures; " +
             std::to_string(parseval) + " Parseval checks, " + std::to_string(mism) + " mismatches" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome lemma4_scaled() {
  Outcome o;
  std::ostringstream info;
  std::optional<Interval> prev;
  for (long N : {64L, 512L, 4096L}) {
    NormalizedQ q = build_normalized_q_family(1, BigInt(N), 10);
    std::string tag = std::to_string(N);
    if (!q.norm.contains(Rational(1))) fail_tag(o, "9:norm:" + tag, "N=" + tag + " norm misses 1");
    if (!width_le(q.norm, -10) || !width_le(q.sample_norm, -10)) fail_tag(o, "9:width:" + tag, "N=" + tag + " too wide");
    if (prev && !lt(q.sample_norm.hi(), prev->lo())) fail_tag(o, "9:decrease:" + tag, "N=" + tag + " not decreasing");
    prev = q.sample_norm;
    info << "N=" << N << " ||Sf||=" << q.sample_norm.decimal_str(6) << " ";
  }
  o.detail = info.str() + o.detail;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "g family suite", lemma1},
      {2, "q_N BIBO sandwich", lemma3},
      {3, "||S q_N||_1 = 2", sample_identity},
      {4, "divergence table", divergence},
      {5, "round trip at p=2", roundtrip},
      {6, "interpolation refusal", refusal},
      {7, "gated family", gated},
      {8, "soundness battery", soundness},
      {9, "normalized q scaled mechanism", lemma4_scaled},
  };
  int passed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      failure_tags.push_back("exception:" + std::to_string(c.id));
      o.detail = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s, %.1fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    passed += o.pass;
  }
  int unexpected = 0;
  for (const auto& t : failure_tags)
    if (!kKnownFailures.count(t)) ++unexpected;
  std::printf("%d/%zu criteria pass; %zu failing checks, %d unexpected\n", passed, all.size(), failure_tags.size(),
              unexpected);
  return unexpected ? 1 : 0;
}
