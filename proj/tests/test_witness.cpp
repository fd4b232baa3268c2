#include <doctest.h>

#include <cmath>

#include "bandlim/witness.hpp"
#include "oracle.hpp"

using namespace bandlim;
using oracle::F;

namespace {

Machine sample_machine(const std::string& name) { return load_machine(std::string(SAMPLES_DIR) + "/" + name); }

bool le(const Float& a, const Float& b) { return mpfr_cmp(a.get(), b.get()) <= 0; }
bool lt(const Float& a, const Float& b) { return mpfr_cmp(a.get(), b.get()) < 0; }

Float pow2(long e) {
  Float f(64);
  mpfr_set_ui_2exp(f.get(), 1, e, MPFR_RNDN);
  return f;
}

ErrorKind error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::GeneratorFailure;
}

const char* kHalt3 =
    "name halt3\nstart a\nhalt h\n"
    "a _ -> b 1 R\n"
    "b _ -> c 1 R\n"
    "c _ -> h 1 R\n";

}  // namespace

TEST_CASE("machine examples") {
  Machine h0 = sample_machine("halt0.tm");
  CHECK(run_machine(h0, 0));
  Machine loop = sample_machine("loop.tm");
  CHECK(!run_machine(loop, 1000000));
  Machine h37 = sample_machine("halt37.tm");
  CHECK(!run_machine(h37, 36));
  CHECK(run_machine(h37, 37));
  CHECK(*halting_step(h37, 1000) == 37);
  CHECK(*halting_step(parse_machine(kHalt3), 10) == 3);
}

TEST_CASE("halting is monotone in the step budget") {
  for (const char* name : {"halt0.tm", "halt1.tm", "halt37.tm", "loop.tm"}) {
    Machine m = sample_machine(name);
    bool seen = false;
    for (std::int64_t s = 0; s <= 80; ++s) {
      bool h = run_machine(m, s);
      CHECK(!(seen && !h));
      seen = seen || h;
    }
  }
}

TEST_CASE("malformed machines") {
  CHECK(error_of([] { parse_machine("start a\nhalt b\na 1 => b 1 R\n"); }) == ErrorKind::MalformedProgram);
  CHECK(error_of([] { parse_machine("start a\nhalt b\na 1 -> b 1 Q\n"); }) == ErrorKind::MalformedProgram);
  CHECK(error_of([] { parse_machine("halt b\n"); }) == ErrorKind::MalformedProgram);
  CHECK(error_of([] { parse_machine("start a\nhalt b\na 1 -> b 1 R\na 1 -> a 0 L\n"); }) ==
        ErrorKind::MalformedProgram);
  try {
    parse_machine("name x\nstart a\nhalt b\n\nbogus line\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("runtime function table") {
  for (const char* name : {"halt0.tm", "halt1.tm", "halt37.tm", "loop.tm"}) {
    Machine m = sample_machine(name);
    std::vector<BigInt> h = h_table(m, 6);
    for (int k = 0; k <= 6; ++k) {
      // h(m, k) = sum_{l=0}^{2^(k+2)} (1 - g(m, l))
      long want = 0;
      for (std::int64_t l = 0; l <= (1 << (k + 2)); ++l) want += run_machine(m, l) ? 0 : 1;
      CHECK(h[static_cast<std::size_t>(k)] == want);
      if (k) CHECK(h[static_cast<std::size_t>(k - 1)] <= h[static_cast<std::size_t>(k)]);
    }
  }
  std::vector<BigInt> h37 = h_table(sample_machine("halt37.tm"), 6);
  CHECK(h37 == std::vector<BigInt>{5, 9, 17, 33, 37, 37, 37});
}

TEST_CASE("C(N) routes and the log2(N)/4 bound") {
  for (long N : {1L, 2L, 4L, 256L, 4096L}) {
    CHECK(oracle::encloses(c_of_n(BigInt(N), 160), oracle::c_of_n(N)));
    CHECK(oracle::encloses(c_of_n_direct(N, 160), oracle::c_of_n(N)));
  }
  for (int e : {4, 8, 16}) {
    BigInt N = BigInt(1) << e;
    Interval C = c_of_n(N);
    CHECK(mpfr_cmp_d(C.abs().lo().get(), e / 4.0) > 0);
  }
  // C(N) ~ -(1/pi)(ln N + gamma + 2 ln 2) for huge N
  BigInt big = BigInt(1) << 2000;
  F approx = -(2000 * log(F(2)) + boost::math::constants::euler<F>() + 2 * log(F(2))) / oracle::pi();
  Interval C = c_of_n(big, 256);
  Float gap(64);
  mpfr_sub(gap.get(), C.hi().get(), C.lo().get(), MPFR_RNDU);
  CHECK(mpfr_cmp_d(gap.get(), 1e-30) < 0);
  CHECK(abs(oracle::to_f(C.mid()) - approx) < F(1e-70));
}

TEST_CASE("g witnesses for n = 1, 2") {
  for (long n : {1L, 2L}) {
    GWitness g = build_g_witness(n);
    CHECK(g.value_ok);
    CHECK(g.value_half.contains(Rational(1)));
    CHECK(g.value_half.log2_width() <= -20);
    CHECK(g.sample_ok);
    CHECK(lt(g.sample_sup.hi(), Interval::from_rational(Rational(1, n), 64).lo()));
    CHECK(g.c_bound_ok);
    CHECK(g.routes_agree);
    F C = oracle::c_of_n(1L << (8 * n));
    CHECK(oracle::encloses(g.C, C));
    CHECK(oracle::encloses(g.sample_sup, 1 / abs(C)));
    // f_n(1/2) through the oracle at n = 1
    if (n == 1) {
      std::vector<Rational> c;
      for (long k = 1; k <= 256; ++k) c.push_back(Rational(k % 2 ? -1 : 1));
      CHECK(abs(oracle::signal(1, c, F(0.5)) / C - 1) < F(1e-50));
    }
  }
  // |C(256)| = 2.390..., above log2(256)/4 = 2
  CHECK(build_g_witness(1).C.decimal_str(4).find("-2.39") != std::string::npos);
}

TEST_CASE("g witness respects the window budget") {
  WitnessBudget tight;
  tight.max_window = 1000;
  CHECK(error_of([&] { build_g_witness(2, tight); }) == ErrorKind::ResourceLimit);
}

TEST_CASE("half-integer identity matches direct evaluation") {
  for (long N : {1L, 3L, 256L}) {
    Interval a = alternating_half_sum(BigInt(N), 160) / c_of_n(BigInt(N), 160);
    CHECK(a.contains(Rational(1)));
  }
  BigInt huge = BigInt(1) << 296;
  Interval v = alternating_half_sum(huge, 200) / c_of_n(huge, 220);
  CHECK(v.contains(Rational(1)));
  CHECK(v.log2_width() <= -16);
}

TEST_CASE("q_N witnesses") {
  QWitness q4 = build_q_witness(4);
  CHECK(q4.sample_l1 == Rational(2));
  ElementarySignal s = q_signal(4);
  CHECK(exact(s.c.re(0)) == Rational(1));
  for (std::int64_t k : {-2, -4, -6, -8}) CHECK(exact(s.c.re(k)) == Rational(-1, 4));
  for (long N = 2; N <= 64; ++N) CHECK(*lp_norm_sequence_exact(sample(q_signal(N)), Exponent::of(Rational(1))) == Rational(2));

  QWitness q64 = build_q_witness(64);
  CHECK(q64.inside);
  CHECK(lt(q64.l1.hi(), lemma3_upper(BigInt(64)).lo()));
  CHECK(lt(lemma3_lower(BigInt(64)).hi(), q64.l1.lo()));
  CHECK(oracle::encloses(lemma3_upper(BigInt(64)), 4 + 5 / oracle::pi() * log(F(129))));
  CHECK(oracle::encloses(lemma3_lower(BigInt(64)), log(F(32)) / (6 * oracle::pi()) - 1 / oracle::pi()));
}

TEST_CASE("normalized q family") {
  NormalizedQ a = build_normalized_q_family(1, BigInt(64));
  CHECK(a.norm.contains(Rational(1)));
  CHECK(a.norm.log2_width() <= -10);
  QWitness q = build_q_witness(64);
  Interval ratio = Interval::from_int(2, 128) / q.l1;
  CHECK(a.sample_norm.intersects(ratio));

  NormalizedQ b = build_normalized_q_family(1, BigInt(512));
  CHECK(lt(b.sample_norm.hi(), a.sample_norm.lo()));

  CHECK(q_schedule(QSchedule::Scaled, 1) == 2 * 1024);
  CHECK(q_schedule(QSchedule::Paper, 1) == BigInt(2) * (BigInt(1) << 192));
  WitnessBudget b0;
  CHECK(error_of([&] { build_normalized_q_family(1, std::nullopt, 10, QSchedule::Paper, b0); }) ==
        ErrorKind::ResourceLimit);
}

TEST_CASE("gated family: halt at step 37, pointvalue") {
  GatedReport r = build_gated_family(sample_machine("halt37.tm"), GatedMode::PointValue, 6);
  REQUIRE(r.freeze_k);
  CHECK(*r.freeze_k == 4);
  CHECK(r.ok());
  for (const auto& row : r.rows) {
    if (row.frozen) {
      REQUIRE(row.frozen_value);
      CHECK(row.frozen_value->contains(Rational(1)));
      CHECK(row.frozen_value->log2_width() <= -16);
    } else {
      CHECK(row.bound_ok);
    }
  }
  Document d = parse_document(r.text);
  CHECK(d.gated);
  CHECK(d.gated->h == std::vector<BigInt>{5, 9, 17, 33, 37, 37, 37});
}

TEST_CASE("gated family: early halts freeze to coefficient-equal elements") {
  GatedReport r = build_gated_family(sample_machine("halt1.tm"), GatedMode::PointValue, 3);
  Document d = parse_document(r.text);
  ElementarySequence x0 = instantiate_sequence(d, 0);
  for (long k = 1; k <= 3; ++k) CHECK(instantiate_sequence(d, k) == x0);
  // beyond kmax the table is partial
  CHECK_THROWS_AS(instantiate_sequence(d, 4), Error);

  GatedReport r3 = build_gated_family(parse_machine(kHalt3), GatedMode::PointValue, 4);
  REQUIRE(r3.freeze_k);
  CHECK(*r3.freeze_k == 0);
  for (const auto& row : r3.rows) {
    REQUIRE(row.frozen_value);
    CHECK(row.frozen_value->contains(Rational(1)));
  }

  GatedReport r0 = build_gated_family(sample_machine("halt0.tm"), GatedMode::PointValue, 2);
  Document d0 = parse_document(r0.text);
  ElementarySequence e = instantiate_sequence(d0, 2);
  CHECK(e.c.size() == 1);
}

TEST_CASE("gated family: looping machine") {
  Machine loop = sample_machine("loop.tm");
  for (GatedMode mode : {GatedMode::PointValue, GatedMode::Norm}) {
    GatedReport r = build_gated_family(loop, mode, 6);
    CHECK(!r.freeze_k);
    CHECK(r.ok());
    for (const auto& row : r.rows) {
      CHECK(row.bound_ok);
      CHECK(le(row.sample_norm.hi(), pow2(-(row.k + 2))));
    }
    CHECK(le(r.rows[4].sample_norm.hi(), pow2(-6)));
  }
}

TEST_CASE("gated family contract spot-check") {
  // ||x_xi(M) - x_xi(M)+j|| <= ||x_xi(M)|| + ||x_xi(M)+j|| <= 2^(-M+1) with xi(M) = M
  for (GatedMode mode : {GatedMode::PointValue, GatedMode::Norm}) {
    GatedReport r = build_gated_family(sample_machine("loop.tm"), mode, 13);
    for (int M = 2; M <= 8; ++M)
      for (int j = 1; j <= 5; ++j) {
        Interval s = r.rows[static_cast<std::size_t>(M)].sample_norm + r.rows[static_cast<std::size_t>(M + j)].sample_norm;
        CHECK(le(s.hi(), pow2(-M + 1)));
      }
  }
}

TEST_CASE("divergence tables") {
  auto zero = divergence_table(FamilyKind::Zero, 3);
  REQUIRE(zero.size() == 3);
  for (const auto& r : zero) CHECK(!r.ratio_lo);
  CHECK(divergence_csv(zero).find("n/a") != std::string::npos);
  CHECK(divergence_csv(zero).rfind("n,N,norm_lo,norm_hi,sample_norm_lo,sample_norm_hi,ratio_lo", 0) == 0);

  auto g = divergence_table(FamilyKind::G, 2);
  REQUIRE(g.size() == 2);
  for (const auto& r : g) {
    REQUIRE(r.ratio_lo);
    CHECK(mpfr_cmp_si(r.ratio_lo->get(), r.n) >= 0);
  }
  CHECK(mpfr_cmp(g[0].ratio_lo->get(), g[1].ratio_lo->get()) < 0);
}
