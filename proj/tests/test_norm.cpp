#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bandlim/witness.hpp"
#include "oracle.hpp"

using namespace bandlim;
using oracle::F;

namespace {

const ElementarySignal kSinc = make_signal(0, {Rational(1)});
const Exponent kOne = Exponent::of(Rational(1));
const Exponent kTwo = Exponent::of(Rational(2));
const Exponent kInf = Exponent::infinity();

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SAMPLES_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool le(const Float& a, const Float& b) { return mpfr_cmp(a.get(), b.get()) <= 0; }
bool lt(const Float& a, const Float& b) { return mpfr_cmp(a.get(), b.get()) < 0; }

ErrorKind error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::GeneratorFailure;
}

// Random rational signal; `integrable` forces sum (-1)^k c_k = 0.
ElementarySignal random_signal(std::mt19937_64& rng, int max_len, bool integrable) {
  std::size_t n = 1 + rng() % static_cast<std::size_t>(max_len);
  std::int64_t lo = static_cast<std::int64_t>(rng() % 7) - 3;
  auto c = oracle::random_coeffs(rng, n);
  if (integrable) {
    if (n == 1) c.push_back(Rational(0));
    Rational alt;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) alt += (((lo + static_cast<std::int64_t>(i)) % 2) ? -c[i] : c[i]);
    std::int64_t last = lo + static_cast<std::int64_t>(c.size()) - 1;
    c.back() = (last % 2) ? alt : -alt;
  }
  return make_signal(lo, c);
}

}  // namespace

TEST_CASE("sequence norms: examples") {
  ElementarySequence delta = make_sequence(0, {Rational(1)});
  for (const auto& p : {kOne, Exponent::of(Rational(3, 2)), kTwo, Exponent::of(Rational(7, 3)), kInf})
    CHECK(lp_norm_sequence(delta, p, 20).contains(Rational(1)));
  for (long N : {2L, 4L, 17L, 64L}) {
    auto s = lp_norm_sequence_exact(sample(q_signal(N)), kOne);
    REQUIRE(s);
    CHECK(*s == Rational(2));
  }
  ElementarySequence x = make_sequence(-1, {Rational(3), Rational(0), Rational(-4)});
  CHECK(lp_norm_sequence(x, kTwo, 30).contains(Rational(5)));
  CHECK(*lp_norm_sequence_exact(x, kInf) == Rational(4));
  // (3^(3/2) + 4^(3/2))^(2/3)
  F want = pow(pow(F(3), F(1.5)) + F(8), F(2) / 3);
  Interval v = lp_norm_sequence(x, Exponent::of(Rational(3, 2)), 30);
  CHECK(oracle::encloses(v, want));
  CHECK(v.log2_width() <= -30);
}

TEST_CASE("peak value examples") {
  Interval p = peak_value(kSinc, 16);
  CHECK(p.contains(Rational(1)));
  CHECK(p.log2_width() <= -16);
  CHECK(peak_value(make_signal(0, {Rational(2)}), 16).contains(Rational(2)));

  // f_1: at least f_1(1/2) = 1, at most 8/pi + (8 + 8/pi)/log2 N
  GWitness g = build_g_witness(1);
  Interval pk = peak_value(g.signal, 10);
  Interval bound = Interval::from_rational(Rational(8), 64) / Interval::pi(64) +
                   (Interval::from_int(8) + Interval::from_int(8) / Interval::pi(64)) * Rational(1, 8);
  CHECK(mpfr_cmp_ui(pk.hi().get(), 1) >= 0);
  CHECK(le(pk.hi(), bound.lo()));
  CHECK(le(pk.hi(), g_peak_bound(BigInt(256)).hi()));
}

TEST_CASE("L1 norm examples") {
  CHECK(error_of([] { l1_norm_signal(kSinc, 10); }) == ErrorKind::NotIntegrable);
  CHECK(check_integrable(kSinc, 10) == Integrability::NotIntegrable);
  ElementarySignal q4 = q_signal(4);
  CHECK(check_integrable(q4, 10) == Integrability::Integrable);
  Interval l = l1_norm_signal(q4, 10);
  CHECK(lt(lemma3_lower(BigInt(4)).hi(), l.lo()));
  CHECK(lt(l.hi(), lemma3_upper(BigInt(4)).lo()));
  CHECK(l.log2_width() <= -10);

  ElementarySignal z = linear_combine(Rational(1), q4, Rational(-1), q4);
  CHECK(l1_norm_signal(z, 10).contains(Rational(0)));
}

TEST_CASE("integrability with inexact coefficients") {
  // pi * sinc(t) - pi * sinc(t - 2): the alternating sum is 0 but only known as an enclosure
  Document d = parse_document(
      "space Bpi; p 1; kind continuous;"
      "generator { window(n) = 0 .. 2; c(n, k) = if k == 0 then pi else if k == 2 then -pi else 0; }"
      "modulus { xi(M) = 0; }");
  ElementarySignal f = instantiate_signal(d, 0);
  CHECK(check_integrable(f, 10) == Integrability::Inconclusive);
  CHECK(error_of([&] { l1_norm_signal(f, 10); }) == ErrorKind::Inconclusive);

  Document e = parse_document(
      "space Bpi; p 1; kind continuous;"
      "generator { window(n) = 0 .. 2; c(n, k) = pi; } modulus { xi(M) = 0; }");
  CHECK(check_integrable(instantiate_signal(e, 0), 10) == Integrability::NotIntegrable);
}

TEST_CASE("L2 norm examples") {
  CHECK(l2_norm_signal(kSinc, 20).contains(Rational(1)));
  Interval quad = l2_norm_quadrature(kSinc, 10);
  CHECK(quad.contains(Rational(1)));
  CHECK(l2_norm_signal(make_signal(0, {Rational(3), Rational(4)}), 20).contains(Rational(5)));
}

TEST_CASE("L2: coefficient route agrees with quadrature") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    ElementarySignal f = random_signal(rng, 6, false);
    CHECK(l2_norm_signal(f, 20).intersects(l2_norm_quadrature(f, 8)));
  }
}

TEST_CASE("Plancherel-Polya at p = 2 is an exact identity") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    ElementarySignal f = random_signal(rng, 20, false);
    Interval a = l2_norm_signal(f, 24), b = lp_norm_sequence(sample(f), kTwo, 24);
    CHECK(a.exact_str() == b.exact_str());
  }
}

TEST_CASE("sampling contraction at p = inf") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 20; ++i) {
    ElementarySignal f = random_signal(rng, 5, false);
    Interval s = lp_norm_sequence(sample(f), kInf, 20);
    CHECK(le(s.lo(), peak_value(f, 8).hi()));
  }
}

TEST_CASE("quadrature refinement stays inside the previous enclosure") {
  std::mt19937_64 rng(44);
  int outside = 0;
  for (int i = 0; i < 20; ++i) {
    ElementarySignal f = random_signal(rng, 5, true);
    Interval coarse = l1_norm_signal(f, 6), fine = l1_norm_signal(f, 8);
    if (!coarse.contains(fine)) ++outside;
    Interval c2 = l2_norm_quadrature(f, 6), f2 = l2_norm_quadrature(f, 8);
    if (!c2.contains(f2)) ++outside;
  }
  CHECK(outside == 0);
}

TEST_CASE("tail envelopes dominate the signal") {
  std::mt19937_64 rng(45);
  int failures = 0;
  for (int i = 0; i < 20; ++i) {
    bool integrable = i % 2 == 0;
    ElementarySignal f = random_signal(rng, 6, integrable);
    std::vector<Rational> c;
    for (std::int64_t k = f.c.lo(); k <= f.c.hi(); ++k) c.push_back(exact(f.c.re(k)));
    double L = static_cast<double>(f.c.half_width());
    for (int j = 0; j < 50; ++j) {
      Rational t(static_cast<long>(std::ldexp(L + 1.5, 4)) + static_cast<long>(rng() % 4000), 16);
      if (j % 2) t = -t;
      F v = abs(oracle::signal(f.c.lo(), c, oracle::to_f(t)));
      if (v > F(tail_envelope(f, t.to_double()))) ++failures;
    }
    TailBound s = sup_tail(f, L + 4);
    CHECK(s.bound >= 0);
    if (integrable) CHECK(l1_tail(f, L + 4).bound >= 0);
  }
  CHECK(failures == 0);
}

TEST_CASE("time concentration") {
  for (Rational Lc : {Rational(1), Rational(1, 2), Rational(4)}) {
    Interval c = time_concentration(kSinc, Lc, kInf, 16);
    CHECK(c.contains(Rational(1)));
  }
  ElementarySignal q8 = q_signal(8);
  Interval full = l1_norm_signal(q8, 10);
  Interval c20 = time_concentration(q8, Rational(20), kOne, 10);
  Interval c64 = time_concentration(q8, Rational(64), kOne, 10);
  CHECK(le(c20.lo(), full.hi()));
  CHECK(le(c64.lo(), full.hi()));
  CHECK(le(c20.lo(), c64.hi()));
  // the gap to the full-line norm shrinks as Lc grows
  Interval c512 = time_concentration(q8, Rational(512), kOne, 10);
  CHECK(le(c64.lo(), c512.hi()));
  CHECK(le(c512.lo(), full.hi()));
  Float gap64(64), gap512(64);
  mpfr_sub(gap64.get(), full.lo().get(), c64.hi().get(), MPFR_RNDD);
  mpfr_sub(gap512.get(), full.hi().get(), c512.lo().get(), MPFR_RNDU);
  CHECK(lt(gap512, gap64));
}

TEST_CASE("BIBO norm") {
  ElementarySignal q4 = q_signal(4);
  CHECK(bibo_norm(q4, 10).exact_str() == l1_norm_signal(q4, 10).exact_str());
  CHECK(bibo_norm(make_signal(0, {}), 10).contains(Rational(0)));
  CHECK(error_of([] { bibo_norm(kSinc, 10); }) == ErrorKind::NotIntegrable);
}

TEST_CASE("BIBO norm of q_N sandwiched by harmonic bounds") {
  for (long N : {8L, 64L, 512L}) {
    Interval l = l1_norm_signal(q_signal(N), 10);
    CHECK(lt(lemma3_lower(BigInt(N)).hi(), l.lo()));
    CHECK(lt(l.hi(), lemma3_upper(BigInt(N)).lo()));
  }
}

TEST_CASE("rational exponents on signals") {
  Interval s = lp_norm_signal(kSinc, Exponent::of(Rational(3)), 6);
  // 0 < ||sinc||_3 < ||sinc||_2 = 1
  CHECK(s.is_positive());
  CHECK(le(s.hi(), Interval::from_int(1).hi()));
  CHECK(lp_norm_signal(kSinc, kTwo, 20).contains(Rational(1)));
}

TEST_CASE("norm of a description") {
  CHECK(norm_of_description(parse_document(slurp("zero.txt")), 10).contains(Rational(0)));
  CHECK(norm_of_description(parse_document(slurp("sinc.txt")), 10).contains(Rational(1)));
  Interval nq = norm_of_description(parse_document(slurp("normalized_q64.txt")), 10);
  CHECK(nq.contains(Rational(1)));
  Interval geo = norm_of_description(parse_document(slurp("geometric.txt")), 12);
  CHECK(oracle::encloses(geo, sqrt(F(1) / 3)));
}
