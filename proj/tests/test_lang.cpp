#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bandlim/fuzz.hpp"
#include "bandlim/norm.hpp"
#include "bandlim/witness.hpp"
#include "oracle.hpp"

using namespace bandlim;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SAMPLES_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kZero =
    "space Bpi;\np inf;\nkind continuous;\n"
    "generator {\n  L(n) = 0;\n  c(n, k) = 0;\n}\nmodulus { xi(M) = 0; }\n";

ErrorKind kind_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("document was accepted");
  return ErrorKind::GeneratorFailure;
}

}  // namespace

TEST_CASE("parse examples") {
  Document z = parse_document(kZero);
  CHECK(z.kind == Kind::Continuous);
  CHECK(z.p.inf);
  Document g = parse_document(slurp("lemma1.txt"));
  CHECK(g.kind == Kind::Continuous);
  CHECK(serialize(parse_document(g_family_text())) == serialize(g));

  std::string unbound = kZero;
  unbound.replace(unbound.find("c(n, k) = 0"), 11, "c(n, k) = j");
  CHECK(kind_of(unbound) == ErrorKind::ValidationError);
}

TEST_CASE("syntax errors carry positions") {
  std::string open = kZero;
  open.erase(open.find("modulus"));
  open.erase(open.rfind('}'));
  try {
    parse_document(open);
    FAIL("accepted");
  } catch (const SyntaxError& e) {
    CHECK(e.line() > 0);
    CHECK(e.column() > 0);
  }
}

TEST_CASE("validation rejects broken invariants") {
  CHECK(kind_of("space Bpi; p 1/2; kind continuous; generator { L(n) = 0; c(n, k) = 1; } modulus { xi(M) = 0; }") ==
        ErrorKind::ValidationError);
  CHECK(kind_of("space ell; p 2; kind continuous; generator { L(n) = 0; c(n, k) = 1; } modulus { xi(M) = 0; }") ==
        ErrorKind::ValidationError);
  CHECK(kind_of("space Bpi; p 2; kind continuous; generator { L(n) = 0; c(n, k) = 1; } modulus { xi(M) = n; }") ==
        ErrorKind::ValidationError);
  CHECK(kind_of("space Bpi; p 2; kind continuous; generator { L(n) = k; c(n, k) = 1; } modulus { xi(M) = 0; }") ==
        ErrorKind::ValidationError);
}

TEST_CASE("serialize is byte-stable and idempotent") {
  Document z = parse_document(kZero);
  CHECK(serialize(z) == serialize(parse_document(kZero)));
  CHECK(serialize(parse_document(serialize(z))) == serialize(z));

  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    FuzzOptions o;
    o.depth = 4;
    o.allow_pi = i % 2 == 0;
    Document d = random_document(rng, o);
    std::string s = serialize(d);
    Document back = parse_document(s);
    CHECK(structurally_equal(back, d));
    CHECK(serialize(back) == s);
  }
  for (const char* f : {"lemma1.txt", "q64.txt", "normalized_q64.txt", "geometric.txt", "delta2.txt"}) {
    std::string s = serialize(parse_document(slurp(f)));
    CHECK(serialize(parse_document(s)) == s);
  }
}

TEST_CASE("expressions print with minimal parentheses and reparse") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 300; ++i) {
    ExprPtr e = random_expression(rng, {"n", "k"}, 5, true, true);
    CHECK(equal(parse_expression(to_text(*e)), e));
  }
  CHECK(to_text(*parse_expression("(1 + 2) * 3")) == "(1 + 2) * 3");
  CHECK(to_text(*parse_expression("1 - (2 - 3)")) == "1 - (2 - 3)");
  CHECK(to_text(*parse_expression("2^(3^2)")) == "2^3^2");
}

TEST_CASE("parser totality under mutation") {
  std::mt19937_64 rng(33);
  std::vector<std::string> seeds{kZero, slurp("lemma1.txt"), slurp("q64.txt"), slurp("delta2.txt"),
                                 slurp("normalized_q64.txt")};
  const std::string alphabet = "(){};,=+-*/^.0123456789 nkMLcxiwhereifthenelsepi\n#";
  int rejected = 0, accepted = 0, other = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string s = seeds[static_cast<std::size_t>(i) % seeds.size()];
    int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits && !s.empty(); ++e) {
      std::size_t pos = rng() % s.size();
      char ch = alphabet[rng() % alphabet.size()];
      switch (rng() % 3) {
        case 0: s.erase(pos, 1); break;
        case 1: s.insert(pos, 1, ch); break;
        default: s[pos] = ch; break;
      }
    }
    try {
      Document d = parse_document(s);
      // anything accepted must be valid and canonicalizable
      validate(d);
      std::string c = serialize(d);
      if (serialize(parse_document(c)) != c) ++other;
      ++accepted;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SyntaxError || e.kind() == ErrorKind::ValidationError)
        ++rejected;
      else
        ++other;
    } catch (...) {
      ++other;
    }
  }
  CHECK(other == 0);
  CHECK(rejected > 1000);
  MESSAGE("mutants accepted: " << accepted << ", rejected: " << rejected);
}

TEST_CASE("instantiate: g family at n = 1") {
  Document g = parse_document(slurp("lemma1.txt"));
  ElementarySignal f = instantiate_signal(g, 1);
  CHECK(f.c.lo() == 1);
  CHECK(f.c.hi() == 256);
  oracle::F C = oracle::c_of_n(256);
  for (std::int64_t k : {0L, 1L, 2L, 77L, 256L, 257L}) {
    oracle::F want = k >= 1 && k <= 256 ? oracle::F(k % 2 ? -1 : 1) / C : oracle::F(0);
    CHECK(oracle::encloses(to_interval(f.c.re(k), 128), want));
  }
}

TEST_CASE("instantiate: zero family and q_4") {
  Document z = parse_document(kZero);
  for (long n : {0L, 3L, 40L}) CHECK(instantiate_signal(z, n) == make_signal(0, {}));

  ElementarySignal q = instantiate_signal(parse_document(q_text(4)), 0);
  for (std::int64_t k = -10; k <= 2; ++k) {
    Rational want = k == 0 ? Rational(1) : (k < 0 && k >= -8 && k % 2 == 0 ? Rational(-1, 4) : Rational(0));
    CHECK(exact(q.c.re(k)) == want);
  }
}

TEST_CASE("instantiate: generated windows match stored ones") {
  Document d = parse_document(
      "space Bpi; p 2; kind continuous;"
      "generator { window(n) = 0 .. n; c(n, k) = (k^2 + 1) / (n + 1) where m = n + 1; } modulus { xi(M) = M; }");
  InstantiateOptions small;
  small.store_limit = 4;
  Coefficients a = instantiate_coefficients(d, 20);
  Coefficients b = instantiate_coefficients(d, 20, small);
  CHECK(a.stored());
  CHECK(!b.stored());
  CHECK(a == b);
  CHECK(b.base_exact());
}

TEST_CASE("instantiate errors") {
  Document d = parse_document(
      "space Bpi; p 2; kind continuous; generator { L(n) = 2^n; c(n, k) = 1 / (k - n); } modulus { xi(M) = M; }");
  CHECK_THROWS_WITH_AS(instantiate_signal(d, 1), doctest::Contains("DivisionByZero"), Error);
  InstantiateOptions tight;
  tight.max_window = 100;
  try {
    instantiate_signal(d, 10, tight);
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
}

TEST_CASE("modulus_of") {
  CHECK(modulus_of(parse_document(kZero), 7) == 0);
  Document d = parse_document(
      "space Bpi; p 2; kind continuous; generator { L(n) = 0; c(n, k) = 1; } modulus { xi(M) = M + 3; }");
  CHECK(modulus_of(d, 5) == 8);
}

TEST_CASE("description contract spot-check on convergent families") {
  // ||f_xi(M) - f_xi(M)+j|| <= 2^(-M+1) by norm-engine enclosures
  for (const char* name : {"geometric.txt", "sinc.txt", "zero.txt", "q64.txt"}) {
    Document d = parse_document(slurp(name));
    for (long M = 2; M <= 8; ++M) {
      long n0 = modulus_of(d, M).get_si();
      ElementarySignal a = instantiate_signal(d, n0);
      for (long j = 1; j <= 5; ++j) {
        ElementarySignal b = instantiate_signal(d, n0 + j);
        ElementarySignal diff = linear_combine(Rational(1), a, Rational(-1), b);
        Interval dist = d.p.is(1) && diff == make_signal(0, {}) ? Interval::from_int(0)
                                                              : lp_norm_signal(diff, d.p, 16);
        Interval bound = Interval::from_rational(Rational(2) / Rational(BigInt(1) << M, BigInt(1)), 64);
        CHECK_MESSAGE(mpfr_cmp(dist.hi().get(), bound.lo().get()) <= 0, name << " M=" << M << " j=" << j);
      }
    }
  }
}

TEST_CASE("where-bindings and built-ins") {
  Interval h = interval_eval("harmonic(4) - 25/12", 30);
  CHECK(h.contains(Rational(0)));
  CHECK(interval_eval("sum(j, 1, 10, j)", 10).contains(Rational(55)));
  CHECK(interval_eval("if 2 < 3 then 1 else 0", 10).contains(Rational(1)));
  CHECK(interval_eval("mod(17, 5) + abs(-3)", 10).contains(Rational(5)));
  CHECK(interval_eval("x * y where x = 3, y = x + 1", 10).contains(Rational(12)));
  // ||sinc||_1 diverges; l1norm of q_2 is finite
  Interval l = interval_eval(*parse_expression(
                                 "l1norm(j, -4, 0, if j == 0 then 1 else if mod(j, 2) == 0 then -1/2 else 0)"),
                             8);
  CHECK(l.is_positive());
}
