#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bandlim/compilers.hpp"
#include "bandlim/fuzz.hpp"
#include "bandlim/witness.hpp"

using namespace bandlim;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SAMPLES_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Document sample_doc(const std::string& name) { return parse_document(slurp(name)); }

ErrorKind error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::GeneratorFailure;
}

std::string temp_json(const std::string& body) {
  std::string path = "/tmp/bandlim_ct_" + std::to_string(std::hash<std::string>{}(body)) + ".json";
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("compile_sampling examples") {
  Compiled z = compile_sampling(sample_doc("zero.txt"));
  CHECK(z.doc.kind == Kind::Discrete);
  CHECK(z.report.shift == 0);
  CHECK(instantiate_sequence(z.doc, 3) == make_sequence(0, {}));

  Document sinc = sample_doc("sinc.txt");
  Compiled d = compile_sampling(sinc);
  CHECK(d.doc.space == Space::Ell);
  CHECK(instantiate_sequence(d.doc, 0) == make_sequence(0, {Rational(1)}));
  for (long M = 0; M <= 32; ++M) CHECK(modulus_of(d.doc, M) == modulus_of(sinc, M));

  Document g = sample_doc("lemma1.txt");
  Compiled gs = compile_sampling(g);
  CHECK(instantiate_sequence(gs.doc, 1) == sample(instantiate_signal(g, 1)));
  CHECK(gs.report.input_hash == document_hash(g));
  CHECK(gs.report.output == serialize(gs.doc));
}

TEST_CASE("compile_interpolation examples") {
  Compiled z = compile_interpolation(compile_sampling(sample_doc("zero.txt")).doc);
  CHECK(z.doc.kind == Kind::Continuous);
  CHECK(z.report.shift == 0);
  CHECK(instantiate_signal(z.doc, 0) == make_signal(0, {}));

  Compiled s = compile_interpolation(sample_doc("delta2.txt"));
  CHECK(instantiate_signal(s.doc, 0) == make_signal(0, {Rational(1)}));
}

TEST_CASE("element-level identities on fuzzed documents") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 50; ++i) {
    FuzzOptions o;
    o.kind = Kind::Continuous;
    o.p = i % 2 ? Exponent::of(Rational(2)) : Exponent::infinity();
    Document d = random_document(rng, o);
    Compiled c = compile_sampling(d);
    for (long n = 0; n <= 3; ++n) CHECK(instantiate_sequence(c.doc, n) == sample(instantiate_signal(d, n)));
  }
  for (int i = 0; i < 50; ++i) {
    FuzzOptions o;
    o.kind = Kind::Discrete;
    o.p = Exponent::of(Rational(2));
    Document d = random_document(rng, o);
    Compiled c = compile_interpolation(d);
    for (long n = 0; n <= 3; ++n) CHECK(instantiate_signal(c.doc, n) == interpolate(instantiate_sequence(d, n)));
  }
}

TEST_CASE("modulus shift follows the configured constant") {
  CHECK(shift_for(Rational(1)) == 0);
  CHECK(shift_for(Rational(2)) == 1);
  CHECK(shift_for(Rational(3)) == 2);
  CHECK(shift_for(Rational(1, 3)) == 0);

  ConstantTable cr = ConstantTable::interpolation_defaults();
  cr.set(Exponent::of(Rational(3, 2)), {Rational(5), "test constant"});
  std::mt19937_64 rng(52);
  for (int i = 0; i < 20; ++i) {
    FuzzOptions o;
    o.kind = Kind::Discrete;
    o.p = Exponent::of(Rational(3, 2));
    Document d = random_document(rng, o);
    Compiled c = compile_interpolation(d, cr);
    CHECK(c.report.shift == 3);
    for (long M = 0; M <= 32; ++M) CHECK(modulus_of(c.doc, M) == modulus_of(d, M + 3));
  }
}

TEST_CASE("interpolation refuses p = 1 and p = inf") {
  std::mt19937_64 rng(53);
  ConstantTable generous = ConstantTable::interpolation_defaults();
  generous.set(Exponent::of(Rational(1)), {Rational(100), "would be wrong"});
  generous.set(Exponent::infinity(), {Rational(100), "would be wrong"});
  int refused = 0;
  for (int i = 0; i < 100; ++i) {
    FuzzOptions o;
    o.kind = Kind::Discrete;
    o.p = i % 2 ? Exponent::of(Rational(1)) : Exponent::infinity();
    Document d = random_document(rng, o);
    if (error_of([&] { compile_interpolation(d, generous); }) == ErrorKind::UnsupportedExponent) ++refused;
  }
  CHECK(refused == 100);
}

TEST_CASE("missing constants") {
  std::mt19937_64 rng(54);
  FuzzOptions o;
  o.kind = Kind::Discrete;
  o.p = Exponent::of(Rational(3, 2));
  Document d = random_document(rng, o);
  CHECK(error_of([&] { compile_interpolation(d); }) == ErrorKind::MissingConstant);
  o.kind = Kind::Continuous;
  o.p = Exponent::of(Rational(1));
  Document c = random_document(rng, o);
  CHECK(error_of([&] { compile_sampling(c); }) == ErrorKind::MissingConstant);
  CHECK(error_of([&] { compile_sampling(d); }) == ErrorKind::ValidationError);
  CHECK(error_of([&] { compile_interpolation(c); }) == ErrorKind::ValidationError);
}

TEST_CASE("constant tables from JSON") {
  ConstantTable t;
  t.load_json(temp_json(R"({"constants": [{"p": "3/2", "value": "4", "citation": "a reference"}]})"));
  REQUIRE(t.find(Exponent::of(Rational(3, 2))));
  CHECK(t.find(Exponent::of(Rational(3, 2)))->value == Rational(4));
  CHECK(!t.find(Exponent::of(Rational(2))));

  ConstantTable u;
  CHECK(error_of([&] { u.load_json(temp_json(R"({"constants": [{"p": "3/2", "value": "4"}]})")); }) ==
        ErrorKind::ValidationError);
  CHECK(error_of([&] { u.load_json(temp_json(R"({"constants": [{"p": "3/2", "value": "-1", "citation": "x"}]})")); }) ==
        ErrorKind::ValidationError);
  CHECK(error_of([&] { u.load_json(temp_json("not json")); }) == ErrorKind::ValidationError);

  ConstantTable shipped;
  shipped.load_json(std::string(SAMPLES_DIR) + "/cr_table.json");
  CHECK(shipped.find(Exponent::of(Rational(2))));
}

TEST_CASE("round trips") {
  for (const char* name : {"zero.txt", "geometric.txt", "delta2.txt"}) {
    RoundTripReport r = roundtrip_check(sample_doc(name), 5, 20);
    CHECK(r.ok());
    CHECK(r.shift == 0);
    for (const auto& row : r.rows) CHECK(row.distance.contains(Rational(0)));
  }
  std::mt19937_64 rng(55);
  for (int i = 0; i < 20; ++i) {
    FuzzOptions o;
    o.p = Exponent::of(Rational(2));
    o.depth = 6;
    CHECK(roundtrip_check(random_document(rng, o), 4, 20).ok());
  }
}

TEST_CASE("compiler output is deterministic") {
  Document g = sample_doc("lemma1.txt");
  Compiled a = compile_sampling(g), b = compile_sampling(parse_document(serialize(g)));
  CHECK(a.report.output == b.report.output);
  CHECK(a.report.input_hash == b.report.input_hash);
  CHECK(a.report.notes == b.report.notes);
}
