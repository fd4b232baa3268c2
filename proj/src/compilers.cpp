// SPDX-License-Identifier: Apache-2.0
#include "bandlim/compilers.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "bandlim/instantiate.hpp"

namespace bandlim {

namespace {

std::string key_of(const Exponent& p) { return p.str(); }

ExprPtr shifted_modulus(const ExprPtr& xi, long c) {
  if (c == 0) return xi;
  return substitute(xi, "M", ex::binary(Op::Add, ex::integer(c), ex::var("M")));
}

}  // namespace

ConstantTable ConstantTable::sampling_defaults() {
  ConstantTable t;
  t.set(Exponent::of(Rational(2)), {Rational(1), "Parseval: sum |f(k)|^2 equals the squared L2 norm"});
  t.set(Exponent::infinity(), {Rational(1), "samples are point values, so sup |f(k)| <= sup |f(t)|"});
  return t;
}

ConstantTable ConstantTable::interpolation_defaults() {
  ConstantTable t;
  t.set(Exponent::of(Rational(2)), {Rational(1), "Parseval: the sinc series is an isometry from l2"});
  return t;
}

void ConstantTable::set(const Exponent& p, Entry e) {
  if (e.value <= Rational(0)) fail(ErrorKind::ValidationError, "norm constants must be positive");
  entries_[key_of(p)] = std::move(e);
}

const ConstantTable::Entry* ConstantTable::find(const Exponent& p) const {
  auto it = entries_.find(key_of(p));
  return it == entries_.end() ? nullptr : &it->second;
}

void ConstantTable::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ValidationError, "cannot read constant table '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ValidationError, "constant table '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("constants") || !j["constants"].is_array())
    fail(ErrorKind::ValidationError, "constant table needs a \"constants\" array");
  for (const auto& row : j["constants"]) {
    if (!row.is_object() || !row.contains("p") || !row.contains("value"))
      fail(ErrorKind::ValidationError, "constant table rows need \"p\" and \"value\"");
    std::string cite = row.value("citation", "");
    if (cite.empty()) fail(ErrorKind::ValidationError, "constant table rows need a citation");
    std::string ps = row["p"].is_string() ? row["p"].get<std::string>() : row["p"].dump();
    std::string vs = row["value"].is_string() ? row["value"].get<std::string>() : row["value"].dump();
    Exponent p;
    try {
      p = ps == "inf" ? Exponent::infinity() : Exponent::of(Rational::parse(ps));
      set(p, {Rational::parse(vs), cite});
    } catch (const std::exception&) {
      fail(ErrorKind::ValidationError, "constant table row with p = " + ps + " is not a rational");
    }
  }
}

long shift_for(const Rational& C) {
  long c = 0;
  while (Rational(BigInt(1) << c, BigInt(1)) < C) ++c;
  return c;
}

std::string document_hash(const Document& d) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize(d)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Compiled compile_sampling(const Document& d, const ConstantTable& c1) {
  validate(d);
  if (d.kind != Kind::Continuous) fail(ErrorKind::ValidationError, "sampling compiler expects a continuous description");
  const auto* C = c1.find(d.p);
  if (!C) fail(ErrorKind::MissingConstant, "no sampling constant C1 configured for p = " + d.p.str());
  Compiled out;
  out.doc = d;
  out.doc.space = Space::Ell;
  out.doc.kind = Kind::Discrete;
  out.report.shift = shift_for(C->value);
  out.doc.modulus = shifted_modulus(d.modulus, out.report.shift);
  validate(out.doc);
  out.report.input_hash = document_hash(d);
  out.report.output = serialize(out.doc);
  out.report.notes.push_back("elements: sample(f_n), a copy of the coefficients");
  out.report.notes.push_back("C1(" + d.p.str() + ") = " + C->value.str() + " [" + C->citation + "]");
  out.report.notes.push_back("modulus: M -> xi(" + std::to_string(out.report.shift) + " + M)");
  return out;
}

Compiled compile_interpolation(const Document& d, const ConstantTable& cr) {
  validate(d);
  if (d.kind != Kind::Discrete)
    fail(ErrorKind::ValidationError, "interpolation compiler expects a discrete description");
  if (d.p.inf || d.p.is(1))
    fail(ErrorKind::UnsupportedExponent,
         "interpolation is not computable on " + std::string(d.p.inf ? "l-infinity" : "l1") +
             "; no compiler exists for p in {1, inf}");
  const auto* C = cr.find(d.p);
  if (!C) fail(ErrorKind::MissingConstant, "no interpolation constant C_R configured for p = " + d.p.str());
  Compiled out;
  out.doc = d;
  out.doc.space = Space::Bpi;
  out.doc.kind = Kind::Continuous;
  out.report.shift = shift_for(C->value);
  out.doc.modulus = shifted_modulus(d.modulus, out.report.shift);
  validate(out.doc);
  out.report.input_hash = document_hash(d);
  out.report.output = serialize(out.doc);
  out.report.notes.push_back("elements: interpolate(x_n), a copy of the coefficients");
  out.report.notes.push_back("C_R(" + d.p.str() + ") = " + C->value.str() + " [" + C->citation + "]");
  out.report.notes.push_back("modulus: M -> xi'(" + std::to_string(out.report.shift) + " + M)");
  return out;
}

bool RoundTripReport::ok() const {
  if (!modulus_ok) return false;
  for (const auto& r : rows)
    if (!r.coefficients_equal || !r.distance_ok) return false;
  return true;
}

RoundTripReport roundtrip_check(const Document& d, long depth, int M, const ConstantTable& c1,
                                const ConstantTable& cr) {
  validate(d);
  bool continuous = d.kind == Kind::Continuous;
  Compiled there = continuous ? compile_sampling(d, c1) : compile_interpolation(d, cr);
  Compiled back = continuous ? compile_interpolation(there.doc, cr) : compile_sampling(there.doc, c1);

  RoundTripReport rep;
  rep.shift = there.report.shift + back.report.shift;
  rep.modulus_ok = true;
  for (long m = 0; m <= 32; ++m)
    if (modulus_of(back.doc, m) != modulus_of(d, m + rep.shift)) rep.modulus_ok = false;

  Float eps(64);
  mpfr_set_ui_2exp(eps.get(), 1, -M, MPFR_RNDN);
  for (long n = 0; n <= depth; ++n) {
    RoundTripRow row;
    row.n = n;
    Coefficients a = instantiate_coefficients(d, n);
    Coefficients b = instantiate_coefficients(back.doc, n);
    row.coefficients_equal = a == b;
    ElementarySignal fa{a}, fb{b};
    ElementarySignal diff = linear_combine(Rational(1), fa, Rational(-1), fb);
    row.distance = continuous ? lp_norm_signal(diff, d.p, M) : lp_norm_sequence(sample(diff), d.p, M);
    row.distance_ok = mpfr_cmp(row.distance.hi().get(), eps.get()) <= 0;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace bandlim
