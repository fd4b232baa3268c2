// SPDX-License-Identifier: Apache-2.0
// bandlim: command-line front end.
//
// Exit codes:
//   0  ok
//   1  syntax or validation error
//   2  unsupported exponent (interpolation for p in {1, inf})
//   3  missing norm constant
//   4  not integrable
//   5  inconclusive
//   6  resource limit
//   7  a verification check failed
//   8  generator failure or division by zero
//   9  malformed machine program
//  64  command-line usage error

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bandlim/compilers.hpp"
#include "bandlim/config.hpp"
#include "bandlim/verify.hpp"

using namespace bandlim;
using nlohmann::json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::ValidationError: return 1;
    case ErrorKind::UnsupportedExponent: return 2;
    case ErrorKind::MissingConstant: return 3;
    case ErrorKind::NotIntegrable: return 4;
    case ErrorKind::Inconclusive: return 5;
    case ErrorKind::ResourceLimit: return 6;
    case ErrorKind::GeneratorFailure:
    case ErrorKind::DivisionByZero: return 8;
    case ErrorKind::MalformedProgram: return 9;
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ValidationError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ValidationError, "cannot write '" + path + "'");
  out << text;
}

std::string dec(const Float& x, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x.get())) return "0";
  char buf[128];
  if (rnd == MPFR_RNDD) mpfr_snprintf(buf, sizeof buf, "%.15RDg", x.get());
  else mpfr_snprintf(buf, sizeof buf, "%.15RUg", x.get());
  return buf;
}

std::string dec(const Interval& x) { return "[" + dec(x.lo(), MPFR_RNDD) + ", " + dec(x.hi(), MPFR_RNDU) + "]"; }

json enclosure_json(const Interval& x) {
  return {{"lo", x.lo().exact_str()}, {"hi", x.hi().exact_str()}, {"decimal", dec(x)}};
}

struct Globals {
  std::optional<std::string> config;
  std::optional<int> M;
  std::optional<std::string> format;
  std::optional<std::int64_t> max_window, max_panels, max_steps;
  std::optional<std::string> cr_table;

  CliConfig resolve() const {
    CliConfig c = resolve_config(config);
    if (M) c.M = *M;
    if (format) c.format = parse_format(*format);
    if (max_window) c.budget.max_window = *max_window;
    if (max_panels) c.budget.max_panels = *max_panels;
    if (max_steps) c.budget.max_steps = *max_steps;
    if (cr_table) c.cr_table = *cr_table;
    c.check();
    return c;
  }
};

void print_report(const CompilerReport& r, std::ostream& os) {
  os << "# input-hash " << r.input_hash << "\n# shift " << r.shift << "\n";
  for (const auto& n : r.notes) os << "# " << n << "\n";
}

json report_json(const CompilerReport& r) {
  return {{"input_hash", r.input_hash}, {"shift", r.shift}, {"notes", r.notes}, {"output", r.output}};
}

// ---- commands ----

int cmd_validate(const std::string& path, const CliConfig& cfg) {
  Document d = parse_document(read_file(path));
  if (cfg.format == OutputFormat::JsonLines)
    std::cout << json{{"file", path}, {"valid", true}, {"kind", to_string(d.kind)}}.dump() << "\n";
  else
    std::cout << path << ": valid " << to_string(d.kind) << " description\n";
  return 0;
}

int cmd_compile(const std::string& path, const std::string& direction, const std::string& out, const CliConfig& cfg) {
  Document d = parse_document(read_file(path));
  Compiled c;
  if (direction == "sample") {
    c = compile_sampling(d);
  } else {
    ConstantTable cr = ConstantTable::interpolation_defaults();
    if (!cfg.cr_table.empty()) cr.load_json(cfg.cr_table);
    c = compile_interpolation(d, cr);
  }
  if (!out.empty()) {
    write_file(out, c.report.output);
    write_file(out + ".report.json", report_json(c.report).dump(2) + "\n");
  }
  if (cfg.format == OutputFormat::JsonLines) {
    std::cout << report_json(c.report).dump() << "\n";
  } else if (out.empty()) {
    std::cout << c.report.output;
    print_report(c.report, std::cout);
  } else {
    print_report(c.report, std::cout);
  }
  return 0;
}

struct NormArgs {
  std::string path, quantity = "norm", p;
  std::optional<long> n;
  std::string L;
};

int cmd_norm(const NormArgs& a, const CliConfig& cfg) {
  Document d = parse_document(read_file(a.path));
  if (d.kind == Kind::Real) {
    RealDescription x = RealDescription::from_document(d);
    Interval v = approximate(x, cfg.M);
    std::cout << v.exact_str() << "\n" << dec(v) << "\n";
    return 0;
  }
  Exponent p = d.p;
  if (!a.p.empty()) p = a.p == "inf" ? Exponent::infinity() : Exponent::of(Rational::parse(a.p));
  // the element at xi(M+2), widened by 2^-(M+2), unless an index is given
  int M = cfg.M;
  long n;
  if (a.n) {
    n = *a.n;
  } else {
    BigInt xi = modulus_of(d, M + 2);
    if (!xi.fits_slong_p()) fail(ErrorKind::ResourceLimit, "modulus index out of range");
    n = xi.get_si();
  }
  int Mw = a.n ? M : M + 2;
  InstantiateOptions io;
  io.max_window = cfg.budget.max_window;
  NormOptions no;
  no.max_panels = cfg.budget.max_panels;
  Element e = instantiate(d, n, io);
  Interval v;
  if (const auto* f = std::get_if<ElementarySignal>(&e)) {
    if (a.quantity == "norm") v = lp_norm_signal(*f, p, Mw, no);
    else if (a.quantity == "peak") v = peak_value(*f, Mw, no);
    else if (a.quantity == "bibo") v = bibo_norm(*f, Mw, no);
    else {
      if (a.L.empty()) fail(ErrorKind::ValidationError, "concentration needs --L");
      v = time_concentration(*f, Rational::parse(a.L), p, Mw, no);
    }
  } else {
    const auto& x = std::get<ElementarySequence>(e);
    if (a.quantity == "norm") v = lp_norm_sequence(x, p, Mw);
    else if (a.quantity == "peak") v = lp_norm_sequence(x, Exponent::infinity(), Mw);
    else fail(ErrorKind::ValidationError, a.quantity + " is defined for continuous descriptions only");
  }
  if (!a.n) {
    Float eps(64);
    mpfr_set_ui_2exp(eps.get(), 1, -(M + 2), MPFR_RNDN);
    v = v.inflate(eps);
    if (mpfr_sgn(v.lo().get()) < 0) v = Interval(Float(64), v.hi());
  }
  if (cfg.format == OutputFormat::JsonLines) {
    json j = enclosure_json(v);
    j["quantity"] = a.quantity;
    j["index"] = n;
    std::cout << j.dump() << "\n";
  } else if (cfg.format == OutputFormat::Csv) {
    std::cout << "quantity,index,lo,hi,decimal_lo,decimal_hi\n"
              << a.quantity << ',' << n << ',' << v.lo().exact_str() << ',' << v.hi().exact_str() << ','
              << dec(v.lo(), MPFR_RNDD) << ',' << dec(v.hi(), MPFR_RNDU) << "\n";
  } else {
    std::cout << v.exact_str() << "\n" << dec(v) << "\n";
  }
  return 0;
}

struct WitnessArgs {
  std::string kind;
  long n = 1;
  std::string family = "g";
  long n_max = 3;
  std::string machine, mode = "pointvalue";
  int kmax = 6;
  std::string out;
};

void emit(const std::string& text, const std::string& out, const std::string& suffix) {
  if (out.empty()) std::cout << text;
  else write_file(out + suffix, text);
}

int cmd_witness(const WitnessArgs& a, const CliConfig& cfg) {
  const bool jl = cfg.format == OutputFormat::JsonLines;
  if (a.kind == "g") {
    GWitness w = build_g_witness(a.n, cfg.budget);
    emit(g_family_text(), a.out, ".txt");
    if (jl) {
      std::cout << json{{"n", w.n}, {"N", w.N.get_str()}, {"C", enclosure_json(w.C)},
                        {"C_direct", enclosure_json(w.C_direct)}, {"value_half", enclosure_json(w.value_half)},
                        {"sample_sup", enclosure_json(w.sample_sup)}, {"value_ok", w.value_ok},
                        {"sample_ok", w.sample_ok}, {"c_bound_ok", w.c_bound_ok}, {"routes_agree", w.routes_agree}}
                       .dump()
                << "\n";
    } else {
      std::cout << "# certificate n=" << w.n << " N=" << w.N.get_str() << "\n"
                << "# C(N)            " << dec(w.C) << " (summation " << dec(w.C_direct) << ")\n"
                << "# f_n(1/2)        " << dec(w.value_half) << (w.value_ok ? "  ok" : "  FAIL") << "\n"
                << "# ||S f_n||_inf   " << dec(w.sample_sup) << " < 1/" << w.n << (w.sample_ok ? "  ok" : "  FAIL")
                << "\n"
                << "# |C(N)| > log2(N)/4 = " << 2 * w.n << (w.c_bound_ok ? "  ok" : "  FAIL") << "\n";
    }
    return w.ok() ? 0 : 7;
  }
  if (a.kind == "q") {
    QWitness w = build_q_witness(a.n, cfg.M, cfg.budget);
    emit(q_text(a.n), a.out, ".txt");
    if (jl) {
      std::cout << json{{"N", w.N}, {"l1", enclosure_json(w.l1)}, {"lower", enclosure_json(w.lower)},
                        {"upper", enclosure_json(w.upper)}, {"inside", w.inside}, {"sample_l1", w.sample_l1.str()}}
                       .dump()
                << "\n";
    } else {
      std::cout << "# certificate N=" << w.N << "\n"
                << "# ||q_N||_1       " << dec(w.l1) << "\n"
                << "# sandwich        (" << dec(w.lower.hi(), MPFR_RNDU) << ", " << dec(w.upper.lo(), MPFR_RNDD) << ")"
                << (w.inside ? "  ok" : "  FAIL") << "\n"
                << "# ||S q_N||_1     " << w.sample_l1.str() << "\n";
    }
    return w.inside ? 0 : 7;
  }
  if (a.kind == "gated") {
    if (a.machine.empty()) fail(ErrorKind::ValidationError, "gated witnesses need --machine");
    GatedMode mode;
    if (a.mode == "pointvalue") mode = GatedMode::PointValue;
    else if (a.mode == "norm") mode = GatedMode::Norm;
    else fail(ErrorKind::ValidationError, "--mode must be pointvalue or norm");
    GatedReport r = build_gated_family(load_machine(a.machine), mode, a.kmax, cfg.budget);
    emit(r.text, a.out, ".txt");
    if (jl) {
      for (const auto& row : r.rows) {
        json j{{"k", row.k},
               {"h", row.h.get_str()},
               {"frozen", row.frozen},
               {"sample_norm", enclosure_json(row.sample_norm)},
               {"bound", "2^-" + std::to_string(row.k + 2)},
               {"bound_ok", row.bound_ok}};
        if (row.frozen_value) j["frozen_value"] = enclosure_json(*row.frozen_value);
        if (!row.value_route.empty()) j["route"] = row.value_route;
        std::cout << j.dump() << "\n";
      }
    } else {
      std::cout << "# machine " << r.machine << ": "
                << (r.halt_step ? "halts at step " + std::to_string(*r.halt_step) : "no halt within 2^(kmax+2) steps")
                << "\n";
      if (r.freeze_k) std::cout << "# frozen from k = " << *r.freeze_k << "\n";
      std::cout << "# table partial beyond kmax = " << r.kmax << "; modulus (m,K) -> K holds for K <= kmax\n";
      for (const auto& row : r.rows) {
        std::cout << "# k=" << row.k << " h=" << row.h.get_str() << " ||x||=" << dec(row.sample_norm);
        if (row.frozen) {
          std::cout << " frozen";
          if (row.frozen_value)
            std::cout << (mode == GatedMode::PointValue ? " f(1/2)=" : " ||f||=") << dec(*row.frozen_value) << " ("
                      << row.value_route << ")";
          else if (!row.value_route.empty())
            std::cout << " (" << row.value_route << ")";
        } else {
          std::cout << " <= 2^-" << row.k + 2 << (row.bound_ok ? " ok" : " FAIL");
        }
        std::cout << "\n";
      }
    }
    return r.ok() ? 0 : 7;
  }
  if (a.kind == "divergence") {
    std::vector<DivergenceRow> rows;
    if (a.family == "g") rows = divergence_table(FamilyKind::G, a.n_max, cfg.M, cfg.budget);
    else if (a.family == "q") rows = divergence_table(FamilyKind::Q, a.n_max, cfg.M, cfg.budget);
    else if (a.family == "zero") rows = divergence_table(FamilyKind::Zero, a.n_max, cfg.M, cfg.budget);
    else rows = divergence_table(parse_document(read_file(a.family)), a.n_max, cfg.M);
    std::string table;
    if (cfg.format == OutputFormat::Csv) {
      table = divergence_csv(rows);
    } else if (jl) {
      for (const auto& r : rows) {
        json j{{"n", r.n},
               {"N", r.N.get_str()},
               {"norm", enclosure_json(r.norm)},
               {"sample_norm", enclosure_json(r.sample_norm)}};
        j["ratio_lo"] = r.ratio_lo ? json(r.ratio_lo->exact_str()) : json("n/a");
        table += j.dump() + "\n";
      }
    } else {
      table = divergence_text(rows);
    }
    emit(table, a.out, cfg.format == OutputFormat::Csv ? ".csv" : ".txt");
    return 0;
  }
  fail(ErrorKind::ValidationError, "unknown witness kind '" + a.kind + "'");
}

int cmd_verify(const std::string& suite, long n_max, const CliConfig& cfg) {
  VerifyOptions o;
  o.budget = cfg.budget;
  o.M = cfg.M;
  o.n_max = n_max;
  SuiteReport r = verify_suite(suite, o);
  for (const auto& c : r.checks) {
    if (cfg.format == OutputFormat::JsonLines)
      std::cout << json{{"suite", r.suite}, {"check", c.name}, {"pass", c.pass}, {"detail", c.detail}}.dump() << "\n";
    else
      std::cout << (c.pass ? "PASS " : "FAIL ") << r.suite << ": " << c.name << "  [" << c.detail << "]\n";
  }
  return r.ok() ? 0 : 7;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified computations with bandlimited signal descriptions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, std::string("JSON config file (default: $") + kConfigEnv + ")");
  app.add_option("--M", g.M, "precision: enclosures of width <= 2^-M (1..64, default 20)");
  app.add_option("--format", g.format, "text, csv or json-lines");
  app.add_option("--max-window", g.max_window, "largest coefficient window");
  app.add_option("--max-panels", g.max_panels, "largest number of quadrature panels");
  app.add_option("--max-steps", g.max_steps, "largest machine step budget");
  app.add_option("--cr-table", g.cr_table, "JSON table of interpolation constants C_R(p)");

  std::string path, direction, out;
  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a description");
  validate_cmd->add_option("path", path)->required();

  auto* compile_cmd = app.add_subcommand("compile", "compile a description to the other side");
  compile_cmd->add_option("path", path)->required();
  compile_cmd->add_option("--direction", direction)->required()->check(CLI::IsMember({"sample", "interpolate"}));
  compile_cmd->add_option("--out", out, "output file (report goes to <out>.report.json)");

  NormArgs na;
  auto* norm_cmd = app.add_subcommand("norm", "certified norm enclosures");
  norm_cmd->add_option("path", na.path)->required();
  norm_cmd->add_option("--quantity", na.quantity)->check(CLI::IsMember({"norm", "peak", "bibo", "concentration"}));
  norm_cmd->add_option("--p", na.p, "exponent override (rational or inf)");
  norm_cmd->add_option("--n", na.n, "element index (default: the limit via the modulus)");
  norm_cmd->add_option("--L", na.L, "half-width of the concentration interval (dyadic rational)");

  WitnessArgs wa;
  auto* witness_cmd = app.add_subcommand("witness", "build witness objects and tables");
  witness_cmd->add_option("kind", wa.kind)->required()->check(CLI::IsMember({"g", "q", "gated", "divergence"}));
  witness_cmd->add_option("--n", wa.n, "family index (g) or N (q)");
  witness_cmd->add_option("--family", wa.family, "g, q, zero or a description file (divergence)");
  witness_cmd->add_option("--n-max", wa.n_max, "rows of the divergence table");
  witness_cmd->add_option("--machine", wa.machine, "machine program file (gated)");
  witness_cmd->add_option("--mode", wa.mode, "pointvalue or norm (gated)");
  witness_cmd->add_option("--kmax", wa.kmax, "last tabulated k (gated)");
  witness_cmd->add_option("--out", wa.out, "output prefix");

  std::string suite;
  long n_max = 3;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--n-max", n_max, "largest n for lemma1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    CliConfig cfg = g.resolve();
    if (*validate_cmd) return cmd_validate(path, cfg);
    if (*compile_cmd) return cmd_compile(path, direction, out, cfg);
    if (*norm_cmd) return cmd_norm(na, cfg);
    if (*witness_cmd) return cmd_witness(wa, cfg);
    if (*verify_cmd) return cmd_verify(suite, n_max, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 64;
}
