// SPDX-License-Identifier: Apache-2.0
#include "bandlim/witness.hpp"

#include <cstdio>
#include <sstream>

namespace bandlim {

namespace {

Float pow2(long e, mpfr_prec_t prec = 64) {
  Float f(prec);
  mpfr_set_ui_2exp(f.get(), 1, e, MPFR_RNDN);
  return f;
}

bool hi_le(const Interval& x, const Float& b) { return mpfr_cmp(x.hi().get(), b.get()) <= 0; }
bool hi_lt(const Interval& x, const Rational& q) { return mpfr_cmp_q(x.hi().get(), q.get_mpq_t()) < 0; }
bool lo_gt(const Interval& x, const Rational& q) { return mpfr_cmp_q(x.lo().get(), q.get_mpq_t()) > 0; }

Interval big(const BigInt& N, mpfr_prec_t prec) {
  Float lo(prec), hi(prec);
  mpfr_set_z(lo.get(), N.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), N.get_mpz_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

std::int64_t checked_window(const BigInt& N, const WitnessBudget& b, const char* what) {
  if (N > BigInt(static_cast<long>(b.max_window)))
    fail(ErrorKind::ResourceLimit, std::string(what) + ": N = " + N.get_str() + " exceeds the window budget");
  return N.get_si();
}

InstantiateOptions inst_opts(const WitnessBudget& b) {
  InstantiateOptions o;
  o.max_window = b.max_window;
  return o;
}

NormOptions norm_opts(const WitnessBudget& b) {
  NormOptions o;
  o.max_panels = b.max_panels;
  return o;
}

}  // namespace

// ---- g ----

Interval c_of_n(const BigInt& N, mpfr_prec_t prec) {
  if (N < 1) fail(ErrorKind::GeneratorFailure, "C(N) needs N >= 1");
  mpfr_prec_t p = prec + 16;
  Interval h2 = harmonic_enclosure(2 * N, p), h1 = harmonic_enclosure(N, p);
  Interval s = (h2 - h1 * Rational(1, 2)) * Rational(2);
  return (-(s / Interval::pi(p))).round_to(prec);
}

Interval c_of_n_direct(std::int64_t N, mpfr_prec_t prec) {
  if (N < 1) fail(ErrorKind::GeneratorFailure, "C(N) needs N >= 1");
  mpfr_prec_t p = prec + 32;
  Float lo(p), hi(p), t(p);
  // 1/(k - 1/2) = 2/(2k - 1), smallest terms first
  for (std::int64_t k = N; k >= 1; --k) {
    auto d = static_cast<unsigned long>(2 * k - 1);
    mpfr_set_ui(t.get(), 2, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), d, MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_set_ui(t.get(), 2, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), d, MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  }
  Interval s(std::move(lo), std::move(hi));
  return (-(s / Interval::pi(p))).round_to(prec);
}

Interval alternating_half_sum(const BigInt& N, mpfr_prec_t prec) {
  // (-1)^k sinc(1/2 - k) = (-1)^k (-1)^k / (pi (1/2 - k)) = -1 / (pi (k - 1/2))
  return c_of_n(N, prec);
}

Interval g_peak_bound(const BigInt& N, mpfr_prec_t prec) {
  Interval pi = Interval::pi(prec);
  Interval log2n = big(N, prec).log() / Interval::ln2(prec);
  Interval two_over_pi = Interval::from_int(2, prec) / pi;
  Interval num = Interval::from_int(2, prec) + two_over_pi + two_over_pi * log2n;
  return num / c_of_n(N, prec).abs();
}

std::string g_family_text() {
  return "# f_n = g(., 2^(8n)): alternating unit coefficients over 1..N, normalized by C(N)\n"
         "space Bpi;\n"
         "p inf;\n"
         "kind continuous;\n"
         "generator {\n"
         "  window(n) = 1 .. 2^(8*n);\n"
         "  c(n, k) = (-1)^k / C where N = 2^(8*n), C = -(2/pi) * (harmonic(2*N) - harmonic(N)/2);\n"
         "}\n"
         "modulus { xi(M) = M; }\n";
}

GWitness build_g_witness(long n, const WitnessBudget& b) {
  if (n < 1) fail(ErrorKind::GeneratorFailure, "the family starts at n = 1");
  if (n > 7) fail(ErrorKind::ResourceLimit, "N = 2^(8n) exceeds the window budget");
  GWitness w;
  w.n = n;
  w.N = BigInt(1) << (8 * n);
  std::int64_t N = checked_window(w.N, b, "g witness");
  w.C = c_of_n(w.N);
  w.C_direct = c_of_n_direct(N);
  w.routes_agree = w.C.intersects(w.C_direct);
  w.signal = instantiate_signal(parse_document(g_family_text()), n, inst_opts(b));
  w.value_half = eval_signal(w.signal, Rational(1, 2), 24).first;
  w.value_ok = w.value_half.contains(Rational(1)) && mpfr_cmp(w.value_half.width().get(), pow2(-20).get()) <= 0;
  w.sample_sup = lp_norm_sequence(sample(w.signal), Exponent::infinity(), 30);
  w.sample_ok = hi_lt(w.sample_sup, Rational(1, n));
  // log2(N)/4 = 2n
  w.c_bound_ok = lo_gt(w.C.abs(), Rational(2 * n));
  return w;
}

// ---- q ----

ElementarySignal q_signal(long N) {
  if (N < 1) fail(ErrorKind::GeneratorFailure, "q_N needs N >= 1");
  std::vector<Rational> v(static_cast<std::size_t>(2 * N + 1), Rational(0));
  v[2 * N] = Rational(1);
  for (long k = 1; k <= N; ++k) v[static_cast<std::size_t>(2 * N - 2 * k)] = Rational(-1, N);
  return make_signal(-2 * N, v);
}

std::string q_text(long N) {
  std::ostringstream os;
  os << "# q_N = sinc(t) - (1/N) sum_{k=1}^N sinc(t + 2k), N = " << N << "\n"
     << "space Bpi;\np 1;\nkind continuous;\n"
     << "generator {\n"
     << "  window(n) = -" << 2 * N << " .. 0;\n"
     << "  c(n, k) = (if k == 0 then 1 else if mod(k, 2) == 0 then -1/N else 0) where N = " << N << ";\n"
     << "}\n"
     << "modulus { xi(M) = 0; }\n";
  return os.str();
}

Interval lemma3_lower(const BigInt& N, mpfr_prec_t prec) {
  Interval pi = Interval::pi(prec);
  Interval l = (big(N, prec) * Rational(1, 2)).log();
  return l / (pi * Rational(6)) - Interval::from_int(1, prec) / pi;
}

Interval lemma3_upper(const BigInt& N, mpfr_prec_t prec) {
  Interval pi = Interval::pi(prec);
  Interval l = (big(2 * N + 1, prec)).log();
  return Interval::from_int(4, prec) + Interval::from_int(5, prec) * l / pi;
}

QWitness build_q_witness(long N, int M, const WitnessBudget& b) {
  if (N < 2) fail(ErrorKind::GeneratorFailure, "q_N needs N >= 2");
  checked_window(BigInt(2 * N + 1), b, "q witness");
  QWitness w;
  w.N = N;
  w.signal = q_signal(N);
  auto exact = lp_norm_sequence_exact(sample(w.signal), Exponent::of(Rational(1)));
  if (!exact) fail(ErrorKind::GeneratorFailure, "sample norm of q_N is not exact");
  w.sample_l1 = *exact;
  w.l1 = l1_norm_signal(w.signal, M, norm_opts(b));
  w.lower = lemma3_lower(BigInt(N));
  w.upper = lemma3_upper(BigInt(N));
  w.inside = mpfr_cmp(w.l1.lo().get(), w.lower.hi().get()) > 0 && mpfr_cmp(w.l1.hi().get(), w.upper.lo().get()) < 0;
  return w;
}

BigInt q_schedule(QSchedule s, long n) {
  if (n < 1) fail(ErrorKind::GeneratorFailure, "the family starts at n = 1");
  if (s == QSchedule::Scaled) return 2 * (BigInt(1) << (2 * (n + 4)));
  return 2 * (BigInt(1) << (96 * n + 96));
}

namespace {

std::string normalized_text(const std::string& n_expr, const std::string& comment) {
  return "# f_n = q_N / ||q_N||_1, " + comment +
         "\n"
         "space Bpi;\np 1;\nkind continuous;\n"
         "generator {\n"
         "  window(n) = -2*(" +
         n_expr +
         ") .. 0;\n"
         "  c(n, k) = q / Q where N = " +
         n_expr +
         ", Q = l1norm(j, -2*N, 0, if j == 0 then 1 else if mod(j, 2) == 0 then -1/N else 0),"
         " q = if k == 0 then 1 else if mod(k, 2) == 0 then -1/N else 0;\n"
         "}\n"
         "modulus { xi(M) = M; }\n";
}

}  // namespace

std::string normalized_q_text(QSchedule s) {
  return s == QSchedule::Scaled ? normalized_text("2*4^(n+4)", "scaled schedule N = 2*4^(n+4)")
                                : normalized_text("2*2^(96*n+96)", "schedule N = 2*2^(96n+96)");
}

std::string normalized_q_text(const BigInt& N) { return normalized_text(N.get_str(), "fixed N = " + N.get_str()); }

NormalizedQ build_normalized_q_family(long n, std::optional<BigInt> scaled_N, int M, QSchedule s,
                                      const WitnessBudget& b) {
  NormalizedQ r;
  r.n = n;
  r.N = scaled_N ? *scaled_N : q_schedule(s, n);
  if (r.N < 2) fail(ErrorKind::GeneratorFailure, "q_N needs N >= 2");
  checked_window(2 * r.N + 1, b, "normalized q family");
  r.text = scaled_N ? normalized_q_text(*scaled_N) : normalized_q_text(s);
  Document d = parse_document(r.text);
  InstantiateOptions io = inst_opts(b);
  // ||q_N||_1 > 1, so 2^-(M+2) on the divisor keeps the quotient within 2^-M
  io.l1_bits = M + 2;
  ElementarySignal f = instantiate_signal(d, n, io);
  r.norm = l1_norm_signal(f, M, norm_opts(b));
  r.sample_norm = lp_norm_sequence(sample(f), Exponent::of(Rational(1)), M);
  return r;
}

// ---- gated ----

std::vector<BigInt> h_table(const Machine& m, int kmax, const WitnessBudget& b) {
  if (kmax < 0 || kmax > 60) fail(ErrorKind::ResourceLimit, "kmax out of range");
  std::int64_t steps = std::int64_t{1} << (kmax + 2);
  if (steps > b.max_steps) fail(ErrorKind::ResourceLimit, "2^(kmax+2) steps exceed the machine step budget");
  auto s = halting_step(m, steps);
  std::vector<BigInt> h;
  for (int k = 0; k <= kmax; ++k) {
    std::int64_t L = std::int64_t{1} << (k + 2);
    // number of l in 0..L with g(m, l) = 0, i.e. l < s
    std::int64_t cnt = s ? std::min<std::int64_t>(*s, L + 1) : L + 1;
    h.emplace_back(static_cast<long>(cnt));
  }
  return h;
}

bool GatedReport::ok() const {
  for (const auto& r : rows) {
    if (!r.frozen && !r.bound_ok) return false;
    if (r.frozen && r.frozen_value && !r.frozen_value->contains(Rational(1))) return false;
  }
  return true;
}

GatedReport build_gated_family(const Machine& m, GatedMode mode, int kmax, const WitnessBudget& b) {
  GatedReport rep;
  rep.machine = m.name;
  rep.mode = mode;
  rep.kmax = kmax;
  std::vector<BigInt> h = h_table(m, kmax, b);
  rep.halt_step = halting_step(m, std::int64_t{1} << (kmax + 2));

  std::ostringstream os;
  os << "# runtime-gated family for machine " << m.name << ", k = 0.." << kmax << " (partial beyond kmax)\n"
     << "space ell;\n"
     << "p " << (mode == GatedMode::PointValue ? "inf" : "1") << ";\n"
     << "kind discrete;\n"
     << "gated { machine \"" << m.name << "\"; kmax " << kmax << "; h = [";
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? ", " : "") << h[i].get_str();
  os << "]; }\n";
  if (mode == GatedMode::PointValue) {
    os << "generator {\n"
       << "  window(n) = 1 .. 2^(8*gated(n));\n"
       << "  c(n, k) = (-1)^k / C where N = 2^(8*gated(n)), C = -(2/pi) * (harmonic(2*N) - harmonic(N)/2);\n"
       << "}\n";
  } else {
    os << "generator {\n"
       << "  window(n) = -2*(2*2^(96*gated(n)+96)) .. 0;\n"
       << "  c(n, k) = q / Q where N = 2*2^(96*gated(n)+96),"
       << " Q = l1norm(j, -2*N, 0, if j == 0 then 1 else if mod(j, 2) == 0 then -1/N else 0),"
       << " q = if k == 0 then 1 else if mod(k, 2) == 0 then -1/N else 0;\n"
       << "}\n";
  }
  os << "modulus { xi(M) = M; }\n";
  rep.text = os.str();
  validate(parse_document(rep.text));

  for (int k = 0; k <= kmax; ++k) {
    GatedRow row;
    row.k = k;
    row.h = h[static_cast<std::size_t>(k)];
    BigInt L = BigInt(1) << (k + 2);
    row.frozen = row.h <= L;
    if (mode == GatedMode::PointValue) {
      // x = S f_h has sup norm 1/|C(2^(8h))|
      BigInt N = BigInt(1) << (8 * row.h.get_si());
      row.sample_norm = Interval::from_int(1, 128) / c_of_n(N).abs();
      if (row.frozen) {
        if (!rep.rows.empty() && rep.rows.back().frozen && rep.rows.back().h == row.h) {
          row.frozen_value = rep.rows.back().frozen_value;
          row.value_route = rep.rows.back().value_route;
        } else if (N <= BigInt(static_cast<long>(b.max_window)) && row.h <= 3) {
          ElementarySignal f = instantiate_signal(parse_document(g_family_text()), row.h.get_si(), inst_opts(b));
          row.frozen_value = eval_signal(f, Rational(1, 2), 24).first;
          row.value_route = "direct summation";
        } else {
          row.frozen_value = alternating_half_sum(N, 160) / c_of_n(N, 192);
          row.value_route = "half-integer identity";
        }
      }
    } else {
      // x = S (q_N / ||q_N||) has l1 norm 2/||q_N||_1 <= 2 / lower bound of ||q_N||_1
      BigInt N = q_schedule(QSchedule::Paper, std::max<long>(row.h.get_si(), 1));
      Interval lower = lemma3_lower(N);
      row.sample_norm = Interval(Float(64), (Interval::from_int(2, 128) / lower).hi());
      if (row.frozen) row.value_route = "norm 1 by normalization";
    }
    row.bound_ok = hi_le(row.sample_norm, pow2(-(k + 2)));
    if (row.frozen && !rep.freeze_k) rep.freeze_k = k;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---- divergence ----

namespace {

void set_ratio(DivergenceRow& r) {
  if (mpfr_sgn(r.sample_norm.hi().get()) <= 0) return;
  Float q(64);
  mpfr_div(q.get(), r.norm.lo().get(), r.sample_norm.hi().get(), MPFR_RNDD);
  r.ratio_lo = q;
}

}  // namespace

std::vector<DivergenceRow> divergence_table(FamilyKind f, long n_max, int M, const WitnessBudget& b) {
  std::vector<DivergenceRow> rows;
  for (long n = 1; n <= n_max; ++n) {
    DivergenceRow r;
    r.n = n;
    switch (f) {
      case FamilyKind::Zero:
        r.N = 0;
        r.norm = Interval::from_int(0);
        r.sample_norm = Interval::from_int(0);
        break;
      case FamilyKind::G: {
        r.N = BigInt(1) << (8 * n);
        checked_window(r.N, b, "divergence table");
        ElementarySignal g = instantiate_signal(parse_document(g_family_text()), n, inst_opts(b));
        // sup |f_n| >= |f_n(1/2)|; the upper end is the closed-form bound
        Interval v = eval_signal(g, Rational(1, 2), M + 8).first.abs();
        r.norm = Interval(v.lo(), g_peak_bound(r.N).hi());
        r.sample_norm = lp_norm_sequence(sample(g), Exponent::infinity(), M + 8);
        break;
      }
      case FamilyKind::Q: {
        NormalizedQ q = build_normalized_q_family(n, std::nullopt, M, QSchedule::Scaled, b);
        r.N = q.N;
        r.norm = q.norm;
        r.sample_norm = q.sample_norm;
        break;
      }
    }
    set_ratio(r);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<DivergenceRow> divergence_table(const Document& d, long n_max, int M) {
  if (d.kind != Kind::Continuous) fail(ErrorKind::ValidationError, "divergence tables need a continuous family");
  std::vector<DivergenceRow> rows;
  for (long n = 1; n <= n_max; ++n) {
    DivergenceRow r;
    r.n = n;
    ElementarySignal f = instantiate_signal(d, n);
    r.N = BigInt(static_cast<long>(f.c.size()));
    r.norm = lp_norm_signal(f, d.p, M);
    r.sample_norm = lp_norm_sequence(sample(f), d.p, M);
    set_ratio(r);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string fmt_lo(const Float& x) {
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.10RDg", x.get());
  return buf;
}

std::string fmt_hi(const Float& x) {
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.10RUg", x.get());
  return buf;
}

}  // namespace

std::string divergence_csv(const std::vector<DivergenceRow>& rows) {
  std::ostringstream os;
  os << "n,N,norm_lo,norm_hi,sample_norm_lo,sample_norm_hi,ratio_lo\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.N.get_str() << ',' << fmt_lo(r.norm.lo()) << ',' << fmt_hi(r.norm.hi()) << ','
       << fmt_lo(r.sample_norm.lo()) << ',' << fmt_hi(r.sample_norm.hi()) << ','
       << (r.ratio_lo ? fmt_lo(*r.ratio_lo) : "n/a") << '\n';
  }
  return os.str();
}

std::string divergence_text(const std::vector<DivergenceRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%3s  %-12s  %-29s  %-29s  %s\n", "n", "N", "||f_n||", "||S f_n||", "ratio_lo");
  os << buf;
  for (const auto& r : rows) {
    std::string N = r.N.get_str();
    if (N.size() > 12) {
      std::size_t e = mpz_scan1(r.N.get_mpz_t(), 0);
      BigInt odd = r.N >> e;
      N = (odd == 1 ? "" : odd.get_str() + "*") + "2^" + std::to_string(e);
    }
    std::string a = "[" + fmt_lo(r.norm.lo()) + ", " + fmt_hi(r.norm.hi()) + "]";
    std::string s = "[" + fmt_lo(r.sample_norm.lo()) + ", " + fmt_hi(r.sample_norm.hi()) + "]";
    std::snprintf(buf, sizeof buf, "%3ld  %-12s  %-29s  %-29s  %s\n", r.n, N.c_str(), a.c_str(), s.c_str(),
                  r.ratio_lo ? fmt_lo(*r.ratio_lo).c_str() : "n/a");
    os << buf;
  }
  return os.str();
}

}  // namespace bandlim
