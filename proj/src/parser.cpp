// SPDX-License-Identifier: Apache-2.0
// Lexer and recursive-descent parser for description documents. The
// grammar is written out in docs/grammar.md.
#include <cctype>
#include <map>

#include "bandlim/document.hpp"

namespace bandlim {

namespace {

enum class Tok { Int, Ident, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      int line = line_, col = col_;
      unsigned char c = static_cast<unsigned char>(s_[i_]);
      if (std::isdigit(c)) {
        std::string t;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) t += take();
        out.push_back({Tok::Int, t, line, col});
      } else if (std::isalpha(c) || c == '_') {
        std::string t;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) t += take();
        out.push_back({Tok::Ident, t, line, col});
      } else if (c == '"') {
        take();
        std::string t;
        while (i_ < s_.size() && s_[i_] != '"' && s_[i_] != '\n') t += take();
        if (i_ >= s_.size() || s_[i_] != '"') throw SyntaxError(line, col, "unterminated string");
        take();
        out.push_back({Tok::String, t, line, col});
      } else {
        static const char* two[] = {"..", "==", "!=", "<=", ">="};
        std::string t;
        for (const char* p : two)
          if (s_.compare(i_, 2, p) == 0) t = p;
        if (t.empty()) {
          if (std::string("(){}[],;=+-*/^<>").find(static_cast<char>(c)) == std::string::npos)
            throw SyntaxError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
          t = std::string(1, static_cast<char>(c));
        }
        for (std::size_t k = 0; k < t.size(); ++k) take();
        out.push_back({Tok::Punct, t, line, col});
      }
    }
  }

 private:
  char take() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        return;
      }
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::set<std::string> kReserved = {"pi",  "if",       "then", "else", "and",   "or",    "not",
                                         "where", "sum",    "harmonic", "mod", "abs", "gated", "l1norm"};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(Lexer(text).run()) {}

  ExprPtr expression_only() {
    auto e = expr();
    if (peek().kind != Tok::End) error("unexpected '" + peek().text + "' after expression");
    return e;
  }

  Document document() {
    Document d;
    std::set<std::string> seen;
    auto once = [&](const std::string& what) {
      if (!seen.insert(what).second) fail(ErrorKind::ValidationError, "duplicate field '" + what + "'");
    };
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) error("expected a header or block name");
      if (t.text == "space") {
        next();
        once("space");
        auto v = ident();
        if (v == "Bpi") d.space = Space::Bpi;
        else if (v == "ell") d.space = Space::Ell;
        else if (v == "R") d.space = Space::R;
        else error_at(prev(), "unknown space '" + v + "'");
        punct(";");
      } else if (t.text == "p") {
        next();
        once("p");
        if (peek().kind == Tok::Ident && peek().text == "inf") {
          next();
          d.p = Exponent::infinity();
        } else {
          BigInt num(integer_token());
          BigInt den(1);
          if (accept("/")) den = BigInt(integer_token());
          if (den == 0) error_at(prev(), "zero denominator in p");
          d.p = Exponent::of(Rational(num, den));
        }
        punct(";");
      } else if (t.text == "kind") {
        next();
        once("kind");
        auto v = ident();
        if (v == "continuous") d.kind = Kind::Continuous;
        else if (v == "discrete") d.kind = Kind::Discrete;
        else if (v == "real") d.kind = Kind::Real;
        else error_at(prev(), "unknown kind '" + v + "'");
        punct(";");
      } else if (t.text == "gated") {
        next();
        once("gated");
        d.gated = gated_block();
      } else if (t.text == "generator") {
        next();
        once("generator");
        generator_block(d);
      } else if (t.text == "sequence") {
        next();
        once("sequence");
        punct("{");
        equation_head("r", {"n"});
        d.sequence = expr();
        punct(";");
        punct("}");
        accept(";");
      } else if (t.text == "modulus") {
        next();
        once("modulus");
        punct("{");
        equation_head("xi", {"M"});
        d.modulus = expr();
        punct(";");
        punct("}");
        accept(";");
      } else {
        error("unknown header or block '" + t.text + "'");
      }
    }
    for (const char* f : {"space", "kind"})
      if (!seen.count(f)) fail(ErrorKind::ValidationError, std::string("missing field '") + f + "'");
    if (d.kind != Kind::Real && !seen.count("p")) fail(ErrorKind::ValidationError, "missing field 'p'");
    if (d.kind == Kind::Real && seen.count("p")) fail(ErrorKind::ValidationError, "real documents carry no exponent p");
    return d;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& prev() const { return toks_[pos_ ? pos_ - 1 : 0]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  [[noreturn]] void error(const std::string& msg) const { error_at(peek(), msg); }
  [[noreturn]] void error_at(const Token& t, const std::string& msg) const { throw SyntaxError(t.line, t.col, msg); }

  bool at_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(const char* p) {
    if (at_punct(p)) {
      next();
      return true;
    }
    return false;
  }
  bool accept_word(const char* w) {
    if (at_word(w)) {
      next();
      return true;
    }
    return false;
  }
  void punct(const char* p) {
    if (!accept(p)) error(std::string("expected '") + p + "'" + (peek().kind == Tok::End ? " before end of input" : ""));
  }
  void word(const char* w) {
    if (!accept_word(w)) error(std::string("expected '") + w + "'");
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) error("expected an identifier");
    return next().text;
  }
  std::string integer_token() {
    if (peek().kind != Tok::Int) error("expected an integer");
    return next().text;
  }
  std::string binder_name() {
    auto t = peek();
    auto v = ident();
    if (kReserved.count(v)) error_at(t, "'" + v + "' is reserved");
    return v;
  }

  void equation_head(const char* fn, std::vector<const char*> args) {
    word(fn);
    punct("(");
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) punct(",");
      word(args[i]);
    }
    punct(")");
    punct("=");
  }

  GatedTable gated_block() {
    GatedTable g;
    punct("{");
    word("machine");
    if (peek().kind != Tok::String) error("expected a quoted machine id");
    g.machine = next().text;
    punct(";");
    word("kmax");
    auto kt = peek();
    BigInt k(integer_token());
    if (k > 64) error_at(kt, "kmax must be at most 64");
    g.kmax = static_cast<int>(k.get_si());
    punct(";");
    word("h");
    punct("=");
    punct("[");
    if (!at_punct("]")) {
      do {
        g.h.emplace_back(integer_token());
      } while (accept(","));
    }
    punct("]");
    punct(";");
    punct("}");
    accept(";");
    return g;
  }

  void generator_block(Document& d) {
    punct("{");
    std::set<std::string> seen;
    while (!at_punct("}")) {
      if (peek().kind == Tok::End) error("expected '}' before end of input");
      auto t = peek();
      auto name = ident();
      if (!seen.insert(name).second) error_at(t, "duplicate generator field '" + name + "'");
      if (name == "L") {
        punct("(");
        word("n");
        punct(")");
        punct("=");
        d.half_width = expr();
      } else if (name == "window") {
        punct("(");
        word("n");
        punct(")");
        punct("=");
        d.window_lo = expr();
        punct("..");
        d.window_hi = expr();
      } else if (name == "c" || name == "ci") {
        punct("(");
        word("n");
        punct(",");
        word("k");
        punct(")");
        punct("=");
        (name == "c" ? d.coeff_re : d.coeff_im) = expr();
      } else {
        error_at(t, "unknown generator field '" + name + "'");
      }
      punct(";");
    }
    punct("}");
    accept(";");
    if (seen.count("L") && seen.count("window")) fail(ErrorKind::ValidationError, "generator has both L(n) and window(n)");
  }

  struct Depth {
    explicit Depth(int& d) : d_(d) {
      if (++d_ > 400) throw SyntaxError(0, 0, "expression nesting too deep");
    }
    ~Depth() { --d_; }
    int& d_;
  };

  ExprPtr expr() {
    Depth guard(depth_);
    auto body = ifexpr();
    if (!accept_word("where")) return body;
    std::vector<Binding> binds;
    do {
      auto name = binder_name();
      punct("=");
      binds.push_back({name, ifexpr()});
    } while (accept(","));
    return ex::where(body, std::move(binds));
  }

  ExprPtr ifexpr() {
    Depth guard(depth_);
    if (accept_word("if")) {
      auto c = orexpr();
      word("then");
      auto a = ifexpr();
      word("else");
      auto b = ifexpr();
      return ex::ternary(Op::If, c, a, b);
    }
    return orexpr();
  }

  ExprPtr orexpr() {
    auto e = andexpr();
    while (accept_word("or")) e = ex::binary(Op::Or, e, andexpr());
    return e;
  }

  ExprPtr andexpr() {
    auto e = notexpr();
    while (accept_word("and")) e = ex::binary(Op::And, e, notexpr());
    return e;
  }

  ExprPtr notexpr() {
    Depth guard(depth_);
    if (accept_word("not")) return ex::unary(Op::Not, notexpr());
    return cmpexpr();
  }

  ExprPtr cmpexpr() {
    auto e = addexpr();
    static const std::map<std::string, Op> ops = {{"==", Op::Eq}, {"!=", Op::Ne}, {"<", Op::Lt},
                                                  {"<=", Op::Le}, {">", Op::Gt},  {">=", Op::Ge}};
    if (peek().kind == Tok::Punct) {
      auto it = ops.find(peek().text);
      if (it != ops.end()) {
        next();
        e = ex::binary(it->second, e, addexpr());
        if (peek().kind == Tok::Punct && ops.count(peek().text)) error("comparisons do not chain");
      }
    }
    return e;
  }

  ExprPtr addexpr() {
    auto e = mulexpr();
    for (;;) {
      if (accept("+")) e = ex::binary(Op::Add, e, mulexpr());
      else if (accept("-")) e = ex::binary(Op::Sub, e, mulexpr());
      else return e;
    }
  }

  ExprPtr mulexpr() {
    auto e = unary();
    for (;;) {
      if (accept("*")) e = ex::binary(Op::Mul, e, unary());
      else if (accept("/")) e = ex::binary(Op::Div, e, unary());
      else return e;
    }
  }

  ExprPtr unary() {
    Depth guard(depth_);
    if (accept("-")) return ex::unary(Op::Neg, unary());
    return power();
  }

  ExprPtr power() {
    auto base = atom();
    if (accept("^")) return ex::binary(Op::Pow, base, unary());
    return base;
  }

  ExprPtr call_args(Op op, std::size_t n) {
    punct("(");
    std::vector<ExprPtr> args;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) punct(",");
      args.push_back(ifexpr());
    }
    punct(")");
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->kids = std::move(args);
    return e;
  }

  ExprPtr binder_call(Op op) {
    punct("(");
    auto v = binder_name();
    punct(",");
    auto lo = ifexpr();
    punct(",");
    auto hi = ifexpr();
    punct(",");
    auto body = ifexpr();
    punct(")");
    return op == Op::Sum ? ex::sum(v, lo, hi, body) : ex::l1norm(v, lo, hi, body);
  }

  ExprPtr atom() {
    Depth guard(depth_);
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      next();
      return ex::integer(BigInt(t.text));
    }
    if (accept("(")) {
      auto e = expr();
      punct(")");
      return e;
    }
    if (t.kind != Tok::Ident) error(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    next();
    const std::string& w = t.text;
    if (w == "pi") return ex::pi();
    if (w == "sum") return binder_call(Op::Sum);
    if (w == "l1norm") return binder_call(Op::L1Norm);
    if (w == "harmonic") return call_args(Op::Harmonic, 1);
    if (w == "mod") return call_args(Op::Mod, 2);
    if (w == "abs") return call_args(Op::Abs, 1);
    if (w == "gated") return call_args(Op::Gated, 1);
    if (kReserved.count(w)) error_at(t, "unexpected keyword '" + w + "'");
    return ex::var(w);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).expression_only(); }

Document parse_document(const std::string& text) {
  Document d = Parser(text).document();
  validate(d);
  return d;
}

}  // namespace bandlim
