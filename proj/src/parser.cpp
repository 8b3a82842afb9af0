#include "homsym/parser.hpp"

#include <algorithm>
#include <cctype>

#include "homsym/calculus.hpp"
#include "homsym/errors.hpp"

namespace homsym {

namespace {

enum class Tok { Number, Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int primes = 0;  // Ident only
  int line = 1;
  int col = 1;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  Token next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        t.text += src[pos];
        advance();
      }
      if (pos < src.size() && src[pos] == '.') {
        t.text += '.';
        advance();
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
          t.text += src[pos];
          advance();
        }
      }
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      t.kind = Tok::Ident;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        t.text += src[pos];
        advance();
      }
      while (pos < src.size() && src[pos] == '\'') {
        ++t.primes;
        advance();
      }
      return t;
    }
    t.kind = Tok::Punct;
    t.text = std::string(1, c);
    advance();
    return t;
  }
};

bool list_has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

struct Parser {
  const SymbolTable& table;
  Lexer lex;
  Token cur;

  Parser(const std::string& text, const SymbolTable& t) : table(t), lex(text) { cur = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur.line, cur.col, msg); }

  void bump() { cur = lex.next(); }

  bool at_punct(const char* p) const { return cur.kind == Tok::Punct && cur.text == p; }

  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    bump();
  }

  long long expect_int(const char* what) {
    if (cur.kind != Tok::Number || cur.text.find('.') != std::string::npos)
      fail(std::string("expected an integer ") + what);
    long long v = 0;
    for (char c : cur.text) {
      v = v * 10 + (c - '0');
      if (v > 1000000) fail("integer too large");
    }
    bump();
    return v;
  }

  int indep_axis_of(const std::string& name) const {
    for (int i = 0; i < kNumIndep; ++i)
      if (indep_name(i) == name) return i;
    return -1;
  }

  Expr parse() {
    Expr e = expr();
    if (cur.kind != Tok::End) fail("unexpected trailing input");
    return e;
  }

  Expr expr() {
    Expr e = term();
    while (at_punct("+") || at_punct("-")) {
      bool plus = cur.text == "+";
      bump();
      Expr rhs = term();
      e = plus ? e + rhs : e - rhs;
    }
    return e;
  }

  Expr term() {
    Expr e = factor();
    while (at_punct("*") || at_punct("/")) {
      bool mul = cur.text == "*";
      bump();
      Expr rhs = factor();
      if (mul) {
        e = e * rhs;
      } else {
        if (rhs.is_zero_constant()) fail("division by zero");
        e = e / rhs;
      }
    }
    return e;
  }

  Expr factor() {
    if (at_punct("-")) {
      bump();
      return -factor();
    }
    Expr b = base();
    if (at_punct("^")) {
      bump();
      long long k = expect_int("exponent");
      b = Expr::pow(b, k);
    }
    return b;
  }

  Expr base() {
    if (at_punct("(")) {
      bump();
      Expr e = expr();
      expect_punct(")");
      return e;
    }
    if (cur.kind == Tok::Number) {
      Rational v = parse_rational(cur.text);
      bump();
      return Expr::constant(v);
    }
    if (cur.kind != Tok::Ident) fail("expected a number, name, or '('");
    Token id = cur;
    bump();

    if (id.primes > 0) return func_call(id, id.primes);

    if (id.text == "d") return d_operator(id);
    if (id.text == "dx" || id.text == "dt") {
      if (!at_punct("(")) fail("derivative operator " + id.text + " requires '('");
      bump();
      Expr e = expr();
      expect_punct(")");
      return diff_total(e, id.text == "dx" ? 0 : 1, 1);
    }

    int axis = indep_axis_of(id.text);
    if (axis >= 0) return Expr::leaf(Atom::indep(axis));
    if (list_has(table.params, id.text)) return Expr::leaf(Atom::param(id.text));
    if (list_has(table.funcs, id.text)) return func_call(id, 0);
    if (table.allow_dep && id.text == table.dep) return dep_u();
    if (auto e = dep_suffix(id.text)) return *e;
    if (auto e = series_atom(id.text)) return *e;
    throw ParseError(id.line, id.col, "unknown identifier '" + id.text + "'");
  }

  Expr func_call(const Token& id, int primes) {
    if (!list_has(table.funcs, id.text))
      throw ParseError(id.line, id.col, "unknown function '" + id.text + "'");
    if (!at_punct("(")) throw ParseError(cur.line, cur.col, "function " + id.text + " requires an argument");
    bump();
    Expr arg = expr();
    expect_punct(")");
    return Expr::leaf(Atom::func(id.text, primes, arg));
  }

  Expr d_operator(const Token& id) {
    if (!at_punct("(")) throw ParseError(id.line, id.col, "derivative operator d requires '('");
    bump();
    Expr e = expr();
    expect_punct(",");
    if (cur.kind != Tok::Ident) fail("expected a variable name in d(...)");
    int axis = indep_axis_of(cur.text);
    if (axis < 0) fail("derivative with respect to '" + cur.text + "', which is not an independent variable");
    bump();
    long long n = 1;
    if (at_punct(",")) {
      bump();
      n = expect_int("derivative count");
    }
    expect_punct(")");
    return diff_total(e, axis, static_cast<int>(n));
  }

  // u_x, u_xxt style names for the dependent variable.
  std::optional<Expr> dep_suffix(const std::string& name) {
    if (!table.allow_dep) return std::nullopt;
    const std::string& u = table.dep;
    if (name.size() <= u.size() + 1 || name.compare(0, u.size(), u) != 0 || name[u.size()] != '_')
      return std::nullopt;
    int dx = 0, dt = 0;
    for (size_t i = u.size() + 1; i < name.size(); ++i) {
      if (name[i] == 'x') ++dx;
      else if (name[i] == 't') ++dt;
      else return std::nullopt;
    }
    return Expr::leaf(Atom::dep(dx, dt));
  }

  // u0, u3_xx, tu1, hu2_xt style series-coefficient names.
  std::optional<Expr> series_atom(const std::string& name) {
    if (!table.allow_series) return std::nullopt;
    size_t i = 0;
    CoeffFamily fam = CoeffFamily::Plain;
    if (i < name.size() && (name[i] == 't' || name[i] == 'h')) {
      if (name.size() > i + 1 && name[i + 1] == 'u') {
        fam = name[i] == 't' ? CoeffFamily::Tilde : CoeffFamily::Hat;
        ++i;
      }
    }
    if (i >= name.size() || name[i] != 'u') return std::nullopt;
    ++i;
    size_t dstart = i;
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
    if (i == dstart) return std::nullopt;
    int order = std::stoi(name.substr(dstart, i - dstart));
    int dx = 0, dt = 0;
    if (i < name.size()) {
      if (name[i] != '_') return std::nullopt;
      ++i;
      if (i == name.size()) return std::nullopt;
      for (; i < name.size(); ++i) {
        if (name[i] == 'x') ++dx;
        else if (name[i] == 't') ++dt;
        else return std::nullopt;
      }
    }
    return Expr::leaf(Atom::coeff(order, dx, dt, fam));
  }
};

}  // namespace

Expr parse_expression(const std::string& text, const SymbolTable& table) {
  Parser p(text, table);
  return p.parse();
}

}  // namespace homsym
