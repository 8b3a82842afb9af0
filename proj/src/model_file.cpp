#include "homsym/model_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "homsym/errors.hpp"

namespace homsym::model {

namespace {

struct Scanner {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (pos < text.size()) {
      if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }

  char peek() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end of model file");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool ident_char(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    skip_space();
    if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      fail("expected an identifier");
    std::string out;
    while (pos < text.size() && ident_char(text[pos])) {
      out += text[pos];
      advance();
    }
    return out;
  }

  // Raw text up to the next ';' (exclusive), trimmed. Expressions never
  // contain semicolons, so no nesting rules are needed.
  std::string until_semicolon() {
    skip_space();
    std::string out;
    while (pos < text.size() && text[pos] != ';') {
      if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') advance();
        continue;
      }
      out += text[pos];
      advance();
    }
    if (pos >= text.size()) fail("missing ';'");
    advance();  // ';'
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    if (out.empty()) fail("empty entry");
    return out;
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> out{ident()};
    while (peek() == ',') {
      advance();
      out.push_back(ident());
    }
    expect(';');
    return out;
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
};

const std::vector<std::string> kReserved = {"eps", "theta", "q", "d", "dx", "dt"};

void check_name(const std::string& name, const std::vector<std::string>& taken) {
  if (std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end())
    throw DomainError("'" + name + "' is reserved and cannot be declared in a model");
  if (std::find(taken.begin(), taken.end(), name) != taken.end())
    throw DomainError("'" + name + "' is declared twice in the model");
}

}  // namespace

SymbolTable ModelFile::symbols() const {
  SymbolTable table;
  table.params = params;
  table.funcs = funcs;
  table.dep = dep;
  table.allow_dep = true;
  table.allow_series = false;
  return table;
}

series::PerturbedPDE ModelFile::pde() const {
  auto table = symbols();
  series::PerturbedPDE out;
  out.name = name;
  out.e0 = parse_expression(e0_source, table);
  out.e1 = parse_expression(e1_source, table);
  series::validate_pde(out);
  return out;
}

ModelFile parse_model(const std::string& text) {
  Scanner sc{text};
  if (sc.ident() != "model") sc.fail("model file must start with 'model'");
  ModelFile m;
  m.name = sc.ident();
  sc.expect('{');
  bool saw_e0 = false, saw_e1 = false;
  while (sc.peek() != '}') {
    std::string key = sc.ident();
    sc.expect(':');
    if (key == "indep") {
      if (!m.indep.empty()) sc.fail("duplicate 'indep' entry");
      m.indep = sc.ident_list();
    } else if (key == "dep") {
      if (!m.dep.empty()) sc.fail("duplicate 'dep' entry");
      auto list = sc.ident_list();
      if (list.size() != 1) throw DomainError("a model has exactly one dependent variable");
      m.dep = list.front();
    } else if (key == "param") {
      if (!m.params.empty()) sc.fail("duplicate 'param' entry");
      m.params = sc.ident_list();
    } else if (key == "func") {
      if (!m.funcs.empty()) sc.fail("duplicate 'func' entry");
      m.funcs = sc.ident_list();
    } else if (key == "E0") {
      if (saw_e0) sc.fail("duplicate 'E0' entry");
      m.e0_source = sc.until_semicolon();
      saw_e0 = true;
    } else if (key == "E1") {
      if (saw_e1) sc.fail("duplicate 'E1' entry");
      m.e1_source = sc.until_semicolon();
      saw_e1 = true;
    } else {
      sc.fail("unknown entry '" + key + "'");
    }
  }
  sc.expect('}');
  if (!sc.at_end()) sc.fail("trailing content after the model block");

  if (m.indep.empty()) throw DomainError("model is missing the 'indep' entry");
  if (m.dep.empty()) throw DomainError("model is missing the 'dep' entry");
  if (!saw_e0 || !saw_e1) throw DomainError("model must define both E0 and E1");
  if (m.indep != std::vector<std::string>{"x", "t"})
    throw DomainError("independent variables must be declared as 'x, t' in this version");

  std::vector<std::string> taken = m.indep;
  check_name(m.dep, taken);
  taken.push_back(m.dep);
  for (const auto& p : m.params) {
    check_name(p, taken);
    taken.push_back(p);
  }
  for (const auto& f : m.funcs) {
    check_name(f, taken);
    taken.push_back(f);
  }
  return m;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace homsym::model
