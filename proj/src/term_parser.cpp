#include <cctype>
#include <vector>

#include "peff/pca.hpp"

namespace peff::pca {

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  std::vector<std::string> bound;  // innermost last

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '\''))
      ++pos;
    if (start == pos) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  Term atom() {
    char ch = peek();
    if (ch == '(') {
      ++pos;
      Term t = term();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      return mk_const(Nat(text.substr(start, pos - start)));
    }
    std::string name = ident();
    for (std::size_t i = bound.size(); i-- > 0;)
      if (bound[i] == name) return mk_var(bound.size() - 1 - i);
    if (auto b = builtin_by_name(name)) return mk_builtin(*b);
    if (auto n = numeral_by_name(name)) return mk_const(numeral(*n).value);
    fail("unbound identifier '" + name + "'");
  }

  Term term() {
    if (peek() == '\\') {
      ++pos;
      std::string name = ident();
      if (peek() != '.') fail("expected '.' after abstraction variable");
      ++pos;
      bound.push_back(name);
      Term body = term();
      bound.pop_back();
      return mk_lam(body);
    }
    Term t = atom();
    for (;;) {
      char ch = peek();
      if (ch == '\0' || ch == ')' ) break;
      if (ch == '\\') {
        t = mk_app(t, term());
        break;
      }
      t = mk_app(t, atom());
    }
    return t;
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  Parser p(text);
  Term t = p.term();
  if (!p.at_end()) p.fail("trailing input");
  return t;
}

}  // namespace peff::pca
