#include "pvalab/parse.hpp"

#include <cctype>
#include <optional>

namespace pvalab {

bool is_reserved_name(const std::string& name) {
  if (name == "D" || name == "L") return true;
  if (name.size() > 1 && name[0] == 'L') {
    for (size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
  }
  return false;
}

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& names;
  int nlambda;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos) + " in \"" + text +
                     "\"");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  long parse_uint() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected number");
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000000L) fail("number too large");
      ++pos;
    }
    return v;
  }

  std::string parse_ident() {
    skip_ws();
    if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos])) ||
                                text[pos] == '_'))
      fail("expected identifier");
    size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  int gen_index(const std::string& name) {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    fail("unknown generator '" + name + "'");
  }

  LambdaPoly parse_base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      LambdaPoly e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = parse_uint();
      Rational r(num);
      if (eat('/')) {
        long den = parse_uint();
        if (den == 0) fail("division by zero");
        r = rat(num, den);
      }
      return lp_from(nlambda, dp_const(r));
    }
    std::string id = parse_ident();
    if (id == "D") {
      long order = 1;
      if (eat('^')) order = parse_uint();
      if (!eat('(')) fail("expected '(' after D");
      std::string g = parse_ident();
      if (!eat(')')) fail("expected ')'");
      return lp_from(nlambda, dp_mono(dm_gen(gen_index(g), static_cast<int>(order))));
    }
    if (id == "L") {
      if (nlambda == 1) return lp_var(1, 0);
      if (nlambda == 0) fail("lambda variable not allowed here");
      fail("bare 'L' is ambiguous; use L1..L" + std::to_string(nlambda));
    }
    if (id.size() > 1 && id[0] == 'L' && is_reserved_name(id)) {
      long k = std::stol(id.substr(1));
      if (nlambda == 0) fail("lambda variable not allowed here");
      if (k < 1 || k > nlambda)
        fail("lambda index out of range: " + id + " (have " + std::to_string(nlambda) +
             ")");
      return lp_var(nlambda, static_cast<int>(k - 1));
    }
    return lp_from(nlambda, dp_mono(dm_gen(gen_index(id), 0)));
  }

  LambdaPoly parse_factor() {
    LambdaPoly b = parse_base();
    if (eat('^')) {
      long e = parse_uint();
      if (e > 64) fail("exponent too large");
      LambdaPoly r = lp_from(nlambda, dp_const(Rational(1)));
      for (long i = 0; i < e; ++i) r = lp_mul(r, b);
      return r;
    }
    return b;
  }

  LambdaPoly parse_term() {
    LambdaPoly t = parse_factor();
    while (eat('*')) t = lp_mul(t, parse_factor());
    return t;
  }

  LambdaPoly parse_expr() {
    bool neg = false;
    skip_ws();
    if (peek() == '+' || peek() == '-') neg = (text[pos++] == '-');
    LambdaPoly e = parse_term();
    if (neg) e = lp_scale(Rational(-1), e);
    for (;;) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos;
        LambdaPoly t = parse_term();
        e = (c == '+') ? lp_add(e, t) : lp_sub(e, t);
      } else {
        break;
      }
    }
    return e;
  }

  LambdaPoly run() {
    LambdaPoly e = parse_expr();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return e;
  }
};

}  // namespace

DiffPoly parse_diffpoly(const std::string& text, const std::vector<std::string>& names) {
  Parser p{text, names, 0};
  LambdaPoly e = p.run();
  if (e.terms.empty()) return dp_zero();
  return e.terms.begin()->second;
}

LambdaPoly parse_lambda(const std::string& text, const std::vector<std::string>& names,
                        int nlambda) {
  Parser p{text, names, nlambda};
  return p.run();
}

}  // namespace pvalab
