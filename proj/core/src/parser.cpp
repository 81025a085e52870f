#include <algorithm>
#include <cctype>

#include "segre/polynomial.hpp"

namespace segre {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(std::string("expected ") + what, pos);
  }
};

Rational parse_rational(Cursor& cur) {
  cur.skip_ws();
  std::size_t start = cur.pos;
  std::string digits;
  while (cur.pos < cur.s.size() && std::isdigit((unsigned char)cur.s[cur.pos]))
    digits += cur.s[cur.pos++];
  if (digits.empty()) throw ParseError("expected number", start);
  Rational num(digits);
  if (cur.pos < cur.s.size() && cur.s[cur.pos] == '/') {
    ++cur.pos;
    std::string den;
    std::size_t dstart = cur.pos;
    while (cur.pos < cur.s.size() && std::isdigit((unsigned char)cur.s[cur.pos]))
      den += cur.s[cur.pos++];
    if (den.empty()) throw ParseError("expected denominator", dstart);
    Rational d(den);
    if (d == 0) throw ParseError("zero denominator", dstart);
    num /= d;
  }
  num.canonicalize();
  return num;
}

// number [i] | i   (no sign; sign handled by callers)
GaussianRational parse_coeff_atom(Cursor& cur) {
  if (cur.peek() == 'i' &&
      !(cur.pos + 1 < cur.s.size() && (std::isalnum((unsigned char)cur.s[cur.pos + 1]) ||
                                       cur.s[cur.pos + 1] == '_'))) {
    ++cur.pos;
    return GaussianRational(Rational(0), Rational(1));
  }
  Rational r = parse_rational(cur);
  if (cur.pos < cur.s.size() && cur.s[cur.pos] == 'i' &&
      !(cur.pos + 1 < cur.s.size() && (std::isalnum((unsigned char)cur.s[cur.pos + 1]) ||
                                       cur.s[cur.pos + 1] == '_'))) {
    ++cur.pos;
    return GaussianRational(Rational(0), r);
  }
  return GaussianRational(r);
}

// signed sum of coefficient atoms, e.g. "1+2i", "3/2-i"
GaussianRational parse_coeff_expr(Cursor& cur) {
  GaussianRational acc(Rational(0));
  bool first = true;
  for (;;) {
    bool neg = false;
    if (cur.accept('-'))
      neg = true;
    else if (cur.accept('+')) {
    } else if (!first) {
      break;
    }
    GaussianRational a = parse_coeff_atom(cur);
    acc += neg ? -a : a;
    first = false;
    char c = cur.peek();
    if (c != '+' && c != '-') break;
  }
  return acc;
}

std::string parse_ident(Cursor& cur) {
  cur.skip_ws();
  std::size_t start = cur.pos;
  std::string id;
  while (cur.pos < cur.s.size() &&
         (std::isalnum((unsigned char)cur.s[cur.pos]) || cur.s[cur.pos] == '_'))
    id += cur.s[cur.pos++];
  if (id.empty()) throw ParseError("expected identifier", start);
  return id;
}

struct TermParser {
  Cursor& cur;
  const std::vector<std::string>& vars;

  // one *-separated factor; multiplies into (coeff, exp)
  void factor(GaussianRational& coeff, Exponent& exp) {
    char c = cur.peek();
    if (c == '(') {
      cur.expect('(', "'('");
      coeff *= parse_coeff_expr(cur);
      cur.expect(')', "')'");
      return;
    }
    if (std::isdigit((unsigned char)c)) {
      coeff *= parse_coeff_atom(cur);
      return;
    }
    if (c == 'i' && !(cur.pos + 1 < cur.s.size() &&
                      (std::isalnum((unsigned char)cur.s[cur.pos + 1]) ||
                       cur.s[cur.pos + 1] == '_'))) {
      coeff *= parse_coeff_atom(cur);
      return;
    }
    std::size_t id_pos = cur.pos;
    std::string id = parse_ident(cur);
    auto it = std::find(vars.begin(), vars.end(), id);
    if (it == vars.end()) throw ParseError("unknown variable '" + id + "'", id_pos);
    int v = (int)(it - vars.begin());
    long k = 1;
    if (cur.accept('^')) {
      cur.skip_ws();
      if (cur.pos < cur.s.size() && cur.s[cur.pos] == '-')
        throw ParseError("negative exponent", cur.pos);
      std::size_t epos = cur.pos;
      Rational r = parse_rational(cur);
      if (r.get_den() != 1) throw ParseError("fractional exponent", epos);
      k = r.get_num().get_si();
    }
    exp[v] += (int)k;
  }

  void term(Polynomial& out, bool negate) {
    GaussianRational coeff(Rational(1));
    Exponent exp(std::vector<int>((int)vars.size(), 0));
    factor(coeff, exp);
    while (cur.accept('*')) factor(coeff, exp);
    out.add_term(exp, negate ? -coeff : coeff);
  }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  Cursor cur{text};
  Polynomial out(vars);
  TermParser tp{cur, vars};
  bool neg = false;
  if (cur.accept('-'))
    neg = true;
  else
    cur.accept('+');
  if (cur.eof()) throw ParseError("empty polynomial", cur.pos);
  tp.term(out, neg);
  while (!cur.eof()) {
    if (cur.accept('+'))
      neg = false;
    else if (cur.accept('-'))
      neg = true;
    else
      throw ParseError("expected '+' or '-'", cur.pos);
    tp.term(out, neg);
  }
  return out;
}

}  // namespace segre
