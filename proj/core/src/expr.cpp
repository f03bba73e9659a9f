#include "primage/expr.hpp"

#include <cctype>
#include <string>

#include "primage/algebraic.hpp"
#include "primage/error.hpp"
#include "primage/intervals.hpp"
#include "primage/mpoly.hpp"

namespace primage {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int nvars;
  bool uses_t;

  Parser(const std::string& text, int nv, bool ut) : s(text), nvars(nv), uses_t(ut) {}

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrorKind::ParseError, msg + " at position " + std::to_string(pos + 1));
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  MRatFunc parse_expr() {
    MRatFunc v = parse_term();
    for (;;) {
      if (eat('+'))
        v = v + parse_term();
      else if (eat('-'))
        v = v - parse_term();
      else
        return v;
    }
  }

  MRatFunc parse_term() {
    MRatFunc v = parse_unary();
    for (;;) {
      if (eat('*'))
        v = v * parse_unary();
      else if (eat('/'))
        v = v / parse_unary();
      else
        return v;
    }
  }

  MRatFunc parse_unary() {
    if (eat('-')) return -parse_unary();
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  MRatFunc parse_power() {
    MRatFunc base = parse_atom();
    while (eat('^')) {
      bool paren = eat('(');
      bool neg = eat('-');
      if (!std::isdigit(static_cast<unsigned char>(peek()))) err("expected integer exponent");
      long e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        e = e * 10 + (s[pos] - '0');
        if (e > 64) err("exponent too large");
        ++pos;
      }
      if (paren && !eat(')')) err("expected ')' after exponent");
      MRatFunc p = MRatFunc::constant(nvars, Rat(1));
      for (long i = 0; i < e; ++i) p = p * base;
      base = neg ? MRatFunc::constant(nvars, Rat(1)) / p : p;
    }
    return base;
  }

  MRatFunc parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      MRatFunc v = parse_expr();
      if (!eat(')')) err("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        digits.push_back(s[pos++]);
      return MRatFunc::constant(nvars, Rat::parse(digits));
    }
    if (c == 't') {
      if (!uses_t) err("variable t mixed with x variables");
      ++pos;
      return MRatFunc::variable(nvars, 0);
    }
    if (c == 'x') {
      if (uses_t) err("variable x mixed with t");
      ++pos;
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '0')
        err("expected variable index 1..9 after x");
      int idx = s[pos++] - '1';
      if (idx >= nvars) err("variable index out of range");
      return MRatFunc::variable(nvars, idx);
    }
    err("expected a number, variable, or '('");
  }
};

// Scan for variables to fix the ambient dimension before parsing.
void scan_vars(const std::string& s, bool& uses_t, int& nvars) {
  bool saw_t = false;
  int maxx = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 't') saw_t = true;
    if (s[i] == 'x' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])) &&
        s[i + 1] != '0')
      maxx = std::max(maxx, s[i + 1] - '0');
  }
  if (saw_t && maxx > 0)
    fail(ErrorKind::ParseError, "a map may use either t or x1..x9, not both");
  uses_t = maxx == 0;
  nvars = maxx == 0 ? 1 : maxx;
}

bool obviously_definite(const MPoly& p) {
  int sgn = 0;
  bool has_const = false;
  for (const auto& [e, c] : p.terms()) {
    bool allzero = true;
    for (unsigned u : e) {
      if (u % 2 != 0) return false;
      allzero = allzero && u == 0;
    }
    int sg = c.sign();
    if (sgn == 0)
      sgn = sg;
    else if (sg != sgn)
      return false;
    has_const = has_const || allzero;
  }
  return has_const;
}

void check_denominator(const MRatFunc& f, bool univar) {
  if (f.den().is_constant()) return;
  if (univar) {
    UPoly d = mpoly_to_upoly(f.den(), 0);
    if (!d.is_zero() && count_real_roots_in(d, IntervalDesc{}) > 0) {
      auto root = isolate_real_roots(d).front().first;
      fail(ErrorKind::DomainViolation,
           "denominator has a real zero near " + root.str());
    }
    return;
  }
  if (!obviously_definite(f.den()))
    fail(ErrorKind::Unsupported,
         "cannot certify that a multivariate denominator has no real zeros");
}

}  // namespace

std::vector<std::string> ParsedMap::var_names() const {
  if (uses_t) return {"t"};
  std::vector<std::string> out;
  for (int i = 0; i < nvars; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

AffineRatMap ParsedMap::univariate() const {
  if (nvars != 1) fail(ErrorKind::WrongDimension, "map is not univariate");
  AffineRatMap out;
  for (const auto& c : comps)
    out.comp.emplace_back(mpoly_to_upoly(c.num(), 0), mpoly_to_upoly(c.den(), 0));
  return out;
}

std::string ParsedMap::str() const {
  auto names = var_names();
  if (comps.size() == 1) return comps[0].str(names);
  std::string out = "(";
  for (size_t i = 0; i < comps.size(); ++i) {
    if (i) out += ", ";
    out += comps[i].str(names);
  }
  return out + ")";
}

ParsedMap parse_map(const std::string& text) {
  ParsedMap out;
  scan_vars(text, out.uses_t, out.nvars);
  Parser p(text, out.nvars, out.uses_t);
  if (p.peek() == '(') {
    // Try a tuple; backtrack to a single parenthesized expression on failure.
    size_t save = p.pos;
    ++p.pos;
    MRatFunc first = p.parse_expr();
    if (p.peek() == ',') {
      out.comps.push_back(first);
      while (p.eat(',')) out.comps.push_back(p.parse_expr());
      if (!p.eat(')')) p.err("expected ')' after map components");
    } else {
      p.pos = save;
      out.comps.push_back(p.parse_expr());
    }
  } else {
    out.comps.push_back(p.parse_expr());
  }
  p.skip();
  if (p.pos != text.size()) p.err("unexpected trailing input");
  for (const auto& c : out.comps) check_denominator(c, out.nvars == 1 && out.uses_t);
  return out;
}

namespace {

Rat parse_rat_token(const std::string& tok, const std::string& whole) {
  try {
    return Rat::parse(tok);
  } catch (const Error&) {
    fail(ErrorKind::ParseError, "bad interval endpoint '" + tok + "' in '" + whole + "'");
  }
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

IntervalDesc parse_interval(const std::string& text) {
  std::string s = trim(text);
  if (s.size() < 3) fail(ErrorKind::ParseError, "interval too short: '" + text + "'");
  char open = s.front(), close = s.back();
  if (open != '[' && open != '(')
    fail(ErrorKind::ParseError, "interval must start with '[' or '('");
  if (close != ']' && close != ')')
    fail(ErrorKind::ParseError, "interval must end with ']' or ')'");
  std::string body = s.substr(1, s.size() - 2);
  size_t comma = body.find(',');
  if (comma == std::string::npos) fail(ErrorKind::ParseError, "interval needs a comma");
  std::string lo = trim(body.substr(0, comma)), hi = trim(body.substr(comma + 1));
  IntervalDesc I;
  I.lo_closed = open == '[';
  I.hi_closed = close == ']';
  if (lo == "-inf" || lo == "-oo") {
    if (I.lo_closed) fail(ErrorKind::ParseError, "an infinite endpoint must be open");
    I.lo_closed = false;
  } else {
    I.lo = parse_rat_token(lo, text);
  }
  if (hi == "inf" || hi == "+inf" || hi == "oo" || hi == "+oo") {
    if (I.hi_closed) fail(ErrorKind::ParseError, "an infinite endpoint must be open");
    I.hi_closed = false;
  } else {
    I.hi = parse_rat_token(hi, text);
  }
  I.validate();
  return I;
}

}  // namespace primage
