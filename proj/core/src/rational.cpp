#include "primage/rational.hpp"

#include <cctype>
#include <functional>
#include <ostream>

namespace primage {

Rat Rat::parse(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string t = s.substr(b, e - b);
  if (t.empty()) fail(ErrorKind::ParseError, "empty rational literal");
  for (size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              ((c == '-' || c == '+') && (i == 0 || t[i - 1] == '/'));
    if (!ok) fail(ErrorKind::ParseError, "bad rational literal: " + s);
  }
  mpq_class v;
  if (v.set_str(t, 10) != 0) fail(ErrorKind::ParseError, "bad rational literal: " + s);
  if (v.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator in literal: " + s);
  v.canonicalize();
  return Rat(v);
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::decimal(int digits) const {
  mpz_class n = num(), d = den();
  bool neg = n < 0;
  if (neg) n = -n;
  mpz_class ip = n / d, rem = n % d;
  std::string out = (neg && (ip != 0 || rem != 0)) ? "-" : "";
  out += ip.get_str();
  if (digits <= 0) return out;
  out += ".";
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    mpz_class digit = rem / d;
    rem %= d;
    out += digit.get_str();
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

size_t Rat::hash() const {
  std::hash<std::string> h;
  return h(str());
}

}  // namespace primage
