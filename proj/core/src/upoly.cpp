#include "primage/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "primage/error.hpp"

namespace primage {

namespace {
const Rat kZero(0);
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::monomial(const Rat& a, int deg) {
  if (deg < 0) fail(ErrorKind::InternalContradiction, "monomial with negative degree");
  std::vector<Rat> v(static_cast<size_t>(deg) + 1, Rat(0));
  v.back() = a;
  return UPoly(std::move(v));
}

const Rat& UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<size_t>(i)];
}

const Rat& UPoly::lc() const {
  if (c_.empty()) fail(ErrorKind::InternalContradiction, "leading coefficient of zero polynomial");
  return c_.back();
}

UPoly UPoly::operator-() const {
  std::vector<Rat> v;
  v.reserve(c_.size());
  for (const auto& a : c_) v.push_back(-a);
  return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      v[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return UPoly(std::move(v));
}

UPoly UPoly::operator*(const Rat& s) const {
  if (s.is_zero()) return UPoly();
  std::vector<Rat> v;
  v.reserve(c_.size());
  for (const auto& a : c_) v.push_back(a * s);
  return UPoly(std::move(v));
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UPoly::eval_double(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rat> v;
  v.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Rat(static_cast<long>(i)));
  return UPoly(std::move(v));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly acc = UPoly::constant(Rat(1));
  UPoly base = *this;
  while (e) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

UPoly UPoly::compose(const UPoly& q) const {
  UPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + UPoly::constant(*it);
  return acc;
}

UPoly UPoly::compose_affine(const Rat& a, const Rat& b) const {
  return compose(UPoly({b, a}));
}

UPoly UPoly::reverse() const {
  std::vector<Rat> v(c_.rbegin(), c_.rend());
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) fail(ErrorKind::InternalContradiction, "monic of zero polynomial");
  return *this * lc().inv();
}

UPoly UPoly::primitive() const {
  if (is_zero()) return UPoly();
  // Clear denominators, divide by integer content, normalize sign.
  mpz_class den_lcm(1);
  for (const auto& a : c_) {
    mpz_class d = a.raw().get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<mpz_class> z;
  z.reserve(c_.size());
  for (const auto& a : c_) {
    mpq_class scaled = a.raw() * mpq_class(den_lcm);
    z.push_back(scaled.get_num());
  }
  mpz_class g(0);
  for (const auto& zi : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zi.get_mpz_t());
  if (sgn(z.back()) < 0) g = -g;
  std::vector<Rat> v;
  v.reserve(z.size());
  for (const auto& zi : z) v.push_back(Rat(mpq_class(zi) / mpq_class(g)));
  return UPoly(std::move(v));
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& a = coeff(i);
    if (a.is_zero()) continue;
    Rat mag = a;
    if (first) {
      if (a.sign() < 0) {
        os << "-";
        mag = -a;
      }
      first = false;
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      mag = (a.sign() < 0) ? -a : a;
    }
    bool unit = (mag == Rat(1));
    if (i == 0) {
      os << mag.str();
    } else {
      if (!unit) os << mag.str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UPoly, UPoly> upoly_divrem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) fail(ErrorKind::DomainViolation, "polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rat> rem(a.coeffs());
  int dq = a.degree() - b.degree();
  std::vector<Rat> quo(static_cast<size_t>(dq) + 1, Rat(0));
  Rat inv_lc = b.lc().inv();
  for (int k = dq; k >= 0; --k) {
    Rat q = rem[static_cast<size_t>(k + b.degree())] * inv_lc;
    if (q.is_zero()) continue;
    quo[static_cast<size_t>(k)] = q;
    for (int j = 0; j <= b.degree(); ++j)
      rem[static_cast<size_t>(k + j)] -= q * b.coeff(j);
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly upoly_exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = upoly_divrem(a, b);
  if (!r.is_zero())
    fail(ErrorKind::InternalContradiction, "exact polynomial division left a remainder");
  return q;
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero())
    fail(ErrorKind::InternalContradiction, "gcd(0, 0) is undefined");
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = upoly_divrem(x, y);
    (void)q;
    x = y;
    y = r;
  }
  return x.monic();
}

ExtGcd upoly_ext_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero())
    fail(ErrorKind::InternalContradiction, "gcd(0, 0) is undefined");
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(Rat(1)), s1;
  UPoly t0, t1 = UPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r] = upoly_divrem(r0, r1);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    r0 = r1; r1 = r;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  Rat scale = r0.lc().inv();
  return {r0 * scale, s0 * scale, t0 * scale};
}

UPoly upoly_lcm(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  return upoly_exact_div(a * b, upoly_gcd(a, b)).monic();
}

Rat upoly_resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero())
    fail(ErrorKind::InternalContradiction, "resultant of zero polynomial");
  // Euclidean recursion matching the Sylvester determinant with the rows of
  // the first argument on top: res(a,b) = (-1)^{deg a * deg b} res(b,a) and
  // res(a,b) = lc(b)^{deg a - deg r} * res(b, r) * (-1)^{deg a * deg b}.
  UPoly x = a, y = b;
  Rat acc(1);
  bool flip = false;
  while (true) {
    if (y.degree() == 0) {
      acc *= rat_pow(y.lc(), static_cast<unsigned>(std::max(x.degree(), 0)));
      break;
    }
    if (x.degree() == 0) {
      acc *= rat_pow(x.lc(), static_cast<unsigned>(y.degree()));
      break;
    }
    if (x.degree() < y.degree()) {
      if ((x.degree() % 2) && (y.degree() % 2)) flip = !flip;
      std::swap(x, y);
      continue;
    }
    auto [q, r] = upoly_divrem(x, y);
    (void)q;
    if (r.is_zero()) return Rat(0);
    if ((x.degree() % 2) && (y.degree() % 2)) flip = !flip;
    acc *= rat_pow(y.lc(), static_cast<unsigned>(x.degree() - r.degree()));
    x = y;
    y = r;
  }
  return flip ? -acc : acc;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.is_zero()) fail(ErrorKind::InternalContradiction, "squarefree part of zero");
  if (p.degree() == 0) return UPoly::constant(Rat(1));
  UPoly g = upoly_gcd(p, p.derivative());
  return upoly_exact_div(p, g).monic();
}

std::vector<UPoly> yun_squarefree_decomposition(const UPoly& p) {
  if (p.is_zero()) fail(ErrorKind::InternalContradiction, "Yun decomposition of zero");
  std::vector<UPoly> out;
  UPoly f = p.monic();
  if (f.degree() == 0) return out;
  UPoly fp = f.derivative();
  UPoly a = upoly_gcd(f, fp);
  UPoly b = upoly_exact_div(f, a);
  UPoly c = upoly_exact_div(fp, a);
  UPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly fi = d.is_zero() ? b.monic() : upoly_gcd(b, d);
    out.push_back(fi);
    b = upoly_exact_div(b, fi);
    if (d.is_zero()) {
      c = UPoly();
    } else {
      c = upoly_exact_div(d, fi);
    }
    d = c - b.derivative();
  }
  return out;
}

int count_distinct_complex_roots(const UPoly& p) {
  return std::max(squarefree_part(p).degree(), 0);
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  if (p.is_zero()) fail(ErrorKind::InternalContradiction, "Sturm chain of zero");
  chain.push_back(p);
  if (p.degree() == 0) return chain;
  chain.push_back(p.derivative());
  while (chain.back().degree() > 0) {
    auto [q, r] = upoly_divrem(chain[chain.size() - 2], chain.back());
    (void)q;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

namespace {
int variations(const std::vector<int>& signs) {
  int v = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}
}  // namespace

int sturm_variations_at(const std::vector<UPoly>& chain, const Rat& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(q.eval(x).sign());
  return variations(signs);
}

int sturm_variations_at_pos_inf(const std::vector<UPoly>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(q.is_zero() ? 0 : q.lc().sign());
  return variations(signs);
}

int sturm_variations_at_neg_inf(const std::vector<UPoly>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) {
    if (q.is_zero()) {
      signs.push_back(0);
    } else {
      int s = q.lc().sign();
      signs.push_back((q.degree() % 2) ? -s : s);
    }
  }
  return variations(signs);
}

int sturm_count(const std::vector<UPoly>& chain, const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) fail(ErrorKind::InternalContradiction, "Sturm count over empty interval");
  return sturm_variations_at(chain, lo) - sturm_variations_at(chain, hi);
}

int sturm_count_all(const std::vector<UPoly>& chain) {
  return sturm_variations_at_neg_inf(chain) - sturm_variations_at_pos_inf(chain);
}

Rat cauchy_root_bound(const UPoly& p) {
  if (p.is_zero() || p.degree() == 0) return Rat(1);
  Rat m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rat a = (p.coeff(i) / p.lc()).abs();
    if (m < a) m = a;
  }
  return m + Rat(1);
}

HPoly::HPoly(UPoly dehomogenized, int formal_degree) : u_(std::move(dehomogenized)), d_(formal_degree) {
  if (d_ < 0 || (!u_.is_zero() && u_.degree() > d_))
    fail(ErrorKind::InternalContradiction, "homogeneous form with degree below its dehomogenization");
}

HPoly HPoly::homogenize(const UPoly& p, int formal_degree) { return HPoly(p, formal_degree); }

Rat HPoly::eval(const Rat& t0, const Rat& t1) const {
  if (t0.is_zero() && t1.is_zero())
    fail(ErrorKind::DomainViolation, "evaluation at (0,0) is not a projective point");
  if (u_.is_zero()) return Rat(0);
  // sum c_i t1^i t0^{d-i}
  Rat acc(0);
  Rat p1(1);
  std::vector<Rat> pow1(static_cast<size_t>(u_.degree()) + 1);
  for (int i = 0; i <= u_.degree(); ++i) {
    pow1[static_cast<size_t>(i)] = p1;
    p1 *= t1;
  }
  Rat p0(1);
  std::vector<Rat> pow0(static_cast<size_t>(d_) + 1);
  for (int i = 0; i <= d_; ++i) {
    pow0[static_cast<size_t>(i)] = p0;
    p0 *= t0;
  }
  for (int i = 0; i <= u_.degree(); ++i) {
    const Rat& c = u_.coeff(i);
    if (c.is_zero()) continue;
    acc += c * pow1[static_cast<size_t>(i)] * pow0[static_cast<size_t>(d_ - i)];
  }
  return acc;
}

HPoly HPoly::linear_substitute(const Rat& a, const Rat& b, const Rat& c, const Rat& d) const {
  if ((a * d - b * c).is_zero())
    fail(ErrorKind::DomainViolation, "projective substitution with singular matrix");
  if (u_.is_zero()) return HPoly(UPoly(), d_);
  // New dehomogenization: U(a + b s, c + d s) where s is the new affine
  // coordinate, i.e. substitute t0 <- a + b*s, t1 <- c + d*s into the form.
  UPoly f0({a, b});
  UPoly f1({c, d});
  UPoly acc;
  UPoly f0pow = UPoly::constant(Rat(1));
  std::vector<UPoly> pows0(static_cast<size_t>(d_) + 1);
  for (int i = 0; i <= d_; ++i) {
    pows0[static_cast<size_t>(i)] = f0pow;
    f0pow = f0pow * f0;
  }
  UPoly f1pow = UPoly::constant(Rat(1));
  for (int i = 0; i <= u_.degree(); ++i) {
    const Rat& ci = u_.coeff(i);
    if (!ci.is_zero()) acc = acc + (f1pow * pows0[static_cast<size_t>(d_ - i)]) * ci;
    f1pow = f1pow * f1;
  }
  return HPoly(acc, d_);
}

std::string HPoly::str(const std::string& v0, const std::string& v1) const {
  if (u_.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = u_.degree(); i >= 0; --i) {
    const Rat& a = u_.coeff(i);
    if (a.is_zero()) continue;
    Rat mag = a;
    if (first) {
      if (a.sign() < 0) {
        os << "-";
        mag = -a;
      }
      first = false;
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      mag = (a.sign() < 0) ? -a : a;
    }
    int e1 = i;
    int e0 = d_ - i;
    bool unit = (mag == Rat(1));
    if (e0 == 0 && e1 == 0) {
      os << mag.str();
      continue;
    }
    if (!unit) os << mag.str() << "*";
    bool wrote = false;
    if (e0 > 0) {
      os << v0;
      if (e0 > 1) os << "^" << e0;
      wrote = true;
    }
    if (e1 > 0) {
      if (wrote) os << "*";
      os << v1;
      if (e1 > 1) os << "^" << e1;
    }
  }
  return os.str();
}

std::optional<LinearPower> factor_linear_power(const HPoly& h) {
  if (h.is_zero()) return std::nullopt;
  const UPoly& u = h.dehom();
  int e_inf = h.infinity_multiplicity();
  if (u.degree() == 0) {
    if (e_inf == 0) return std::nullopt;  // nonzero constant form: no root
    // Pure power of t0, root (0 : 1): c*t0^e = scale * (0*t1 - 1*t0)^e.
    Rat scale = (e_inf % 2) ? -u.coeff(0) : u.coeff(0);
    return LinearPower{Rat(0), Rat(1), e_inf, scale};
  }
  if (e_inf > 0) return std::nullopt;  // root at (0:1) plus affine roots
  // One distinct complex root r forces u = c*(t - r)^e, and r must be rational
  // because the squarefree part then has degree 1.
  int e = u.degree();
  UPoly sf = squarefree_part(u);
  if (sf.degree() != 1) return std::nullopt;
  Rat r = -sf.coeff(0) / sf.coeff(1);
  UPoly rebuilt = UPoly({-r, Rat(1)}).pow(static_cast<unsigned>(e)) * u.lc();
  if (!(rebuilt == u)) return std::nullopt;
  // Root (a : b) in coprime integers, a > 0.
  // As a form: c*(t1 - r*t0)^e = (c/a^e) * (a*t1 - b*t0)^e.
  mpq_class q = r.raw();
  Rat a(mpq_class(q.get_den()));
  Rat b(mpq_class(q.get_num()));
  Rat scale = u.lc() / rat_pow(a, static_cast<unsigned>(e));
  return LinearPower{a, b, e, scale};
}

}  // namespace primage
