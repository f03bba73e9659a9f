#include "primage/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "primage/error.hpp"

namespace primage {

MPoly::MPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) fail(ErrorKind::InternalContradiction, "polynomial needs at least one variable");
}

MPoly MPoly::constant(int nvars, const Rat& c) {
  MPoly p(nvars);
  if (!c.is_zero()) p.terms_[Exp(static_cast<size_t>(nvars), 0)] = c;
  return p;
}

MPoly MPoly::var(int nvars, int i, unsigned power) {
  if (i < 0 || i >= nvars) fail(ErrorKind::InternalContradiction, "variable index out of range");
  MPoly p(nvars);
  Exp e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(i)] = power;
  p.terms_[e] = Rat(1);
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exp& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rat MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) fail(ErrorKind::InternalContradiction, "not a constant polynomial");
  return terms_.begin()->second;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (unsigned x : e) t += static_cast<int>(x);
    d = std::max(d, t);
  }
  return d;
}

int MPoly::degree_in(int var) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_)
    d = std::max(d, static_cast<int>(e[static_cast<size_t>(var)]));
  return d;
}

Rat MPoly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void MPoly::add_term(const Exp& e, const Rat& c) {
  if (e.size() != static_cast<size_t>(nvars_))
    fail(ErrorKind::InternalContradiction, "exponent vector length mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MPoly::check_same(const MPoly& o) const {
  if (nvars_ != o.nvars_)
    fail(ErrorKind::InternalContradiction, "mixing polynomials with different variable counts");
}

MPoly MPoly::operator-() const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  a.check_same(b);
  MPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  a.check_same(b);
  MPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_same(b);
  MPoly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exp e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MPoly MPoly::operator*(const Rat& s) const {
  MPoly r(nvars_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly acc = MPoly::constant(nvars_, Rat(1));
  MPoly base = *this;
  while (e) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    unsigned k = e[static_cast<size_t>(var)];
    if (k == 0) continue;
    Exp e2(e);
    e2[static_cast<size_t>(var)] = k - 1;
    r.add_term(e2, c * Rat(static_cast<long>(k)));
  }
  return r;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
  if (point.size() != static_cast<size_t>(nvars_))
    fail(ErrorKind::InternalContradiction, "evaluation point arity mismatch");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= rat_pow(point[i], e[i]);
    acc += t;
  }
  return acc;
}

double MPoly::eval_double(const std::vector<double>& point) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

MPoly MPoly::eval_partial(int var, const Rat& value) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    unsigned k = e[static_cast<size_t>(var)];
    Exp e2(e);
    e2[static_cast<size_t>(var)] = 0;
    r.add_term(e2, k ? c * rat_pow(value, k) : c);
  }
  return r;
}

MPoly MPoly::substitute(int var, const MPoly& q) const {
  check_same(q);
  // Group by the power of var, then Horner in q.
  int d = degree_in(var);
  if (d <= 0) return *this;
  std::vector<MPoly> by_pow(static_cast<size_t>(d) + 1, MPoly(nvars_));
  for (const auto& [e, c] : terms_) {
    unsigned k = e[static_cast<size_t>(var)];
    Exp e2(e);
    e2[static_cast<size_t>(var)] = 0;
    by_pow[k].add_term(e2, c);
  }
  MPoly acc(nvars_);
  for (int k = d; k >= 0; --k) acc = acc * q + by_pow[static_cast<size_t>(k)];
  return acc;
}

std::vector<MPoly> MPoly::coeffs_in(int var) const {
  int d = degree_in(var);
  if (d < 0) return {};
  std::vector<MPoly> cs(static_cast<size_t>(d) + 1, MPoly(nvars_));
  for (const auto& [e, c] : terms_) {
    unsigned k = e[static_cast<size_t>(var)];
    Exp e2(e);
    e2[static_cast<size_t>(var)] = 0;
    cs[k].add_term(e2, c);
  }
  return cs;
}

MPoly MPoly::from_coeffs_in(int nvars, int var, const std::vector<MPoly>& cs) {
  MPoly r(nvars);
  for (size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [e, c] : cs[k].terms()) {
      if (e[static_cast<size_t>(var)] != 0)
        fail(ErrorKind::InternalContradiction, "coefficient already involves the main variable");
      Exp e2(e);
      e2[static_cast<size_t>(var)] = static_cast<unsigned>(k);
      r.add_term(e2, c);
    }
  }
  return r;
}

MPoly MPoly::primitive_normalized() const {
  if (is_zero()) return *this;
  mpz_class den_lcm(1);
  for (const auto& [e, c] : terms_) {
    mpz_class d = c.raw().get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class g(0);
  for (const auto& [e, c] : terms_) {
    mpq_class scaled = c.raw() * mpq_class(den_lcm);
    mpz_class num = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  // Lex-leading coefficient decides the sign.
  if (terms_.rbegin()->second.sign() < 0) g = -g;
  Rat scale = Rat(mpq_class(den_lcm) / mpq_class(g));
  return *this * scale;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (names.size() != static_cast<size_t>(nvars_))
    fail(ErrorKind::InternalContradiction, "variable name count mismatch");
  if (is_zero()) return "0";
  // Lex-descending term order.
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = c;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        mag = -c;
      }
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      mag = (c.sign() < 0) ? -c : c;
    }
    bool any_var = std::any_of(e.begin(), e.end(), [](unsigned x) { return x != 0; });
    bool unit = (mag == Rat(1));
    if (!any_var) {
      os << mag.str();
      continue;
    }
    bool wrote = false;
    if (!unit) {
      os << mag.str();
      wrote = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::optional<MPoly> mpoly_try_exact_div(const MPoly& a, const MPoly& b) {
  a.check_same(b);
  if (b.is_zero()) return std::nullopt;
  MPoly r = a;
  MPoly q(a.nvars());
  const auto& bt = *b.terms().rbegin();  // lex-leading term of b
  while (!r.is_zero()) {
    const auto& rt = *r.terms().rbegin();
    MPoly::Exp e(rt.first);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] < bt.first[i]) return std::nullopt;
      e[i] -= bt.first[i];
    }
    Rat c = rt.second / bt.second;
    MPoly mono(a.nvars());
    mono.add_term(e, c);
    q = q + mono;
    r = r - mono * b;
  }
  return q;
}

MPoly mpoly_exact_div(const MPoly& a, const MPoly& b) {
  auto q = mpoly_try_exact_div(a, b);
  if (!q) fail(ErrorKind::InternalContradiction, "inexact multivariate division");
  return *q;
}

MPoly mpoly_pseudo_rem(const MPoly& a, const MPoly& b, int var) {
  a.check_same(b);
  int db = b.degree_in(var);
  if (db < 0) fail(ErrorKind::DomainViolation, "pseudo-remainder by zero");
  if (db == 0) return MPoly(a.nvars());
  MPoly lcb = b.coeffs_in(var).back();
  MPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    MPoly ltr = r.coeffs_in(var).back();
    MPoly shift = MPoly::var(a.nvars(), var, static_cast<unsigned>(dr - db));
    r = r * lcb - b * (ltr * shift);
  }
  return r;
}

MPoly mpoly_content_in(const MPoly& p, int var) {
  auto cs = p.coeffs_in(var);
  MPoly g(p.nvars());
  for (const auto& c : cs) g = mpoly_gcd(g, c);
  return g;
}

MPoly mpoly_primitive_in(const MPoly& p, int var) {
  if (p.is_zero()) return p;
  return mpoly_exact_div(p, mpoly_content_in(p, var)).primitive_normalized();
}

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  a.check_same(b);
  if (a.is_zero()) return b.primitive_normalized();
  if (b.is_zero()) return a.primitive_normalized();
  if (a.is_constant() || b.is_constant())
    return MPoly::constant(a.nvars(), Rat(1));
  // Main variable: highest index occurring in either.
  int v = -1;
  for (int i = a.nvars() - 1; i >= 0; --i) {
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      v = i;
      break;
    }
  }
  if (v < 0) return MPoly::constant(a.nvars(), Rat(1));
  int da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0) return mpoly_gcd(mpoly_content_in(b, v), a).primitive_normalized();
  if (db == 0) return mpoly_gcd(mpoly_content_in(a, v), b).primitive_normalized();
  MPoly ca = mpoly_content_in(a, v);
  MPoly cb = mpoly_content_in(b, v);
  MPoly cg = mpoly_gcd(ca, cb);
  MPoly r0 = mpoly_exact_div(a, ca);
  MPoly r1 = mpoly_exact_div(b, cb);
  if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
  while (!r1.is_zero() && r1.degree_in(v) > 0) {
    MPoly r2 = mpoly_pseudo_rem(r0, r1, v);
    if (!r2.is_zero()) r2 = mpoly_primitive_in(r2, v);
    r0 = r1;
    r1 = r2;
  }
  MPoly g = r1.is_zero() ? mpoly_primitive_in(r0, v) : MPoly::constant(a.nvars(), Rat(1));
  return (cg * g).primitive_normalized();
}

MPoly mpoly_rem_by_monic(const MPoly& p, int var, const UPoly& w) {
  if (w.is_zero() || !(w.lc() == Rat(1)))
    fail(ErrorKind::InternalContradiction, "reduction requires a monic modulus");
  int dw = w.degree();
  if (dw == 0) return MPoly(p.nvars());
  MPoly wv = upoly_to_mpoly(w, p.nvars(), var);
  MPoly r = p;
  while (!r.is_zero() && r.degree_in(var) >= dw) {
    int dr = r.degree_in(var);
    MPoly ltr = r.coeffs_in(var).back();
    MPoly shift = MPoly::var(p.nvars(), var, static_cast<unsigned>(dr - dw));
    r = r - ltr * shift * wv;
  }
  return r;
}

namespace {

// All variables other than var absent from both.
bool only_var(const MPoly& p, int var) {
  for (int i = 0; i < p.nvars(); ++i)
    if (i != var && p.degree_in(i) > 0) return false;
  return true;
}

}  // namespace

MPoly mpoly_resultant(const MPoly& a, const MPoly& b, int var) {
  a.check_same(b);
  if (a.is_zero() || b.is_zero())
    fail(ErrorKind::InternalContradiction, "resultant of zero polynomial");
  if (only_var(a, var) && only_var(b, var)) {
    Rat r = upoly_resultant(mpoly_to_upoly(a, var), mpoly_to_upoly(b, var));
    return MPoly::constant(a.nvars(), r);
  }
  // Pick a free variable to interpolate over.
  int x = -1;
  for (int i = 0; i < a.nvars(); ++i) {
    if (i == var) continue;
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      x = i;
      break;
    }
  }
  int dva = a.degree_in(var), dvb = b.degree_in(var);
  int dxa = a.degree_in(x), dxb = b.degree_in(x);
  // deg_x Res <= deg_var(a)*deg_x(b) + deg_var(b)*deg_x(a)
  int D = dva * dxb + dvb * dxa;
  std::vector<Rat> xs;
  std::vector<MPoly> ys;
  long c = 0;
  while (static_cast<int>(xs.size()) < D + 1) {
    Rat cv(c);
    c = (c > 0) ? -c : (-c + 1);  // 0, 1, -1, 2, -2, ...
    MPoly ac = a.eval_partial(x, cv);
    MPoly bc = b.eval_partial(x, cv);
    // Degree drop in var would change the resultant; skip such samples.
    if (ac.degree_in(var) != dva || bc.degree_in(var) != dvb) continue;
    xs.push_back(cv);
    ys.push_back(mpoly_resultant(ac, bc, var));
  }
  // Lagrange interpolation in x with polynomial values.
  MPoly res(a.nvars());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (ys[i].is_zero()) continue;
    MPoly li = MPoly::constant(a.nvars(), Rat(1));
    Rat denom(1);
    MPoly xv = MPoly::var(a.nvars(), x);
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      li = li * (xv - MPoly::constant(a.nvars(), xs[j]));
      denom *= xs[i] - xs[j];
    }
    res = res + li * ys[i] * denom.inv();
  }
  return res;
}

UPoly mpoly_to_upoly(const MPoly& p, int var) {
  if (!only_var(p, var))
    fail(ErrorKind::InternalContradiction, "polynomial is not univariate in the requested variable");
  std::vector<Rat> cs(static_cast<size_t>(std::max(p.degree_in(var), 0)) + 1, Rat(0));
  for (const auto& [e, c] : p.terms())
    cs[e[static_cast<size_t>(var)]] = c;
  if (p.is_zero()) return UPoly();
  return UPoly(std::move(cs));
}

MPoly upoly_to_mpoly(const UPoly& p, int nvars, int var) {
  MPoly r(nvars);
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    MPoly::Exp e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(var)] = static_cast<unsigned>(i);
    r.add_term(e, p.coeff(i));
  }
  return r;
}

}  // namespace primage
