#include "primage/ratfunc.hpp"

#include <sstream>

#include "primage/error.hpp"

namespace primage {

RatFunc::RatFunc(UPoly n, UPoly d) : n_(std::move(n)), d_(std::move(d)) {
  if (d_.is_zero()) fail(ErrorKind::DomainViolation, "rational function with zero denominator");
  if (n_.is_zero()) {
    d_ = UPoly::constant(Rat(1));
    return;
  }
  UPoly g = upoly_gcd(n_, d_);
  if (g.degree() > 0) {
    n_ = upoly_exact_div(n_, g);
    d_ = upoly_exact_div(d_, g);
  }
  Rat s = d_.lc().inv();
  n_ = n_ * s;
  d_ = d_ * s;
}

bool RatFunc::den_has_real_root() const {
  if (d_.degree() < 1) return false;
  return sturm_count_all(sturm_chain(d_)) > 0;
}

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.n_ = -n_;
  r.d_ = d_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.n_ * b.d_ - b.n_ * a.d_, a.d_ * b.d_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.n_ * b.n_, a.d_ * b.d_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) fail(ErrorKind::DomainViolation, "division by the zero function");
  return RatFunc(a.n_ * b.d_, a.d_ * b.n_);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(n_.derivative() * d_ - n_ * d_.derivative(), d_ * d_);
}

UPoly upoly_eval_cleared(const UPoly& u, const UPoly& p, const UPoly& q, int N) {
  if (N < u.degree())
    fail(ErrorKind::InternalContradiction, "clearing degree below the actual degree");
  if (u.is_zero()) return UPoly();
  // sum u_i p^i q^(N-i)
  UPoly acc;
  std::vector<UPoly> qpow(static_cast<size_t>(N) + 1);
  qpow[0] = UPoly::constant(Rat(1));
  for (int i = 1; i <= N; ++i) qpow[static_cast<size_t>(i)] = qpow[static_cast<size_t>(i - 1)] * q;
  UPoly ppow = UPoly::constant(Rat(1));
  for (int i = 0; i <= u.degree(); ++i) {
    if (!u.coeff(i).is_zero())
      acc = acc + ppow * qpow[static_cast<size_t>(N - i)] * u.coeff(i);
    if (i < u.degree()) ppow = ppow * p;
  }
  return acc;
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
  int N = map_degree();
  if (N <= 0) return *this;  // constant (or zero) outer function
  UPoly num = upoly_eval_cleared(n_, inner.n_, inner.d_, N);
  UPoly den = upoly_eval_cleared(d_, inner.n_, inner.d_, N);
  if (den.is_zero())
    fail(ErrorKind::DomainViolation, "composition lands entirely in a pole");
  return RatFunc(num, den);
}

RatFunc RatFunc::pow(unsigned e) const {
  RatFunc acc = RatFunc::constant(Rat(1));
  RatFunc base = *this;
  while (e) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

Rat RatFunc::eval(const Rat& t) const {
  Rat dv = d_.eval(t);
  if (dv.is_zero()) fail(ErrorKind::DomainViolation, "evaluation at a pole");
  return n_.eval(t) / dv;
}

double RatFunc::eval_double(double t) const {
  return n_.eval_double(t) / d_.eval_double(t);
}

std::string RatFunc::str(const std::string& var) const {
  if (is_poly()) return n_.str(var);
  std::ostringstream os;
  os << "(" << n_.str(var) << ")/(" << d_.str(var) << ")";
  return os.str();
}

bool AffineRatMap::denominators_real_root_free() const {
  for (const auto& f : comp)
    if (f.den_has_real_root()) return false;
  return true;
}

std::vector<Rat> AffineRatMap::eval(const Rat& t) const {
  std::vector<Rat> out;
  out.reserve(comp.size());
  for (const auto& f : comp) out.push_back(f.eval(t));
  return out;
}

std::vector<double> AffineRatMap::eval_double(double t) const {
  std::vector<double> out;
  out.reserve(comp.size());
  for (const auto& f : comp) out.push_back(f.eval_double(t));
  return out;
}

AffineRatMap AffineRatMap::compose_inner(const RatFunc& g) const {
  AffineRatMap r;
  r.comp.reserve(comp.size());
  for (const auto& f : comp) r.comp.push_back(f.compose(g));
  return r;
}

std::string AffineRatMap::str(const std::string& var) const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < comp.size(); ++i) {
    if (i) os << ", ";
    os << comp[i].str(var);
  }
  os << ")";
  return os.str();
}

}  // namespace primage
