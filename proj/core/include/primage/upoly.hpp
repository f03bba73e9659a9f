#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primage/rational.hpp"

namespace primage {

// Dense univariate polynomial with exact rational coefficients, stored in
// ascending order. The zero polynomial has an empty coefficient vector and
// degree() == -1 (sentinel); every operation that cannot accept the zero
// polynomial rejects it explicitly.
class UPoly {
public:
  UPoly() = default;
  UPoly(std::initializer_list<Rat> ascending) : c_(ascending) { trim(); }
  explicit UPoly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }
  static UPoly constant(const Rat& a) { return UPoly(std::vector<Rat>{a}); }
  static UPoly variable() { return UPoly({Rat(0), Rat(1)}); }
  static UPoly monomial(const Rat& a, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rat& coeff(int i) const;  // zero outside the stored range
  const Rat& lc() const;          // leading coefficient; rejects zero poly
  const std::vector<Rat>& coeffs() const { return c_; }

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator*(const Rat& s) const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  Rat eval(const Rat& x) const;
  double eval_double(double x) const;
  UPoly derivative() const;
  UPoly pow(unsigned e) const;
  // p(q): univariate composition.
  UPoly compose(const UPoly& q) const;
  // p(a*t + b).
  UPoly compose_affine(const Rat& a, const Rat& b) const;
  // t^deg * p(1/t): coefficient reversal at the stored degree.
  UPoly reverse() const;

  UPoly monic() const;       // rejects zero
  UPoly primitive() const;   // integer-content-free, positive leading coefficient

  std::string str(const std::string& var = "t") const;

private:
  void trim();
  std::vector<Rat> c_;
};

// Quotient/remainder over the field of rationals; rejects zero divisor.
std::pair<UPoly, UPoly> upoly_divrem(const UPoly& a, const UPoly& b);
// Exact division; fails with InternalContradiction if the remainder is nonzero.
UPoly upoly_exact_div(const UPoly& a, const UPoly& b);

// Monic gcd. gcd(0,0) rejected; gcd(p,0) = monic p.
UPoly upoly_gcd(const UPoly& a, const UPoly& b);
// g = gcd = s*a + t*b with g monic (or zero handling as in upoly_gcd).
struct ExtGcd {
  UPoly g, s, t;
};
ExtGcd upoly_ext_gcd(const UPoly& a, const UPoly& b);
UPoly upoly_lcm(const UPoly& a, const UPoly& b);

// Sylvester-convention resultant ("rows of a first"): Res(t-2, t-3) = -1,
// Res(t^2+1, t) = 1. Zero iff the inputs share a root; rejects zero input.
Rat upoly_resultant(const UPoly& a, const UPoly& b);

// p / gcd(p, p'): same distinct roots, all simple.
UPoly squarefree_part(const UPoly& p);

// Yun decomposition: returns f_1, f_2, ... with p = lc * prod f_i^i, each f_i
// squarefree, pairwise coprime, monic (possibly constant 1 placeholders).
std::vector<UPoly> yun_squarefree_decomposition(const UPoly& p);

// Number of distinct complex roots = degree of the squarefree part.
int count_distinct_complex_roots(const UPoly& p);

// Sturm chain of p (with respect to p'); p need not be squarefree.
std::vector<UPoly> sturm_chain(const UPoly& p);
// Number of distinct real roots in (lo, hi], with rational endpoints.
int sturm_count(const std::vector<UPoly>& chain, const Rat& lo, const Rat& hi);
// Distinct real roots in all of R.
int sturm_count_all(const std::vector<UPoly>& chain);
// Sign variations of the chain at x, at +infinity, at -infinity.
int sturm_variations_at(const std::vector<UPoly>& chain, const Rat& x);
int sturm_variations_at_pos_inf(const std::vector<UPoly>& chain);
int sturm_variations_at_neg_inf(const std::vector<UPoly>& chain);

// Cauchy bound: all real roots lie in (-B, B).
Rat cauchy_root_bound(const UPoly& p);

// Homogeneous binary form of formal degree d in (t0, t1), stored through its
// dehomogenization u(t) = U(1, t); invariant d >= deg u. The point (0:1) is a
// root of multiplicity d - deg u.
class HPoly {
public:
  HPoly() : d_(0) { u_ = UPoly::constant(Rat(0)); }
  HPoly(UPoly dehomogenized, int formal_degree);
  static HPoly homogenize(const UPoly& p, int formal_degree);

  const UPoly& dehom() const { return u_; }
  int degree() const { return d_; }
  bool is_zero() const { return u_.is_zero(); }
  int infinity_multiplicity() const { return u_.is_zero() ? d_ : d_ - u_.degree(); }

  // Value at a projective parameter (t0 : t1) with rational coordinates.
  Rat eval(const Rat& t0, const Rat& t1) const;

  // Substitution (t0, t1) <- (a*s0 + b*s1, c*s0 + d*s1); same formal degree.
  HPoly linear_substitute(const Rat& a, const Rat& b, const Rat& c, const Rat& d) const;

  friend bool operator==(const HPoly& x, const HPoly& y) { return x.d_ == y.d_ && x.u_ == y.u_; }

  std::string str(const std::string& v0 = "t0", const std::string& v1 = "t1") const;

private:
  UPoly u_;
  int d_;
};

// Decides whether the form is c * (a*t1 - b*t0)^e for a real linear form; on
// success returns coprime integers (a, b) with the sign convention a > 0, or
// a == 0 and b > 0, together with e. The projective root is (a : b).
struct LinearPower {
  Rat a, b;
  int exponent;
  Rat scale;
};
std::optional<LinearPower> factor_linear_power(const HPoly& h);

}  // namespace primage
