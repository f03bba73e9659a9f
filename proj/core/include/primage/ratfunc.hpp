#pragma once

#include <string>
#include <vector>

#include "primage/algebraic.hpp"
#include "primage/rational.hpp"
#include "primage/upoly.hpp"

namespace primage {

// Univariate rational function n/d, always reduced (gcd(n, d) = 1) with a
// monic denominator. The zero function is 0/1.
class RatFunc {
public:
  RatFunc() : n_(), d_(UPoly::constant(Rat(1))) {}
  RatFunc(UPoly n, UPoly d);
  static RatFunc from_poly(UPoly p) { return RatFunc(std::move(p), UPoly::constant(Rat(1))); }
  static RatFunc constant(const Rat& c) { return from_poly(UPoly::constant(c)); }
  static RatFunc variable() { return from_poly(UPoly::variable()); }

  const UPoly& num() const { return n_; }
  const UPoly& den() const { return d_; }
  bool is_zero() const { return n_.is_zero(); }
  bool is_poly() const { return d_.degree() == 0; }
  bool is_constant() const { return is_poly() && n_.is_constant(); }
  // max(deg n, deg d): the degree of the induced map on the projective line.
  int map_degree() const { return std::max(n_.degree(), d_.degree()); }
  bool den_has_real_root() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator*(const Rat& s) const { return RatFunc(n_ * s, d_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

  RatFunc derivative() const;
  // this(inner), as a rational function of inner's variable.
  RatFunc compose(const RatFunc& inner) const;
  RatFunc pow(unsigned e) const;

  Rat eval(const Rat& t) const;  // DomainViolation at a denominator root
  double eval_double(double t) const;
  AlgebraicNumber eval_algebraic(const AlgebraicNumber& t) const {
    return eval_ratfunc_at_algebraic(n_, d_, t);
  }

  std::string str(const std::string& var = "t") const;

private:
  UPoly n_, d_;
};

// q^N * u(p/q) for N >= deg u: clears the denominator of u(p/q).
UPoly upoly_eval_cleared(const UPoly& u, const UPoly& p, const UPoly& q, int N);

// A map R -> R^m given componentwise by rational functions of one variable.
struct AffineRatMap {
  std::vector<RatFunc> comp;

  int dimension() const { return static_cast<int>(comp.size()); }
  bool denominators_real_root_free() const;
  std::vector<Rat> eval(const Rat& t) const;
  std::vector<double> eval_double(double t) const;
  AffineRatMap compose_inner(const RatFunc& g) const;
  std::string str(const std::string& var = "t") const;
};

}  // namespace primage
