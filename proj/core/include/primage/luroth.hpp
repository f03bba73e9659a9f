#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primage/intervals.hpp"
#include "primage/mpoly.hpp"
#include "primage/ratfunc.hpp"

namespace primage {

// Multivariate rational function, reduced and with lex-monic denominator.
class MRatFunc {
public:
  MRatFunc() : num_(MPoly::constant(1, Rat(0))), den_(MPoly::constant(1, Rat(1))) {}
  MRatFunc(MPoly num, MPoly den);
  static MRatFunc from_poly(MPoly p);
  static MRatFunc constant(int nvars, const Rat& c);
  static MRatFunc variable(int nvars, int i);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  MRatFunc operator+(const MRatFunc& o) const;
  MRatFunc operator-(const MRatFunc& o) const;
  MRatFunc operator*(const MRatFunc& o) const;
  MRatFunc operator/(const MRatFunc& o) const;  // rejects zero divisor
  MRatFunc operator-() const;
  bool operator==(const MRatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  MRatFunc derivative(int var) const;
  Rat eval(const std::vector<Rat>& x) const;  // rejects denominator zeros
  std::string str(const std::vector<std::string>& names) const;

private:
  MPoly num_, den_;
};

// Substitute x_i <- a_i + b_i t.
UPoly mpoly_on_line(const MPoly& p, const std::vector<Rat>& a, const std::vector<Rat>& b);

// P(g) and f(g) for univariate P, f and a multivariate argument.
MRatFunc upoly_at_mrat(const UPoly& p, const MRatFunc& g);
MRatFunc ratfunc_at_mrat(const RatFunc& f, const MRatFunc& g);
MPoly upoly_at_mpoly(const UPoly& p, const MPoly& g);

// Dimension of the image of f (transcendence degree of the coordinate
// field): 0, 1, or 2 meaning "at least 2". Exact via symbolic Jacobian
// minors; randomized evaluation is used as a fast positive witness only.
int dim_image(const std::vector<MRatFunc>& f);

struct Decomposition {
  MRatFunc g;
  AffineRatMap h;
  bool polynomial_certified = false;
  std::vector<Rat> line_a, line_b;  // the parameter line used
};

// Factor a map with 1-dimensional image through the line: f = h o g with h
// a proper univariate parametrization of the image curve. When every
// component of f is polynomial, g and h are made polynomial as well.
Decomposition decompose(const std::vector<MRatFunc>& f, std::uint64_t seed);

struct PolynomializeEvidence {
  int component = 0;       // index of the component that pinned the pole pattern
  int s = 0;               // multiplicity of the real pole parameter
  std::optional<Rat> xi;   // the pole parameter when s > 0
};

// Replace a rational generator g0 of the coordinate field by a polynomial
// one, given that every f_i is polynomial and f = h0 o g0 exactly.
std::pair<MPoly, PolynomializeEvidence> polynomialize_generator(const MRatFunc& g0,
                                                                const std::vector<MPoly>& f,
                                                                const AffineRatMap& h0);

// Rewrite each f_i as a polynomial in g, certifying along the way that the
// reduced denominator evaluates to a nonzero constant at g.
AffineRatMap adjust_h(const MPoly& g, const std::vector<MPoly>& f);

// Whether a bivariate polynomial has a real zero. Decides by isolating the
// critical x-values of the zero set and testing one fiber per gap; returns
// nullopt when an exact fiber test would sit at an irrational x.
std::optional<bool> bivariate_has_real_zero(const MPoly& p);

// Exact image g(R^n) of a nonconstant generator as an interval with rational
// endpoints. Handles polynomial g of odd total degree (all n), any g
// depending on at most one variable, and even-degree bivariate polynomials;
// everything else, and irrational endpoints, fails with Unsupported.
IntervalDesc generator_image_interval(const MRatFunc& g);

}  // namespace primage
