#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primage/rational.hpp"
#include "primage/upoly.hpp"

namespace primage {

// Sparse multivariate polynomial over the rationals with a fixed variable
// count. Terms are keyed by exponent vectors under lexicographic order, so
// the last stored term is the lex-leading term. Variables are indexed; names
// exist only at formatting time.
class MPoly {
public:
  using Exp = std::vector<unsigned>;

  explicit MPoly(int nvars = 1);
  static MPoly constant(int nvars, const Rat& c);
  static MPoly var(int nvars, int i, unsigned power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant
  int total_degree() const;    // -1 for zero
  int degree_in(int var) const;
  const std::map<Exp, Rat>& terms() const { return terms_; }
  // Coefficient of a monomial (zero if absent).
  Rat coeff(const Exp& e) const;
  void add_term(const Exp& e, const Rat& c);

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator*(const Rat& s) const;
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MPoly pow(unsigned e) const;
  MPoly derivative(int var) const;
  Rat eval(const std::vector<Rat>& point) const;
  double eval_double(const std::vector<double>& point) const;
  // Substitute var := value, keeping the variable count.
  MPoly eval_partial(int var, const Rat& value) const;
  // Substitute var := q (same variable count as this).
  MPoly substitute(int var, const MPoly& q) const;

  // Ascending coefficients of this viewed as univariate in var; empty for 0.
  std::vector<MPoly> coeffs_in(int var) const;
  static MPoly from_coeffs_in(int nvars, int var, const std::vector<MPoly>& cs);

  // Divides out integer content and makes the lex-leading coefficient
  // positive.
  MPoly primitive_normalized() const;

  std::string str(const std::vector<std::string>& names) const;

  // Rejects operands with a different variable count.
  void check_same(const MPoly& o) const;

private:
  int nvars_;
  std::map<Exp, Rat> terms_;
};

std::optional<MPoly> mpoly_try_exact_div(const MPoly& a, const MPoly& b);
MPoly mpoly_exact_div(const MPoly& a, const MPoly& b);

// Primitive-PRS gcd, normalized via primitive_normalized(); gcd(0,0) = 0.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

// Content/primitive part of p viewed as univariate in var.
MPoly mpoly_content_in(const MPoly& p, int var);
MPoly mpoly_primitive_in(const MPoly& p, int var);

// Unnormalized pseudo-remainder of a by b in var (deg_var result < deg_var b).
MPoly mpoly_pseudo_rem(const MPoly& a, const MPoly& b, int var);

// Remainder of p modulo the monic univariate w applied to var.
MPoly mpoly_rem_by_monic(const MPoly& p, int var, const UPoly& w);

// Resultant eliminating var, by recursive evaluation/interpolation on the
// remaining variables; matches the univariate resultant convention.
MPoly mpoly_resultant(const MPoly& a, const MPoly& b, int var);

// Bridges; mpoly_to_upoly requires all other variables to be absent.
UPoly mpoly_to_upoly(const MPoly& p, int var);
MPoly upoly_to_mpoly(const UPoly& p, int nvars, int var);

}  // namespace primage
