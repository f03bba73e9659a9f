#pragma once

#include <string>
#include <vector>

#include "primage/intervals.hpp"
#include "primage/luroth.hpp"
#include "primage/ratfunc.hpp"

namespace primage {

// A parsed map: components are rational expressions either in the single
// variable t or in x1..x9 (never mixed).
struct ParsedMap {
  int nvars = 1;
  bool uses_t = true;
  std::vector<MRatFunc> comps;

  int dimension() const { return static_cast<int>(comps.size()); }
  std::vector<std::string> var_names() const;
  AffineRatMap univariate() const;  // requires nvars == 1
  std::string str() const;          // canonical form; reparses to the same value
};

// Grammar: map := expr | '(' expr (',' expr)* ')'; expr over + - * / ^ with
// integer exponents, integer literals, parentheses, and the variables above.
// Throws ParseError with a position, DomainViolation when a univariate
// component denominator has a real zero (reported with an isolating
// interval), and Unsupported when a multivariate denominator cannot be
// certified real-zero-free.
ParsedMap parse_map(const std::string& text);

// Parses "[a,b]", "(a,b]", "[a,inf)", "(-inf,inf)" with rational endpoints.
IntervalDesc parse_interval(const std::string& text);

}  // namespace primage
