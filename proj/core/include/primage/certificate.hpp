#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primage/algebraic.hpp"
#include "primage/mpoly.hpp"
#include "primage/ratfunc.hpp"

namespace primage {

// An exact irrational coefficient appearing in a certificate map, published
// as a symbol plus its defining data: a squarefree polynomial with exactly
// one root in (lo, hi).
struct NamedConstant {
  std::string name;
  UPoly definer;
  Rat lo, hi;
  std::string decimal_approx;

  static NamedConstant from_algebraic(const std::string& name, const AlgebraicNumber& v);
  AlgebraicNumber value() const { return AlgebraicNumber(definer, lo, hi); }
  double to_double() const { return value().to_double(); }
};

// Multivariate rational expression n/d; kept reduced with an
// integer-primitive, sign-normalized denominator.
struct MRat {
  MPoly n, d;

  MRat() : n(1), d(MPoly::constant(1, Rat(1))) {}
  MRat(MPoly num, MPoly den);
  static MRat from_mpoly(MPoly p);
  int nvars() const { return n.nvars(); }
  bool is_polynomial() const { return d.is_constant(); }
  Rat eval(const std::vector<Rat>& x) const;
  double eval_double(const std::vector<double>& x) const;
  std::string str(const std::vector<std::string>& names) const;
};

// f(g) for univariate rational f, with the denominator cleared exactly.
MRat compose_ratfunc_mrat(const RatFunc& f, const MRat& g);

// A certificate map R^k -> R^m whose image is claimed to equal the set under
// study. Components are rational expressions in the k source variables
// followed by one variable per named constant. kind is "polynomial" (every
// component polynomial in the source variables) or "regular".
struct CertificateMap {
  std::string kind;
  int source_dim = 1;
  std::vector<NamedConstant> constants;
  std::vector<MRat> comp;

  int nvars() const { return source_dim + static_cast<int>(constants.size()); }
  int target_dim() const { return static_cast<int>(comp.size()); }
  std::vector<std::string> var_names() const;
  bool components_polynomial() const;
  std::vector<double> eval_double(const std::vector<double>& x) const;
  std::vector<Rat> eval(const std::vector<Rat>& x) const;  // rejects constants
  std::string str() const;
};

struct VerifyParams {
  std::uint64_t seed = 1;
  int samples = 10000;
  double tol = 1e-9;
  double net = 1e-2;   // coverage cell size in the bounded chart
  int jobs = 1;
};

// Numeric description of the target set S = f(I) used by verification.
// implicit_eqs vanish on S (for m >= 3 they may cut out a superset, which is
// reported). image_lo/hi bound S when m == 1 (NaN encodes an infinite end).
struct VerifyTarget {
  AffineRatMap f;
  bool lo_unbounded = false, hi_unbounded = false;
  bool lo_closed = false, hi_closed = false;
  std::optional<Rat> lo, hi;  // parameter interval ends
  std::vector<MPoly> implicit_eqs;  // in m variables
  double image_lo = 0, image_hi = 0;  // m == 1 only
  bool image_lo_unbounded = false, image_hi_unbounded = false;
  bool image_lo_closed = false, image_hi_closed = false;
  bool implicit_superset = false;  // m >= 3 pairwise elimination caveat
};

struct VerificationReport {
  bool membership_ok = false;
  bool coverage_ok = false;
  int membership_samples = 0;
  double max_membership_residual = 0;
  int coverage_cells_total = 0;
  int coverage_cells_hit = 0;
  std::string detail;

  bool ok() const { return membership_ok && coverage_ok; }
};

// Checks numerically that the certificate's image lands inside S and covers
// an epsilon-net of S.
VerificationReport verify_certificate(const CertificateMap& cert, const VerifyTarget& target,
                                      const VerifyParams& params);

}  // namespace primage
