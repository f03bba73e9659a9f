#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primage/algebraic.hpp"
#include "primage/certificate.hpp"
#include "primage/intervals.hpp"
#include "primage/mpoly.hpp"
#include "primage/projective.hpp"
#include "primage/ratfunc.hpp"

namespace primage {

// f = outer o inner with outer injective off a finite set (a proper
// parametrization of the same curve) and inner of map degree `degree`.
struct ProperParam {
  AffineRatMap outer;
  RatFunc inner;
  int degree = 1;
};

// Degree of the generic fiber of f over its image curve; 1 means proper.
int properness_degree(const AffineRatMap& f);

// Requires at least one nonconstant component.
ProperParam make_proper(const AffineRatMap& f);

// Polynomial model at the unique place at infinity: poly_map = Pi o M with
// constant denominators, where M(0:1) is the place and sigma_inv is the
// affine action of M^{-1} on the parameter of the input map.
struct PolyNormalization {
  AffineRatMap poly_map;
  Mobius M;
  RatFunc sigma_inv;
  int multiplicity = 1;
};

// Requires the denominator form of the input's projective model to be a
// power of a single real linear form; fails with
// NotSingleRealBranchAtInfinity otherwise.
PolyNormalization normalize_infinity(const AffineRatMap& proper);

// One real parameter of the projective model lying over the hyperplane at
// infinity (a root of the denominator form, or the parameter at infinity).
struct RealPlace {
  AlgebraicNumber param;
  int multiplicity = 1;
  bool at_param_infinity = false;
};

// Structure of the curve over the hyperplane at infinity, computed from a
// proper parametrization.
struct InfinityData {
  std::vector<RealPlace> real_places;
  int complex_place_pairs = 0;
  // Every complex parameter over the hyperplane at infinity maps to one
  // projective point.
  bool single_point_over_C = false;
  // The denominator form is a power of one real linear form.
  bool germ_irreducible = false;
  int germ_multiplicity = 0;
  std::optional<std::pair<Rat, Rat>> place_param;  // projective (a : b)
};

InfinityData infinity_analysis(const AffineRatMap& proper);

// Monic gcd of the cleared component equations f_i(t) = q_i; its real roots
// are exactly the parameters mapping to q. Rejects f identically q.
UPoly param_preimage(const AffineRatMap& f, const std::vector<Rat>& q);

// An affine point of the closure of S that S misses, together with the
// number of distinct places of the curve along which S approaches it.
struct DeficiencyPoint {
  std::vector<Rat> q;
  int branch_count = 1;
};

struct Classification {
  Nval p = Nval::infinite;
  Nval r = Nval::one;
  bool degenerate = false;  // S is a single point
  bool unbounded = false;
  bool closed = true;
  int properness_degree = 1;
  AffineRatMap proper_map;  // f = proper_map o inner on I
  RatFunc inner;
  InfinityData infinity;
  std::vector<DeficiencyPoint> closure_deficiency;     // affine closure points off S
  std::vector<ProjPoint> infinite_closure_points;      // closure points at infinity
  CertificateMap cert_r;
  std::optional<CertificateMap> cert_p;                // present iff p is finite
  std::optional<std::vector<Rat>> point_value;         // set when degenerate
};

// How much of the line the component denominators must avoid. User input
// must be pole-free everywhere; internally reparametrized maps only need
// their poles off the parameter interval.
enum class DomainPolicy { kGlobalRealRootFree, kPolesOffInterval };

// Classifies S = f(I) for f with real-root-free denominators, computing the
// least n with S a polynomial image (p) and regular image (r) of R^n, with
// witness maps in cert_p / cert_r.
Classification classify(const AffineRatMap& f, const IntervalDesc& I,
                        DomainPolicy policy = DomainPolicy::kGlobalRealRootFree);

// Polynomial equations vanishing on the Zariski closure of f(R). For
// dimension 2 the single equation is exact; for dimension >= 3 the pairwise
// eliminations may cut out a strict superset, reported by the flag.
struct ImplicitSet {
  std::vector<MPoly> eqs;  // in `dimension` variables
  bool superset = false;
};

ImplicitSet implicitize(const AffineRatMap& f);

}  // namespace primage
