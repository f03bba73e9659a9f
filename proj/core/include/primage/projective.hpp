#pragma once

#include <string>
#include <utility>
#include <vector>

#include "primage/ratfunc.hpp"
#include "primage/upoly.hpp"

namespace primage {

// Invertible fractional-linear change of the projective parameter:
// (s0 : s1) -> (t0 : t1) = (a*s0 + b*s1 : c*s0 + d*s1).
struct Mobius {
  Rat a, b, c, d;

  Mobius() : a(1), b(0), c(0), d(1) {}
  Mobius(Rat a_, Rat b_, Rat c_, Rat d_);
  static Mobius identity() { return Mobius(); }

  Rat det() const { return a * d - b * c; }
  Mobius inverse() const { return Mobius(d, -b, -c, a); }
  // (this o inner): apply inner first.
  Mobius compose(const Mobius& inner) const;
  std::pair<Rat, Rat> apply(const Rat& s0, const Rat& s1) const;
  // t = (c + d*s)/(a + b*s), the action on the affine parameter.
  RatFunc affine_action() const;
  std::string str() const;
};

// Point of rational projective m-space in normal form: the first nonzero
// coordinate is scaled to 1, so equality is componentwise.
struct ProjPoint {
  std::vector<Rat> h;  // m+1 homogeneous coordinates

  explicit ProjPoint(std::vector<Rat> coords);
  int ambient_dim() const { return static_cast<int>(h.size()) - 1; }
  bool at_infinity() const { return h[0].is_zero(); }
  std::vector<Rat> affine() const;  // requires !at_infinity()
  bool operator==(const ProjPoint& o) const { return h == o.h; }
  std::string str() const;
};

// Projectivization P^1 -> P^m of an affine rational map: m+1 forms of one
// common degree with no common projective factor. Component 0 is the
// homogenized common denominator; components 1..m are the homogenized
// numerators over that denominator.
class ProjMap {
public:
  static ProjMap from_affine(const AffineRatMap& f);

  int target_dim() const { return static_cast<int>(c_.size()) - 1; }
  int degree() const { return c_.empty() ? 0 : c_[0].degree(); }
  const std::vector<HPoly>& comps() const { return c_; }
  const HPoly& denominator_form() const { return c_[0]; }

  ProjPoint eval(const Rat& t0, const Rat& t1) const;
  ProjPoint value_at_infinity() const { return eval(Rat(0), Rat(1)); }
  // this o M, with common factors stripped again afterwards.
  ProjMap substituted(const Mobius& m) const;
  // Components comps[i]/comps[0] as an affine map.
  AffineRatMap dehomogenize() const;

private:
  explicit ProjMap(std::vector<HPoly> comps) : c_(std::move(comps)) {}
  static std::vector<HPoly> strip_common(std::vector<HPoly> comps);
  std::vector<HPoly> c_;
};

}  // namespace primage
