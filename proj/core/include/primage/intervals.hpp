#pragma once

#include <optional>
#include <string>

#include "primage/algebraic.hpp"
#include "primage/certificate.hpp"
#include "primage/ratfunc.hpp"

namespace primage {

// Value of one of the two invariants: 1, 2, or infinity.
enum class Nval { one = 1, two = 2, infinite = 3 };
std::string nval_str(Nval v);

// Nonempty interval in R with rational finite endpoints. An absent endpoint
// means that side is unbounded; closure flags apply to finite ends only.
struct IntervalDesc {
  std::optional<Rat> lo, hi;
  bool lo_closed = false, hi_closed = false;

  static IntervalDesc all() { return {}; }
  static IntervalDesc point(const Rat& a) { return {a, a, true, true}; }
  static IntervalDesc closed(const Rat& a, const Rat& b) { return {a, b, true, true}; }
  static IntervalDesc open(const Rat& a, const Rat& b) { return {a, b, false, false}; }
  static IntervalDesc ray_up(const Rat& a, bool closed) { return {a, std::nullopt, closed, false}; }
  static IntervalDesc ray_down(const Rat& b, bool closed) { return {std::nullopt, b, false, closed}; }

  // Rejects empty intervals (lo > hi, or lo == hi without both ends closed).
  void validate() const;
  bool is_all() const { return !lo && !hi; }
  bool is_singleton() const { return lo && hi && *lo == *hi; }
  bool bounded() const { return lo.has_value() && hi.has_value(); }
  bool unbounded() const { return !bounded(); }
  // Open as a subset of R (each side unbounded or open).
  bool is_open_set() const { return (!lo || !lo_closed) && (!hi || !hi_closed); }
  bool is_closed_set() const { return (!lo || lo_closed) && (!hi || hi_closed); }
  bool contains(const Rat& x) const;
  bool contains(const AlgebraicNumber& x) const;
  IntervalDesc closure() const { return {lo, hi, lo.has_value(), hi.has_value()}; }
  std::string str() const;
};

enum class IntervalShape {
  All,            // R
  Singleton,      // {a}
  ClosedRayUp,    // [a, inf)
  ClosedRayDown,  // (-inf, a]
  OpenRayUp,      // (a, inf)
  OpenRayDown,    // (-inf, a)
  ClosedBounded,  // [a, b]
  OpenBounded,    // (a, b)
  HalfOpenLo,     // (a, b]
  HalfOpenHi      // [a, b)
};
IntervalShape shape_of(const IntervalDesc& I);
std::string shape_name(IntervalShape s);

// The two invariants of an interval viewed as a subset of R.
struct IntervalClass {
  Nval p, r;
  IntervalShape shape;
  bool degenerate = false;  // singleton: a zero-dimensional set
};
IntervalClass classify_interval(const IntervalDesc& I);

// Distinct real roots of p lying in I.
int count_real_roots_in(const UPoly& p, const IntervalDesc& I);
inline bool has_real_root_in(const UPoly& p, const IntervalDesc& I) {
  return count_real_roots_in(p, I) > 0;
}

// One side of a computed image interval.
struct ImageEnd {
  bool infinite = false;
  AlgebraicNumber v;       // meaningful when finite
  bool attained = false;   // meaningful when finite

  std::optional<Rat> rational() const { return infinite ? std::nullopt : v.as_rational(); }
};

// Image of a continuous rational function over an interval: an interval with
// real algebraic endpoints, either of which may be infinite or excluded.
struct ImageInterval {
  ImageEnd lo, hi;

  bool is_singleton() const;
  bool contains(const Rat& q) const;
  bool contains_all_reals() const { return lo.infinite && hi.infinite; }
  std::string str() const;
};

enum class PolePolicy {
  kRejectClosure,  // no denominator root may lie in the closure of I
  kAllowOpenEnds   // roots at open finite endpoints allowed (unbounded image side)
};

// Exact image f(I). Rejects denominator roots per the policy; interior poles
// are always rejected.
ImageInterval image_of(const RatFunc& f, const IntervalDesc& I,
                       PolePolicy policy = PolePolicy::kRejectClosure);

// Trivial embedding of a rational-endpoint interval.
ImageInterval image_interval_of_desc(const IntervalDesc& I);
// Back-conversion; succeeds when both finite endpoints are rational.
std::optional<IntervalDesc> to_interval_desc(const ImageInterval& J);

// A one-dimensional source map (k = 1 or 2) whose image is exactly J.
// polynomial_kind demands polynomial components; shapes that are not
// polynomial images of any R^n are rejected with NotAPolynomialImage.
CertificateMap certificate_for_shape(const ImageInterval& J, bool polynomial_kind);
CertificateMap certificate_for_interval(const IntervalDesc& I, bool polynomial_kind);

}  // namespace primage
