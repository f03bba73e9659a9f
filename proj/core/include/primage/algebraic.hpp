#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primage/qinterval.hpp"
#include "primage/rational.hpp"
#include "primage/upoly.hpp"

namespace primage {

// Exact real algebraic number: a squarefree monic definer w together with an
// open isolating interval (lo, hi) containing exactly one real root of w,
// with w(lo) != 0 and w(hi) != 0. The interval only ever shrinks; a value
// discovered to be rational is cached and served exactly. All methods are
// safe to call concurrently (interval refinement is monotone, guarded).
class AlgebraicNumber {
public:
  AlgebraicNumber() : AlgebraicNumber(Rat(0)) {}
  explicit AlgebraicNumber(const Rat& r);
  // Validates squarefreeness, the root count, and the endpoint conditions.
  AlgebraicNumber(UPoly definer, Rat lo, Rat hi);

  AlgebraicNumber(const AlgebraicNumber& other);
  AlgebraicNumber& operator=(const AlgebraicNumber& other);

  const UPoly& definer() const { return w_; }
  QInterval interval() const;

  // Exact rational value when one is already known.
  std::optional<Rat> known_rational() const;
  // Attempts exact rationality detection for denominators up to 2^den_bits
  // (continued-fraction reconstruction + exact verification); caches success.
  std::optional<Rat> as_rational(int den_bits = 64) const;
  bool is_rational(int den_bits = 64) const { return as_rational(den_bits).has_value(); }

  int sign() const;
  int compare(const AlgebraicNumber& other) const;
  int compare(const Rat& r) const;
  bool operator==(const AlgebraicNumber& o) const { return compare(o) == 0; }
  bool operator<(const AlgebraicNumber& o) const { return compare(o) < 0; }
  bool operator<=(const AlgebraicNumber& o) const { return compare(o) <= 0; }

  // Halves the isolating interval once (no-op for exact rationals).
  void refine() const;
  // Shrinks the isolating interval below the given width.
  void refine_below(const Rat& eps) const;

  double to_double() const;
  // Fixed-point decimal approximation, correct to the last printed digit +-1.
  std::string decimal(int digits) const;
  std::string str() const;

private:
  friend int sign_of_upoly_at(const UPoly& q, const AlgebraicNumber& alpha);
  friend AlgebraicNumber eval_ratfunc_at_algebraic(const UPoly& n, const UPoly& d,
                                                   const AlgebraicNumber& alpha);
  friend Rat rational_strictly_between(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend Rat rational_strictly_below(const AlgebraicNumber& a);
  friend Rat rational_strictly_above(const AlgebraicNumber& a);

  struct Snapshot {
    Rat lo, hi;
    std::optional<Rat> exact;
  };
  Snapshot snapshot() const;
  void store(const Rat& lo, const Rat& hi) const;
  void store_exact(const Rat& r) const;
  void refine_once(Snapshot& s) const;

  UPoly w_;  // immutable after construction
  mutable std::mutex mu_;
  mutable Rat lo_, hi_;
  mutable std::optional<Rat> exact_;
  mutable int rational_bits_tried_ = 0;
};

// Sign of q at alpha, exact (0 iff alpha is a root of q).
int sign_of_upoly_at(const UPoly& q, const AlgebraicNumber& alpha);

// n(alpha)/d(alpha) as an algebraic number; rejects d(alpha) == 0 with
// DomainViolation. The returned definer is squarefree but not minimal.
AlgebraicNumber eval_ratfunc_at_algebraic(const UPoly& n, const UPoly& d,
                                          const AlgebraicNumber& alpha);

inline AlgebraicNumber eval_upoly_at_algebraic(const UPoly& p, const AlgebraicNumber& alpha) {
  return eval_ratfunc_at_algebraic(p, UPoly::constant(Rat(1)), alpha);
}

// All distinct real roots of p, ascending, each with its multiplicity in p.
std::vector<std::pair<AlgebraicNumber, int>> isolate_real_roots(const UPoly& p);

// Exact placement helpers: a rational strictly between a < b (rejected when
// a >= b), and rationals strictly below / above a given algebraic number.
Rat rational_strictly_between(const AlgebraicNumber& a, const AlgebraicNumber& b);
Rat rational_strictly_below(const AlgebraicNumber& a);
Rat rational_strictly_above(const AlgebraicNumber& a);

}  // namespace primage
