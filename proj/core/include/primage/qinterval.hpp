#pragma once

#include <algorithm>

#include "primage/error.hpp"
#include "primage/rational.hpp"
#include "primage/upoly.hpp"

namespace primage {

// Closed interval [lo, hi] with exact rational endpoints, lo <= hi.
struct QInterval {
  Rat lo, hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) fail(ErrorKind::InternalContradiction, "interval with hi < lo");
  }
  static QInterval point(const Rat& x) { return QInterval(x, x); }

  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / Rat(2); }
  // Sign if uniform over the interval, 0 if the interval straddles or touches 0.
  int sign() const {
    if (lo.sign() > 0) return 1;
    if (hi.sign() < 0) return -1;
    return 0;
  }
};

inline QInterval operator+(const QInterval& a, const QInterval& b) {
  return QInterval(a.lo + b.lo, a.hi + b.hi);
}

inline QInterval operator-(const QInterval& a, const QInterval& b) {
  return QInterval(a.lo - b.hi, a.hi - b.lo);
}

inline QInterval operator-(const QInterval& a) { return QInterval(-a.hi, -a.lo); }

inline QInterval operator*(const QInterval& a, const QInterval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return QInterval(std::move(lo), std::move(hi));
}

inline QInterval qinterval_inv(const QInterval& a) {
  if (a.contains_zero())
    fail(ErrorKind::DomainViolation, "interval inverse across zero");
  return QInterval(a.hi.inv(), a.lo.inv());
}

inline QInterval operator/(const QInterval& a, const QInterval& b) {
  return a * qinterval_inv(b);
}

// Interval extension of p over x (Horner); exact containment, not tight.
inline QInterval qinterval_eval(const UPoly& p, const QInterval& x) {
  QInterval acc = QInterval::point(Rat(0));
  for (int i = p.degree(); i >= 0; --i)
    acc = acc * x + QInterval::point(p.coeff(i));
  return acc;
}

}  // namespace primage
