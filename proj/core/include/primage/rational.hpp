#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "primage/error.hpp"

namespace primage {

// Exact rational number. Thin value wrapper over GMP's mpq_class; always kept
// canonical (coprime numerator/denominator, positive denominator).
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(static_cast<signed long>(n)) {}
  Rat(int n) : v_(static_cast<signed long>(n)) {}
  Rat(long num, long den) : v_(static_cast<signed long>(num), static_cast<signed long>(den)) {
    if (den == 0) fail(ErrorKind::DomainViolation, "rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rat(const mpz_class& z) : v_(z) {}

  // Parses "a", "-a/b", allowing surrounding whitespace.
  static Rat parse(const std::string& s);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) fail(ErrorKind::DomainViolation, "division by zero rational");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat inv() const {
    if (is_zero()) fail(ErrorKind::DomainViolation, "inverse of zero rational");
    return Rat(mpq_class(1) / v_);
  }

  double to_double() const { return v_.get_d(); }

  // "a" for integers, "a/b" otherwise.
  std::string str() const;
  // Decimal expansion with the given number of fractional digits, truncated
  // toward zero; exact and locale-independent.
  std::string decimal(int digits) const;

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

  size_t hash() const;

private:
  mpq_class v_;
};

inline Rat rat_pow(Rat base, unsigned e) {
  Rat r(1);
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// 2^-k as a rational; used for dyadic interval refinement.
inline Rat dyadic(int k) {
  mpq_class v(1);
  mpz_class d(1);
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), k);
  return Rat(mpq_class(1) / mpq_class(d));
}

}  // namespace primage
