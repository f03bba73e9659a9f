#include "primage/intervals.hpp"

#include <algorithm>
#include <sstream>

#include "primage/error.hpp"

namespace primage {

std::string nval_str(Nval v) {
  switch (v) {
    case Nval::one: return "1";
    case Nval::two: return "2";
    case Nval::infinite: return "inf";
  }
  fail(ErrorKind::InternalContradiction, "invalid invariant value");
}

void IntervalDesc::validate() const {
  if (lo && hi) {
    if (*hi < *lo) fail(ErrorKind::DegenerateInput, "empty interval: upper end below lower end");
    if (*lo == *hi && !(lo_closed && hi_closed))
      fail(ErrorKind::DegenerateInput, "empty interval: equal open endpoints");
  }
}

bool IntervalDesc::contains(const Rat& x) const {
  if (lo) {
    if (x < *lo) return false;
    if (x == *lo && !lo_closed) return false;
  }
  if (hi) {
    if (*hi < x) return false;
    if (x == *hi && !hi_closed) return false;
  }
  return true;
}

bool IntervalDesc::contains(const AlgebraicNumber& x) const {
  if (lo) {
    int c = x.compare(*lo);
    if (c < 0 || (c == 0 && !lo_closed)) return false;
  }
  if (hi) {
    int c = x.compare(*hi);
    if (c > 0 || (c == 0 && !hi_closed)) return false;
  }
  return true;
}

std::string IntervalDesc::str() const {
  std::ostringstream os;
  os << (lo && lo_closed ? "[" : "(");
  os << (lo ? lo->str() : "-inf");
  os << ", ";
  os << (hi ? hi->str() : "inf");
  os << (hi && hi_closed ? "]" : ")");
  return os.str();
}

IntervalShape shape_of(const IntervalDesc& I) {
  I.validate();
  if (I.is_all()) return IntervalShape::All;
  if (I.is_singleton()) return IntervalShape::Singleton;
  if (!I.lo && I.hi) return I.hi_closed ? IntervalShape::ClosedRayDown : IntervalShape::OpenRayDown;
  if (I.lo && !I.hi) return I.lo_closed ? IntervalShape::ClosedRayUp : IntervalShape::OpenRayUp;
  if (I.lo_closed && I.hi_closed) return IntervalShape::ClosedBounded;
  if (!I.lo_closed && !I.hi_closed) return IntervalShape::OpenBounded;
  return I.lo_closed ? IntervalShape::HalfOpenHi : IntervalShape::HalfOpenLo;
}

std::string shape_name(IntervalShape s) {
  switch (s) {
    case IntervalShape::All: return "all";
    case IntervalShape::Singleton: return "singleton";
    case IntervalShape::ClosedRayUp: return "closed-ray-up";
    case IntervalShape::ClosedRayDown: return "closed-ray-down";
    case IntervalShape::OpenRayUp: return "open-ray-up";
    case IntervalShape::OpenRayDown: return "open-ray-down";
    case IntervalShape::ClosedBounded: return "closed-bounded";
    case IntervalShape::OpenBounded: return "open-bounded";
    case IntervalShape::HalfOpenLo: return "half-open-lo";
    case IntervalShape::HalfOpenHi: return "half-open-hi";
  }
  fail(ErrorKind::InternalContradiction, "invalid interval shape");
}

IntervalClass classify_interval(const IntervalDesc& I) {
  IntervalShape s = shape_of(I);
  IntervalClass c;
  c.shape = s;
  switch (s) {
    case IntervalShape::All:
      c.p = Nval::one; c.r = Nval::one; break;
    case IntervalShape::Singleton:
      c.p = Nval::one; c.r = Nval::one; c.degenerate = true; break;
    case IntervalShape::ClosedRayUp:
    case IntervalShape::ClosedRayDown:
      c.p = Nval::one; c.r = Nval::one; break;
    case IntervalShape::OpenRayUp:
    case IntervalShape::OpenRayDown:
      c.p = Nval::two; c.r = Nval::two; break;
    case IntervalShape::OpenBounded:
      c.p = Nval::infinite; c.r = Nval::two; break;
    case IntervalShape::ClosedBounded:
    case IntervalShape::HalfOpenLo:
    case IntervalShape::HalfOpenHi:
      c.p = Nval::infinite; c.r = Nval::one; break;
  }
  return c;
}

int count_real_roots_in(const UPoly& p, const IntervalDesc& I) {
  I.validate();
  if (p.is_zero())
    fail(ErrorKind::InternalContradiction, "root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  UPoly sf = squarefree_part(p);
  if (I.is_singleton()) return sf.eval(*I.lo).is_zero() ? 1 : 0;
  auto chain = sturm_chain(sf);
  Rat B = cauchy_root_bound(sf);
  Rat L = I.lo ? *I.lo : -B;
  Rat H = I.hi ? *I.hi : B;
  int cnt = (L < H) ? sturm_count(chain, L, H) : 0;
  if (I.hi && !I.hi_closed && L < H && sf.eval(H).is_zero()) --cnt;
  if (I.lo && I.lo_closed && sf.eval(L).is_zero()) ++cnt;
  return cnt;
}

bool ImageInterval::is_singleton() const {
  return !lo.infinite && !hi.infinite && lo.v.compare(hi.v) == 0;
}

bool ImageInterval::contains(const Rat& q) const {
  if (!lo.infinite) {
    int c = lo.v.compare(q);
    if (c > 0 || (c == 0 && !lo.attained)) return false;
  }
  if (!hi.infinite) {
    int c = hi.v.compare(q);
    if (c < 0 || (c == 0 && !hi.attained)) return false;
  }
  return true;
}

namespace {

std::string end_str(const ImageEnd& e, bool is_lo) {
  if (e.infinite) return is_lo ? "-inf" : "inf";
  if (auto r = e.v.known_rational()) return r->str();
  if (auto r = e.v.as_rational()) return r->str();
  return "~" + e.v.decimal(6);
}

}  // namespace

std::string ImageInterval::str() const {
  std::ostringstream os;
  os << (!lo.infinite && lo.attained ? "[" : "(");
  os << end_str(lo, true) << ", " << end_str(hi, false);
  os << (!hi.infinite && hi.attained ? "]" : ")");
  return os.str();
}

ImageInterval image_interval_of_desc(const IntervalDesc& I) {
  I.validate();
  ImageInterval J;
  if (I.lo) {
    J.lo.v = AlgebraicNumber(*I.lo);
    J.lo.attained = I.lo_closed;
  } else {
    J.lo.infinite = true;
  }
  if (I.hi) {
    J.hi.v = AlgebraicNumber(*I.hi);
    J.hi.attained = I.hi_closed;
  } else {
    J.hi.infinite = true;
  }
  return J;
}

std::optional<IntervalDesc> to_interval_desc(const ImageInterval& J) {
  IntervalDesc I;
  if (!J.lo.infinite) {
    auto r = J.lo.v.as_rational();
    if (!r) return std::nullopt;
    I.lo = *r;
    I.lo_closed = J.lo.attained;
  }
  if (!J.hi.infinite) {
    auto r = J.hi.v.as_rational();
    if (!r) return std::nullopt;
    I.hi = *r;
    I.hi_closed = J.hi.attained;
  }
  I.validate();
  return I;
}

namespace {

struct Cand {
  AlgebraicNumber v;
  bool attained;
};

// Sign of f approaching the rational point a from inside (from_right: from
// above), where a is a root of the reduced denominator.
int pole_side_sign(const RatFunc& f, const Rat& a, int mult, bool from_right) {
  UPoly lin({-a, Rat(1)});
  UPoly e = f.den();
  for (int i = 0; i < mult; ++i) e = upoly_exact_div(e, lin);
  int se = e.eval(a).sign();
  int sd = from_right ? se : ((mult % 2) ? -se : se);
  return f.num().eval(a).sign() * sd;
}

}  // namespace

ImageInterval image_of(const RatFunc& f, const IntervalDesc& I, PolePolicy policy) {
  I.validate();
  if (f.is_constant()) {
    Rat v = f.is_zero() ? Rat(0) : f.num().coeff(0) / f.den().coeff(0);
    ImageInterval J;
    J.lo.v = J.hi.v = AlgebraicNumber(v);
    J.lo.attained = J.hi.attained = true;
    return J;
  }
  if (I.is_singleton()) {
    if (f.den().eval(*I.lo).is_zero())
      fail(ErrorKind::DomainViolation, "denominator vanishes at the interval point");
    ImageInterval J;
    J.lo.v = J.hi.v = AlgebraicNumber(f.eval(*I.lo));
    J.lo.attained = J.hi.attained = true;
    return J;
  }

  bool unb_pos = false, unb_neg = false;  // image unbounded above / below
  // Poles relative to the interval.
  if (f.den().degree() >= 1) {
    for (const auto& [alpha, mult] : isolate_real_roots(f.den())) {
      bool at_lo_open = I.lo && !I.lo_closed && alpha.compare(*I.lo) == 0;
      bool at_hi_open = I.hi && !I.hi_closed && alpha.compare(*I.hi) == 0;
      if (at_lo_open || at_hi_open) {
        if (policy != PolePolicy::kAllowOpenEnds)
          fail(ErrorKind::DomainViolation,
               "denominator vanishes at an endpoint of the interval");
        Rat a = at_lo_open ? *I.lo : *I.hi;
        int s = pole_side_sign(f, a, mult, /*from_right=*/at_lo_open);
        if (s > 0) unb_pos = true; else unb_neg = true;
        continue;
      }
      if (I.closure().contains(alpha))
        fail(ErrorKind::DomainViolation, "denominator vanishes on the interval");
    }
  }

  std::vector<Cand> cands;
  auto add_rat = [&](const Rat& v, bool att) { cands.push_back({AlgebraicNumber(v), att}); };

  // Behavior at the two ends of I.
  auto limit_at_infinity = [&](bool to_pos) {
    int dn = f.num().degree(), dd = f.den().degree();
    if (dn > dd) {
      int s = f.num().lc().sign() * f.den().lc().sign();
      if (!to_pos && ((dn - dd) % 2)) s = -s;
      if (s > 0) unb_pos = true; else unb_neg = true;
    } else if (dn == dd) {
      add_rat(f.num().lc() / f.den().lc(), false);
    } else {
      add_rat(Rat(0), false);
    }
  };
  if (!I.lo) limit_at_infinity(false);
  if (!I.hi) limit_at_infinity(true);
  auto finite_end = [&](const Rat& a, bool closed) {
    if (f.den().eval(a).is_zero()) return;  // pole at an open end, already handled
    add_rat(f.eval(a), closed);
  };
  if (I.lo) finite_end(*I.lo, I.lo_closed);
  if (I.hi) finite_end(*I.hi, I.hi_closed);

  // Interior critical values.
  UPoly crit = f.num().derivative() * f.den() - f.num() * f.den().derivative();
  if (crit.is_zero())
    fail(ErrorKind::InternalContradiction, "vanishing derivative for a nonconstant function");
  for (const auto& [alpha, mult] : isolate_real_roots(crit)) {
    bool interior = true;
    if (I.lo && alpha.compare(*I.lo) <= 0) interior = false;
    if (I.hi && alpha.compare(*I.hi) >= 0) interior = false;
    if (!interior) continue;
    cands.push_back({f.eval_algebraic(alpha), true});
  }

  ImageInterval J;
  if (unb_neg) {
    J.lo.infinite = true;
  } else {
    if (cands.empty())
      fail(ErrorKind::InternalContradiction, "image computation produced no candidates");
    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i)
      if (cands[i].v.compare(cands[best].v) < 0) best = i;
    J.lo.v = cands[best].v;
    bool att = false;
    for (const auto& c : cands)
      if (c.attained && c.v.compare(cands[best].v) == 0) att = true;
    J.lo.attained = att;
  }
  if (unb_pos) {
    J.hi.infinite = true;
  } else {
    if (cands.empty())
      fail(ErrorKind::InternalContradiction, "image computation produced no candidates");
    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i)
      if (cands[i].v.compare(cands[best].v) > 0) best = i;
    J.hi.v = cands[best].v;
    bool att = false;
    for (const auto& c : cands)
      if (c.attained && c.v.compare(cands[best].v) == 0) att = true;
    J.hi.attained = att;
  }
  return J;
}

namespace {

// Endpoint coefficient: exact rational, or a named-constant variable.
struct EndCoef {
  std::optional<Rat> r;
  int var_index = -1;  // used when r is absent
};

MPoly coef_poly(const EndCoef& c, int nv) {
  if (c.r) return MPoly::constant(nv, *c.r);
  return MPoly::var(nv, c.var_index);
}

}  // namespace

CertificateMap certificate_for_shape(const ImageInterval& J, bool polynomial_kind) {
  // Shape from the end flags.
  IntervalShape shape;
  if (J.lo.infinite && J.hi.infinite) {
    shape = IntervalShape::All;
  } else if (J.lo.infinite) {
    shape = J.hi.attained ? IntervalShape::ClosedRayDown : IntervalShape::OpenRayDown;
  } else if (J.hi.infinite) {
    shape = J.lo.attained ? IntervalShape::ClosedRayUp : IntervalShape::OpenRayUp;
  } else {
    int c = J.lo.v.compare(J.hi.v);
    if (c > 0) fail(ErrorKind::InternalContradiction, "inverted image interval");
    if (c == 0) {
      if (!J.lo.attained || !J.hi.attained)
        fail(ErrorKind::InternalContradiction, "empty image interval");
      shape = IntervalShape::Singleton;
    } else if (J.lo.attained && J.hi.attained) {
      shape = IntervalShape::ClosedBounded;
    } else if (!J.lo.attained && !J.hi.attained) {
      shape = IntervalShape::OpenBounded;
    } else {
      shape = J.lo.attained ? IntervalShape::HalfOpenHi : IntervalShape::HalfOpenLo;
    }
  }

  if (polynomial_kind) {
    switch (shape) {
      case IntervalShape::All:
      case IntervalShape::Singleton:
      case IntervalShape::ClosedRayUp:
      case IntervalShape::ClosedRayDown:
      case IntervalShape::OpenRayUp:
      case IntervalShape::OpenRayDown:
        break;
      default:
        fail(ErrorKind::NotAPolynomialImage,
             "a bounded interval with interior is not a polynomial image of any R^n");
    }
  }

  int k;
  switch (shape) {
    case IntervalShape::OpenRayUp:
    case IntervalShape::OpenRayDown:
    case IntervalShape::OpenBounded:
      k = 2;
      break;
    default:
      k = 1;
      break;
  }

  CertificateMap cert;
  cert.kind = polynomial_kind ? "polynomial" : "regular";
  cert.source_dim = k;

  // Materialize the needed endpoints (named constants for irrational ones).
  auto make_coef = [&](const AlgebraicNumber& v) {
    EndCoef c;
    if (auto r = v.as_rational()) {
      c.r = *r;
    } else {
      c.var_index = k + static_cast<int>(cert.constants.size());
      cert.constants.push_back(
          NamedConstant::from_algebraic("c" + std::to_string(cert.constants.size() + 1), v));
    }
    return c;
  };
  EndCoef A, B;
  bool use_lo = !J.lo.infinite && shape != IntervalShape::All &&
                shape != IntervalShape::ClosedRayDown && shape != IntervalShape::OpenRayDown;
  bool use_hi = !J.hi.infinite &&
                (shape == IntervalShape::ClosedRayDown || shape == IntervalShape::OpenRayDown ||
                 shape == IntervalShape::ClosedBounded || shape == IntervalShape::OpenBounded ||
                 shape == IntervalShape::HalfOpenLo || shape == IntervalShape::HalfOpenHi);
  if (use_lo) A = make_coef(J.lo.v);
  if (use_hi) B = make_coef(J.hi.v);

  const int nv = k + static_cast<int>(cert.constants.size());
  auto C = [&](const Rat& r) { return MPoly::constant(nv, r); };
  MPoly one = C(Rat(1));

  switch (shape) {
    case IntervalShape::All: {
      cert.comp.push_back(MRat::from_mpoly(MPoly::var(nv, 0)));
      break;
    }
    case IntervalShape::Singleton: {
      cert.comp.push_back(MRat::from_mpoly(coef_poly(A, nv)));
      break;
    }
    case IntervalShape::ClosedRayUp: {
      MPoly t = MPoly::var(nv, 0);
      cert.comp.push_back(MRat::from_mpoly(coef_poly(A, nv) + t * t));
      break;
    }
    case IntervalShape::ClosedRayDown: {
      MPoly t = MPoly::var(nv, 0);
      cert.comp.push_back(MRat::from_mpoly(coef_poly(B, nv) - t * t));
      break;
    }
    case IntervalShape::OpenRayUp:
    case IntervalShape::OpenRayDown: {
      // (x1*x2 - 1)^2 + x1^2 has image (0, inf).
      MPoly x1 = MPoly::var(nv, 0), x2 = MPoly::var(nv, 1);
      MPoly f2 = (x1 * x2 - one).pow(2) + x1 * x1;
      if (shape == IntervalShape::OpenRayUp) {
        cert.comp.push_back(MRat::from_mpoly(coef_poly(A, nv) + f2));
      } else {
        cert.comp.push_back(MRat::from_mpoly(coef_poly(B, nv) - f2));
      }
      break;
    }
    case IntervalShape::ClosedBounded: {
      // (t+1)^2 / (2(t^2+1)) has image [0, 1].
      MPoly t = MPoly::var(nv, 0);
      MPoly n = (t + one) * (t + one);
      MPoly d = (t * t + one) * Rat(2);
      MPoly a = coef_poly(A, nv), b = coef_poly(B, nv);
      cert.comp.emplace_back(a * d + (b - a) * n, d);
      break;
    }
    case IntervalShape::HalfOpenHi: {
      // t^2/(t^2+1) has image [0, 1).
      MPoly t = MPoly::var(nv, 0);
      MPoly n = t * t;
      MPoly d = t * t + one;
      MPoly a = coef_poly(A, nv), b = coef_poly(B, nv);
      cert.comp.emplace_back(a * d + (b - a) * n, d);
      break;
    }
    case IntervalShape::HalfOpenLo: {
      // 1/(t^2+1) has image (0, 1].
      MPoly t = MPoly::var(nv, 0);
      MPoly d = t * t + one;
      MPoly a = coef_poly(A, nv), b = coef_poly(B, nv);
      cert.comp.emplace_back(a * d + (b - a), d);
      break;
    }
    case IntervalShape::OpenBounded: {
      // f2/(1+f2) has image (0, 1).
      MPoly x1 = MPoly::var(nv, 0), x2 = MPoly::var(nv, 1);
      MPoly f2 = (x1 * x2 - one).pow(2) + x1 * x1;
      MPoly a = coef_poly(A, nv), b = coef_poly(B, nv);
      cert.comp.emplace_back(a * (one + f2) + (b - a) * f2, one + f2);
      break;
    }
  }
  return cert;
}

CertificateMap certificate_for_interval(const IntervalDesc& I, bool polynomial_kind) {
  return certificate_for_shape(image_interval_of_desc(I), polynomial_kind);
}

}  // namespace primage
