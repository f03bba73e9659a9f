#include "primage/projective.hpp"

#include <algorithm>
#include <sstream>

#include "primage/error.hpp"

namespace primage {

Mobius::Mobius(Rat a_, Rat b_, Rat c_, Rat d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if (det().is_zero()) fail(ErrorKind::DomainViolation, "singular parameter change");
}

Mobius Mobius::compose(const Mobius& inner) const {
  return Mobius(a * inner.a + b * inner.c, a * inner.b + b * inner.d,
                c * inner.a + d * inner.c, c * inner.b + d * inner.d);
}

std::pair<Rat, Rat> Mobius::apply(const Rat& s0, const Rat& s1) const {
  return {a * s0 + b * s1, c * s0 + d * s1};
}

RatFunc Mobius::affine_action() const {
  return RatFunc(UPoly({c, d}), UPoly({a, b}));
}

std::string Mobius::str() const {
  std::ostringstream os;
  os << "[[" << a.str() << ", " << b.str() << "], [" << c.str() << ", " << d.str() << "]]";
  return os.str();
}

ProjPoint::ProjPoint(std::vector<Rat> coords) : h(std::move(coords)) {
  if (h.size() < 2) fail(ErrorKind::InternalContradiction, "projective point needs >= 2 coordinates");
  size_t k = 0;
  while (k < h.size() && h[k].is_zero()) ++k;
  if (k == h.size())
    fail(ErrorKind::InternalContradiction, "all-zero projective coordinates");
  Rat s = h[k].inv();
  for (auto& x : h) x *= s;
}

std::vector<Rat> ProjPoint::affine() const {
  if (at_infinity()) fail(ErrorKind::InternalContradiction, "affine chart at a point at infinity");
  // Normal form already has h[0] = 1.
  return std::vector<Rat>(h.begin() + 1, h.end());
}

std::string ProjPoint::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) os << " : ";
    os << h[i].str();
  }
  os << ")";
  return os.str();
}

std::vector<HPoly> ProjMap::strip_common(std::vector<HPoly> comps) {
  // Common power of t0.
  int e0 = -1;
  for (const auto& f : comps) {
    if (f.is_zero()) continue;
    int e = f.infinity_multiplicity();
    e0 = (e0 < 0) ? e : std::min(e0, e);
  }
  if (e0 < 0) fail(ErrorKind::InternalContradiction, "projective map with all components zero");
  // Common affine factor.
  UPoly g;
  for (const auto& f : comps) {
    if (f.is_zero()) continue;
    g = g.is_zero() ? f.dehom().monic() : upoly_gcd(g, f.dehom());
    if (g.degree() == 0) break;
  }
  int dg = std::max(g.degree(), 0);
  if (e0 == 0 && dg == 0) return comps;
  int d_new = comps[0].degree() - e0 - dg;
  std::vector<HPoly> out;
  out.reserve(comps.size());
  for (const auto& f : comps) {
    if (f.is_zero()) {
      out.emplace_back(UPoly(), d_new);
    } else {
      out.emplace_back(dg > 0 ? upoly_exact_div(f.dehom(), g) : f.dehom(), d_new);
    }
  }
  return out;
}

ProjMap ProjMap::from_affine(const AffineRatMap& f) {
  if (f.comp.empty()) fail(ErrorKind::WrongDimension, "map with no components");
  UPoly L = UPoly::constant(Rat(1));
  for (const auto& c : f.comp) L = upoly_lcm(L, c.den());
  std::vector<UPoly> polys;
  polys.reserve(f.comp.size() + 1);
  polys.push_back(L);
  for (const auto& c : f.comp)
    polys.push_back(c.num() * upoly_exact_div(L, c.den()));
  int d = 0;
  for (const auto& p : polys) d = std::max(d, p.degree());
  std::vector<HPoly> comps;
  comps.reserve(polys.size());
  for (auto& p : polys) comps.emplace_back(std::move(p), d);
  return ProjMap(strip_common(std::move(comps)));
}

ProjPoint ProjMap::eval(const Rat& t0, const Rat& t1) const {
  std::vector<Rat> v;
  v.reserve(c_.size());
  for (const auto& f : c_) v.push_back(f.eval(t0, t1));
  return ProjPoint(std::move(v));
}

ProjMap ProjMap::substituted(const Mobius& m) const {
  std::vector<HPoly> out;
  out.reserve(c_.size());
  for (const auto& f : c_) out.push_back(f.linear_substitute(m.a, m.b, m.c, m.d));
  return ProjMap(strip_common(std::move(out)));
}

AffineRatMap ProjMap::dehomogenize() const {
  AffineRatMap f;
  f.comp.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i)
    f.comp.emplace_back(c_[i].dehom(), c_[0].dehom());
  return f;
}

}  // namespace primage
