#include "primage/curve.hpp"

#include <algorithm>
#include <utility>

#include "primage/error.hpp"
#include "primage/linalg.hpp"

namespace primage {

namespace {

MPoly up2(const UPoly& p, int var) { return upoly_to_mpoly(p, 2, var); }

// n(s) d(t) - n(t) d(s): vanishes exactly where the component takes equal
// values at s and t.
MPoly cross_difference(const RatFunc& c) {
  return up2(c.num(), 0) * up2(c.den(), 1) - up2(c.num(), 1) * up2(c.den(), 0);
}

// Gcd of the component cross-differences; its degree in t is the generic
// fiber cardinality of the whole map.
MPoly fiber_form(const AffineRatMap& f) {
  MPoly H(2);
  bool any = false;
  for (const auto& c : f.comp) {
    if (c.is_constant()) continue;
    MPoly g = cross_difference(c);
    H = any ? mpoly_gcd(H, g) : g;
    any = true;
  }
  if (!any) fail(ErrorKind::DegenerateConstant, "every component of the map is constant");
  return H.primitive_normalized();
}

// Solve fi = g o R for g by exact linear algebra on the coefficients of g.
std::optional<RatFunc> solve_outer(const RatFunc& fi, const RatFunc& R) {
  if (fi.is_constant()) return fi;
  const int k = R.map_degree();
  const int di = fi.map_degree();
  if (k < 1 || di % k != 0) return std::nullopt;
  const int D = di / k;
  const UPoly &a = R.num(), &b = R.den();
  std::vector<UPoly> basis(D + 1);  // a^j b^(D-j)
  for (int j = 0; j <= D; ++j) basis[j] = a.pow(j) * b.pow(D - j);
  // Identity n*Q - d*P = 0 with P = sum p_j basis_j, Q = sum q_j basis_j.
  std::vector<UPoly> colp(D + 1), colq(D + 1);
  int nrows = 0;
  for (int j = 0; j <= D; ++j) {
    colp[j] = -(fi.den() * basis[j]);
    colq[j] = fi.num() * basis[j];
    nrows = std::max({nrows, colp[j].degree() + 1, colq[j].degree() + 1});
  }
  const int ncols = 2 * (D + 1);
  QMat A(nrows, std::vector<Rat>(ncols, Rat(0)));
  for (int j = 0; j <= D; ++j) {
    for (int e = 0; e <= colp[j].degree(); ++e) A[e][j] = colp[j].coeff(e);
    for (int e = 0; e <= colq[j].degree(); ++e) A[e][D + 1 + j] = colq[j].coeff(e);
  }
  for (const auto& v : qmat_kernel(std::move(A), ncols)) {
    std::vector<Rat> pc(v.begin(), v.begin() + D + 1);
    std::vector<Rat> qc(v.begin() + D + 1, v.end());
    UPoly Q(qc);
    if (Q.is_zero()) continue;
    RatFunc g(UPoly(pc), Q);
    if (g.compose(R) == fi) return g;
  }
  return std::nullopt;
}

std::optional<ProperParam> try_inner(const AffineRatMap& f, const UPoly& u, const UPoly& v,
                                     int k) {
  if (u.is_zero() || v.is_zero()) return std::nullopt;
  if (u * v.lc() == v * u.lc()) return std::nullopt;  // proportional, constant ratio
  RatFunc R(u, v);
  if (R.map_degree() != k) return std::nullopt;
  AffineRatMap g;
  g.comp.reserve(f.comp.size());
  for (const auto& c : f.comp) {
    auto gi = solve_outer(c, R);
    if (!gi) return std::nullopt;
    g.comp.push_back(*gi);
  }
  return ProperParam{std::move(g), std::move(R), k};
}

}  // namespace

int properness_degree(const AffineRatMap& f) { return fiber_form(f).degree_in(1); }

ProperParam make_proper(const AffineRatMap& f) {
  MPoly H = fiber_form(f);
  const int k = H.degree_in(1);
  if (k < 1) fail(ErrorKind::InternalContradiction, "fiber form with no t-degree");
  if (k == 1) return {f, RatFunc::variable(), 1};
  std::vector<MPoly> cm = H.coeffs_in(1);
  std::vector<UPoly> c(cm.size());
  for (size_t j = 0; j < cm.size(); ++j) c[j] = mpoly_to_upoly(cm[j], 0);
  // The coefficient list of the fiber form generates the intermediate field;
  // some ratio of two coefficients realizes it.
  for (int den = k; den >= 0; --den)
    for (int num = k; num >= 0; --num) {
      if (num == den) continue;
      if (auto r = try_inner(f, c[num], c[den], k)) return *r;
    }
  // Combinations for the degenerate alignments the plain ratios miss.
  static const int weights[][2] = {{1, 2}, {1, 3}, {2, 3}, {1, -1}, {2, -3}, {3, -2}};
  for (const auto& w : weights) {
    UPoly u, v;
    Rat pw1(1), pw2(1);
    for (size_t j = 0; j < c.size(); ++j) {
      u = u + c[j] * pw1;
      v = v + c[j] * pw2;
      pw1 *= Rat(w[0]);
      pw2 *= Rat(w[1]);
    }
    if (auto r = try_inner(f, u, v, k)) return *r;
  }
  fail(ErrorKind::GenericityFailure, "no coefficient ratio of the fiber form generates the map");
}

PolyNormalization normalize_infinity(const AffineRatMap& proper) {
  ProjMap Pi = ProjMap::from_affine(proper);
  auto lp = factor_linear_power(Pi.denominator_form());
  if (!lp)
    fail(ErrorKind::NotSingleRealBranchAtInfinity,
         "the denominator form is not a power of a single real linear form");
  // M(0:1) = (a:b); complete to det 1 by an integer Bezout pair.
  mpz_class az = lp->a.num(), bz = lp->b.num();
  mpz_class g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), bz.get_mpz_t(), az.get_mpz_t());
  if (g != 1) fail(ErrorKind::InternalContradiction, "place coordinates are not coprime");
  Mobius M(Rat(x), lp->a, Rat(mpz_class(-y)), lp->b);
  ProjMap PiM = Pi.substituted(M);
  if (!PiM.denominator_form().dehom().is_constant())
    fail(ErrorKind::InternalContradiction, "normalized denominator form is not a monomial");
  AffineRatMap poly = PiM.dehomogenize();
  for (const auto& c : poly.comp)
    if (!c.is_poly())
      fail(ErrorKind::InternalContradiction, "normalization left a nonconstant denominator");
  return {std::move(poly), M, M.inverse().affine_action(), lp->exponent};
}

InfinityData infinity_analysis(const AffineRatMap& proper) {
  ProjMap Pi = ProjMap::from_affine(proper);
  const HPoly& P0 = Pi.denominator_form();
  InfinityData out;
  const UPoly& w = P0.dehom();
  const int inf_mult = P0.infinity_multiplicity();
  if (inf_mult > 0) out.real_places.push_back({AlgebraicNumber(Rat(0)), inf_mult, true});
  int distinct_real = 0;
  if (!w.is_constant()) {
    for (auto& [alpha, mult] : isolate_real_roots(w)) {
      out.real_places.push_back({alpha, mult, false});
      ++distinct_real;
    }
    out.complex_place_pairs = (count_distinct_complex_roots(w) - distinct_real) / 2;
  }

  const auto& comps = Pi.comps();
  const int n = static_cast<int>(comps.size());
  if (w.is_constant()) {
    // The only parameter over infinity is (0:1) itself.
    out.single_point_over_C = inf_mult > 0;
  } else {
    UPoly wm = squarefree_part(w);
    bool ok = true;
    for (int i = 1; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) {
        MPoly mij = up2(comps[i].dehom(), 0) * up2(comps[j].dehom(), 1) -
                    up2(comps[j].dehom(), 0) * up2(comps[i].dehom(), 1);
        mij = mpoly_rem_by_monic(mij, 0, wm);
        mij = mpoly_rem_by_monic(mij, 1, wm);
        if (!mij.is_zero()) ok = false;
      }
    if (ok && inf_mult > 0) {
      std::vector<Rat> cv(n);
      for (int i = 0; i < n; ++i) cv[i] = comps[i].eval(Rat(0), Rat(1));
      for (int i = 1; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j) {
          MPoly mij = up2(comps[i].dehom(), 0) * cv[j] - up2(comps[j].dehom(), 0) * cv[i];
          mij = mpoly_rem_by_monic(mij, 0, wm);
          if (!mij.is_zero()) ok = false;
        }
    }
    out.single_point_over_C = ok;
  }
  if (auto lp = factor_linear_power(P0)) {
    out.germ_irreducible = true;
    out.germ_multiplicity = lp->exponent;
    out.place_param = {{lp->a, lp->b}};
  }
  return out;
}

UPoly param_preimage(const AffineRatMap& f, const std::vector<Rat>& q) {
  if (static_cast<int>(q.size()) != f.dimension())
    fail(ErrorKind::WrongDimension, "point dimension does not match the map");
  UPoly g;
  bool any = false;
  for (size_t i = 0; i < q.size(); ++i) {
    UPoly h = f.comp[i].num() - f.comp[i].den() * q[i];
    if (h.is_zero()) continue;
    g = any ? upoly_gcd(g, h) : h.monic();
    any = true;
  }
  if (!any) fail(ErrorKind::DegenerateConstant, "the map is identically the given point");
  return g;
}

namespace {

// A rational value R never takes on I, or nullopt when R covers every
// rational (then R(I) = R, since the complement of the image consists of
// rational end limits only).
std::optional<Rat> find_avoided_value(const RatFunc& R, const IntervalDesc& I) {
  auto misses = [&](const Rat& c) {
    UPoly h = R.num() - R.den() * c;
    if (h.is_zero()) return false;
    return count_real_roots_in(h, I) == 0;
  };
  static const Rat quick[] = {Rat(0), Rat(1), Rat(-1), Rat(2),  Rat(-2),
                              Rat(3), Rat(-3), Rat(1, 2), Rat(-1, 2), Rat(10)};
  for (const Rat& c : quick)
    if (misses(c)) return c;
  // Complete search: the boundary of the image set consists of critical
  // values and end limits; probe one rational per gap and outside.
  std::vector<AlgebraicNumber> vals;
  UPoly crit = R.num().derivative() * R.den() - R.num() * R.den().derivative();
  if (!crit.is_zero())
    for (auto& [alpha, mult] : isolate_real_roots(crit))
      if (sign_of_upoly_at(R.den(), alpha) != 0) vals.push_back(R.eval_algebraic(alpha));
  auto add_end = [&](const Rat& t) {
    if (!R.den().eval(t).is_zero()) vals.emplace_back(R.eval(t));
  };
  if (I.lo) add_end(*I.lo);
  if (I.hi) add_end(*I.hi);
  if (!I.lo || !I.hi) {
    int dn = R.num().degree(), dd = R.den().degree();
    if (dn <= dd) vals.emplace_back(dn == dd ? R.num().lc() / R.den().lc() : Rat(0));
  }
  std::sort(vals.begin(), vals.end(),
            [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return a.compare(b) < 0; });
  std::vector<Rat> cands;
  if (!vals.empty()) {
    cands.push_back(rational_strictly_below(vals.front()));
    cands.push_back(rational_strictly_above(vals.back()));
  }
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i].compare(vals[i + 1]) < 0)
      cands.push_back(rational_strictly_between(vals[i], vals[i + 1]));
  for (const auto& v : vals)
    if (auto r = v.as_rational()) cands.push_back(*r);
  for (const Rat& c : cands)
    if (misses(c)) return c;
  return std::nullopt;
}

// g composed with a one-component certificate covering an interval.
CertificateMap compose_map(const AffineRatMap& g, const CertificateMap& c,
                           const std::string& kind) {
  CertificateMap out;
  out.kind = kind;
  out.source_dim = c.source_dim;
  out.constants = c.constants;
  out.comp.reserve(g.comp.size());
  for (const auto& gi : g.comp) out.comp.push_back(compose_ratfunc_mrat(gi, c.comp[0]));
  return out;
}

// Witness for r = 1 when exactly one affine closure point is missing: after
// at most two parameter rotations the inner image becomes one interval that
// is open exactly at the preimage of the missing point.
CertificateMap synth_r1_missing(AffineRatMap g, RatFunc R, const IntervalDesc& I,
                                ProjPoint beta) {
  for (int guard = 0; guard < 6; ++guard) {
    ImageInterval J;
    bool have = false;
    try {
      J = image_of(R, I, PolePolicy::kAllowOpenEnds);
      have = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DomainViolation) throw;
    }
    std::optional<Rat> move;  // rotate so that R - move misses 0 on I
    if (!have) {
      move = find_avoided_value(R, I);
      if (!move)
        fail(ErrorKind::InternalContradiction,
             "inner image covers the whole line although a closure point is missing");
    } else if (beta.at_infinity()) {
      // The missing point sits over the parameter at infinity; close up any
      // finite open end (its limit value is attained inside S).
      if (!J.lo.infinite) J.lo.attained = true;
      if (!J.hi.infinite) J.hi.attained = true;
      return compose_map(g, certificate_for_shape(J, false), "regular");
    } else {
      Rat br = beta.affine()[0];
      bool lo_is_beta = !J.lo.infinite && J.lo.v.compare(br) == 0;
      bool hi_is_beta = !J.hi.infinite && J.hi.v.compare(br) == 0;
      if (!lo_is_beta && !hi_is_beta)
        fail(ErrorKind::InternalContradiction,
             "the missing point's parameter is not an end of the inner image");
      if (lo_is_beta ? J.hi.infinite : J.lo.infinite) {
        // Other side unbounded: rotate it into a finite end.
        move = lo_is_beta ? br - Rat(1) : br + Rat(1);
      } else {
        ImageInterval Jc = J;
        if (lo_is_beta) {
          Jc.lo.attained = false;
          Jc.hi.attained = true;
        } else {
          Jc.hi.attained = false;
          Jc.lo.attained = true;
        }
        return compose_map(g, certificate_for_shape(Jc, false), "regular");
      }
    }
    Mobius mu(-*move, Rat(1), Rat(1), Rat(0));  // y -> 1/(y - move)
    R = mu.affine_action().compose(R);
    g = g.compose_inner(mu.inverse().affine_action());
    auto [b0, b1] = mu.apply(beta.h[0], beta.h[1]);
    beta = ProjPoint({b0, b1});
  }
  fail(ErrorKind::InternalContradiction, "inner image normalization did not settle");
}

// Polynomial witness for p in {1, 2}.
CertificateMap synth_p(const ProperParam& pp, const IntervalDesc& I, bool closed,
                       const std::optional<ProjPoint>& kept_beta) {
  PolyNormalization pn = normalize_infinity(pp.outer);
  RatFunc Rstar = pn.sigma_inv.compose(pp.inner);
  ImageInterval K = image_of(Rstar, I, PolePolicy::kAllowOpenEnds);
  if (closed) {
    if (!K.lo.infinite) K.lo.attained = true;
    if (!K.hi.infinite) K.hi.attained = true;
    if (!K.lo.infinite && !K.hi.infinite)
      fail(ErrorKind::InternalContradiction,
           "bounded normalized parameter interval for an unbounded set");
    return compose_map(pn.poly_map, certificate_for_shape(K, true), "polynomial");
  }
  if (!kept_beta)
    fail(ErrorKind::InternalContradiction, "no missing-point place for a non-closed set");
  auto [h0, h1] = pn.M.inverse().apply(kept_beta->h[0], kept_beta->h[1]);
  if (h0.is_zero())
    fail(ErrorKind::InternalContradiction, "missing point sits at the normalized infinity");
  Rat kappa = h1 / h0;
  ImageInterval K2;
  if (!K.lo.infinite && K.hi.infinite && K.lo.v.compare(kappa) == 0) {
    K2.lo.v = AlgebraicNumber(kappa);
    K2.lo.attained = false;
    K2.hi.infinite = true;
  } else if (!K.hi.infinite && K.lo.infinite && K.hi.v.compare(kappa) == 0) {
    K2.hi.v = AlgebraicNumber(kappa);
    K2.hi.attained = false;
    K2.lo.infinite = true;
  } else {
    fail(ErrorKind::InternalContradiction,
         "normalized parameter interval does not expose the missing point");
  }
  return compose_map(pn.poly_map, certificate_for_shape(K2, true), "polynomial");
}

}  // namespace

Classification classify(const AffineRatMap& f, const IntervalDesc& I, DomainPolicy policy) {
  I.validate();
  if (f.dimension() < 1) fail(ErrorKind::WrongDimension, "map with no components");
  for (const auto& c : f.comp) {
    if (policy == DomainPolicy::kGlobalRealRootFree && c.den_has_real_root()) {
      auto roots = isolate_real_roots(c.den());
      fail(ErrorKind::DomainViolation,
           "a component denominator vanishes at a real point near " + roots.front().first.str());
    }
    if (policy == DomainPolicy::kPolesOffInterval && has_real_root_in(c.den(), I))
      fail(ErrorKind::DomainViolation, "a component denominator vanishes on the interval");
  }

  Classification out;
  bool allconst = true;
  for (const auto& c : f.comp) allconst = allconst && c.is_constant();
  if (I.is_singleton() || allconst) {
    Rat t0 = I.lo ? *I.lo : Rat(0);
    out.p = out.r = Nval::one;
    out.degenerate = true;
    out.unbounded = false;
    out.closed = true;
    out.proper_map = f;
    out.inner = RatFunc::variable();
    out.point_value = f.eval(t0);
    CertificateMap c;
    c.kind = "polynomial";
    c.source_dim = 1;
    for (const Rat& vi : *out.point_value)
      c.comp.push_back(MRat::from_mpoly(MPoly::constant(1, vi)));
    out.cert_r = c;
    out.cert_p = c;
    return out;
  }

  ProperParam pp = make_proper(f);
  out.properness_degree = pp.degree;
  out.proper_map = pp.outer;
  out.inner = pp.inner;
  out.infinity = infinity_analysis(pp.outer);

  ProjMap F = ProjMap::from_affine(f);
  AffineRatMap inner_map;
  inner_map.comp.push_back(pp.inner);
  ProjMap Rt = ProjMap::from_affine(inner_map);

  struct Theta {
    bool at_inf;
    Rat t;
  };
  std::vector<Theta> thetas;
  if (!I.lo || !I.hi) thetas.push_back({true, Rat(0)});
  if (I.lo && !I.lo_closed) thetas.push_back({false, *I.lo});
  if (I.hi && !I.hi_closed) thetas.push_back({false, *I.hi});

  struct Kept {
    ProjPoint q;
    std::vector<ProjPoint> places;
  };
  std::vector<Kept> kept;
  for (const auto& th : thetas) {
    ProjPoint q = th.at_inf ? F.value_at_infinity() : F.eval(Rat(1), th.t);
    ProjPoint b = th.at_inf ? Rt.value_at_infinity() : Rt.eval(Rat(1), th.t);
    bool keep;
    if (q.at_infinity()) {
      keep = true;
      out.unbounded = true;
    } else {
      keep = !has_real_root_in(param_preimage(f, q.affine()), I);
    }
    if (!keep) continue;
    bool merged = false;
    for (auto& kk : kept) {
      if (!(kk.q == q)) continue;
      bool seen = false;
      for (const auto& pl : kk.places) seen = seen || pl == b;
      if (!seen) kk.places.push_back(b);
      merged = true;
      break;
    }
    if (!merged) kept.push_back({q, {b}});
  }

  bool any_affine = false;
  std::optional<ProjPoint> kept_beta;
  for (const auto& kk : kept) {
    if (kk.q.at_infinity()) {
      out.infinite_closure_points.push_back(kk.q);
    } else {
      any_affine = true;
      out.closure_deficiency.push_back({kk.q.affine(), static_cast<int>(kk.places.size())});
      kept_beta = kk.places.front();
    }
  }
  out.closed = !any_affine;
  const bool r1 = kept.empty() || (kept.size() == 1 && kept[0].places.size() == 1);
  out.r = r1 ? Nval::one : Nval::two;
  if (out.unbounded && out.infinity.single_point_over_C && out.infinity.germ_irreducible)
    out.p = out.closed ? Nval::one : Nval::two;
  else
    out.p = Nval::infinite;

  if (r1) {
    if (!any_affine) {
      // Close only the finite open ends whose value is affine (already in S);
      // ends mapping to infinity must stay open or the composite would hit a
      // pole of f.
      IntervalDesc It = I;
      if (It.lo && !It.lo_closed && !F.eval(Rat(1), *It.lo).at_infinity()) It.lo_closed = true;
      if (It.hi && !It.hi_closed && !F.eval(Rat(1), *It.hi).at_infinity()) It.hi_closed = true;
      out.cert_r = compose_map(f, certificate_for_interval(It, false), "regular");
    } else
      out.cert_r = synth_r1_missing(pp.outer, pp.inner, I, *kept_beta);
  } else {
    out.cert_r = compose_map(f, certificate_for_interval(I, false), "regular");
  }
  if (out.p != Nval::infinite) out.cert_p = synth_p(pp, I, out.closed, kept_beta);
  return out;
}

namespace {

MPoly relabel_pair(const MPoly& p, int m, int xi, int xj) {
  MPoly out(m);
  for (const auto& [e, coef] : p.terms()) {
    MPoly::Exp en(m, 0);
    en[xi] = e[1];
    en[xj] = e[2];
    out.add_term(en, coef);
  }
  return out;
}

}  // namespace

ImplicitSet implicitize(const AffineRatMap& f) {
  const int m = f.dimension();
  if (m < 1) fail(ErrorKind::WrongDimension, "map with no components");
  ImplicitSet out;
  std::vector<int> nc;
  for (int i = 0; i < m; ++i) {
    if (f.comp[i].is_constant()) {
      Rat v = f.comp[i].eval(Rat(0));
      out.eqs.push_back(MPoly::var(m, i) - MPoly::constant(m, v));
    } else {
      nc.push_back(i);
    }
  }
  for (size_t a = 0; a < nc.size(); ++a)
    for (size_t b = a + 1; b < nc.size(); ++b) {
      const RatFunc &fi = f.comp[nc[a]], &fj = f.comp[nc[b]];
      MPoly A = upoly_to_mpoly(fi.num(), 3, 0) - MPoly::var(3, 1) * upoly_to_mpoly(fi.den(), 3, 0);
      MPoly B = upoly_to_mpoly(fj.num(), 3, 0) - MPoly::var(3, 2) * upoly_to_mpoly(fj.den(), 3, 0);
      MPoly res = mpoly_resultant(A, B, 0);
      if (res.is_zero())
        fail(ErrorKind::InternalContradiction, "vanishing elimination resultant");
      // Strip repeated factors (the properness multiplicity) and the
      // one-variable degeneration factors.
      MPoly d1 = res.derivative(1);
      if (!d1.is_zero()) {
        MPoly g = mpoly_gcd(res, d1);
        if (!g.is_constant()) res = mpoly_exact_div(res, g);
      }
      res = mpoly_primitive_in(res, 1);
      res = mpoly_primitive_in(res, 2);
      res = res.primitive_normalized();
      if (res.is_constant())
        fail(ErrorKind::InternalContradiction, "elimination lost the curve equation");
      out.eqs.push_back(relabel_pair(res, m, nc[a], nc[b]));
    }
  out.superset = m >= 3 && nc.size() >= 2;
  return out;
}

}  // namespace primage
