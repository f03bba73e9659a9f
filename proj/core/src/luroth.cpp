#include "primage/luroth.hpp"

#include <algorithm>
#include <sstream>

#include "primage/curve.hpp"
#include "primage/error.hpp"
#include "primage/linalg.hpp"

namespace primage {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

const Rat& lex_leading(const MPoly& p) { return p.terms().rbegin()->second; }

}  // namespace

MRatFunc::MRatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  num_.check_same(den_);
  if (den_.is_zero()) fail(ErrorKind::DegenerateInput, "zero denominator");
  if (num_.is_zero()) {
    den_ = MPoly::constant(num_.nvars(), Rat(1));
    return;
  }
  MPoly g = mpoly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = mpoly_exact_div(num_, g);
    den_ = mpoly_exact_div(den_, g);
  }
  Rat s = Rat(1) / lex_leading(den_);
  num_ = num_ * s;
  den_ = den_ * s;
}

MRatFunc MRatFunc::from_poly(MPoly p) {
  int n = p.nvars();
  return MRatFunc(std::move(p), MPoly::constant(n, Rat(1)));
}

MRatFunc MRatFunc::constant(int nvars, const Rat& c) {
  return MRatFunc(MPoly::constant(nvars, c), MPoly::constant(nvars, Rat(1)));
}

MRatFunc MRatFunc::variable(int nvars, int i) {
  return MRatFunc(MPoly::var(nvars, i), MPoly::constant(nvars, Rat(1)));
}

MRatFunc MRatFunc::operator+(const MRatFunc& o) const {
  return MRatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
MRatFunc MRatFunc::operator-(const MRatFunc& o) const {
  return MRatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
MRatFunc MRatFunc::operator*(const MRatFunc& o) const {
  return MRatFunc(num_ * o.num_, den_ * o.den_);
}
MRatFunc MRatFunc::operator/(const MRatFunc& o) const {
  if (o.is_zero()) fail(ErrorKind::DegenerateInput, "division by the zero function");
  return MRatFunc(num_ * o.den_, den_ * o.num_);
}
MRatFunc MRatFunc::operator-() const { return MRatFunc(-num_, den_); }

MRatFunc MRatFunc::derivative(int var) const {
  return MRatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Rat MRatFunc::eval(const std::vector<Rat>& x) const {
  Rat d = den_.eval(x);
  if (d.is_zero()) fail(ErrorKind::DomainViolation, "denominator vanishes at the sample point");
  return num_.eval(x) / d;
}

std::string MRatFunc::str(const std::vector<std::string>& names) const {
  if (is_poly()) {
    if (den_.constant_value() == Rat(1)) return num_.str(names);
    return "(" + num_.str(names) + ")/" + den_.constant_value().str();
  }
  return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
}

UPoly mpoly_on_line(const MPoly& p, const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (static_cast<int>(a.size()) != p.nvars() || b.size() != a.size())
    fail(ErrorKind::WrongDimension, "line dimension does not match the polynomial");
  UPoly out;
  for (const auto& [e, c] : p.terms()) {
    UPoly term = UPoly::constant(c);
    for (int i = 0; i < p.nvars(); ++i)
      if (e[i] > 0) term = term * UPoly({a[i], b[i]}).pow(e[i]);
    out = out + term;
  }
  return out;
}

MRatFunc upoly_at_mrat(const UPoly& p, const MRatFunc& g) {
  const int n = g.nvars();
  if (p.is_zero()) return MRatFunc::constant(n, Rat(0));
  const int d = p.degree();
  MPoly acc = MPoly::constant(n, p.coeff(d));
  MPoly dp = MPoly::constant(n, Rat(1));
  for (int j = d - 1; j >= 0; --j) {
    dp = dp * g.den();
    acc = acc * g.num() + dp * p.coeff(j);
  }
  return MRatFunc(std::move(acc), std::move(dp));
}

MRatFunc ratfunc_at_mrat(const RatFunc& f, const MRatFunc& g) {
  return upoly_at_mrat(f.num(), g) / upoly_at_mrat(f.den(), g);
}

MPoly upoly_at_mpoly(const UPoly& p, const MPoly& g) {
  const int n = g.nvars();
  if (p.is_zero()) return MPoly::constant(n, Rat(0));
  MPoly acc = MPoly::constant(n, p.coeff(p.degree()));
  for (int j = p.degree() - 1; j >= 0; --j) acc = acc * g + MPoly::constant(n, p.coeff(j));
  return acc;
}

int dim_image(const std::vector<MRatFunc>& f) {
  if (f.empty()) fail(ErrorKind::WrongDimension, "empty map");
  const int n = f[0].nvars();
  const int m = static_cast<int>(f.size());
  for (const auto& fi : f)
    if (fi.nvars() != n) fail(ErrorKind::WrongDimension, "mixed variable counts");
  // Row i scaled by den_i^2: entries num_i' den_i - num_i den_i'.
  std::vector<std::vector<MPoly>> J(m, std::vector<MPoly>(n, MPoly(n)));
  bool anynz = false;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      J[i][j] = f[i].num().derivative(j) * f[i].den() - f[i].num() * f[i].den().derivative(j);
      anynz = anynz || !J[i][j].is_zero();
    }
  if (!anynz) return 0;
  if (n == 1 || m == 1) return 1;
  // Fast positive witness: a nonzero 2x2 minor at a rational point certifies
  // rank >= 2 (exact evaluation, no tolerance).
  std::uint64_t st = 0x1d1a6e5u;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Rat> x(n);
    for (int j = 0; j < n; ++j) {
      st = splitmix64(st);
      x[j] = Rat(static_cast<long>(st % 41) - 20);
    }
    QMat M(m, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) M[i][j] = J[i][j].eval(x);
    if (qmat_rref(M) >= 2) return 2;
  }
  // Certification: rank <= 1 iff every symbolic 2x2 minor vanishes.
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
          if (!(J[i][j] * J[k][l] - J[i][l] * J[k][j]).is_zero()) return 2;
  return 1;
}

namespace {

MPoly lift_var(const MPoly& p) {
  MPoly out(p.nvars() + 1);
  for (const auto& [e, c] : p.terms()) {
    MPoly::Exp en(e);
    en.push_back(0);
    out.add_term(en, c);
  }
  return out;
}

MPoly drop_last_var(const MPoly& p) {
  MPoly out(p.nvars() - 1);
  for (const auto& [e, c] : p.terms()) {
    MPoly::Exp en(e.begin(), e.end() - 1);
    out.add_term(en, c);
  }
  return out;
}

}  // namespace

std::pair<MPoly, PolynomializeEvidence> polynomialize_generator(const MRatFunc& g0,
                                                                const std::vector<MPoly>& f,
                                                                const AffineRatMap& h0) {
  if (f.size() != h0.comp.size())
    fail(ErrorKind::WrongDimension, "component counts of the factors disagree");
  int idx = -1;
  for (size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_constant() && !h0.comp[i].is_constant()) {
      idx = static_cast<int>(i);
      break;
    }
  if (idx < 0) fail(ErrorKind::DegenerateConstant, "every component is constant");
  PolynomializeEvidence ev;
  ev.component = idx;
  const UPoly& S = h0.comp[idx].den();
  if (S.degree() == 0) {
    ev.s = 0;
    if (!g0.den().is_constant())
      fail(ErrorKind::InternalContradiction,
           "polynomial presentation with a nonconstant generator denominator");
    MPoly g = g0.num() * (Rat(1) / g0.den().constant_value());
    if (g.is_constant()) fail(ErrorKind::InternalContradiction, "constant generator");
    return {g, ev};
  }
  auto lp = factor_linear_power(HPoly::homogenize(S, S.degree()));
  if (!lp)
    fail(ErrorKind::InternalContradiction,
         "pole pattern of a polynomial component is not a single real parameter");
  if (lp->a.is_zero())
    fail(ErrorKind::InternalContradiction, "pole parameter escaped to infinity");
  ev.s = lp->exponent;
  ev.xi = lp->b / lp->a;
  if (g0.den().is_constant())
    fail(ErrorKind::InternalContradiction, "real pole parameter with a polynomial generator");
  MPoly g = g0.den();
  return {g, ev};
}

AffineRatMap adjust_h(const MPoly& g, const std::vector<MPoly>& f) {
  if (g.is_constant()) fail(ErrorKind::DegenerateConstant, "constant generator");
  const int n = g.nvars();
  const int dg = g.total_degree();
  AffineRatMap h;
  for (const MPoly& fi : f) {
    if (fi.nvars() != n) fail(ErrorKind::WrongDimension, "mixed variable counts");
    if (fi.is_constant()) {
      h.comp.push_back(RatFunc::constant(fi.is_zero() ? Rat(0) : fi.constant_value()));
      continue;
    }
    const int Di = fi.total_degree();
    if (Di % dg != 0)
      fail(ErrorKind::NotInSubfield, "component degree is not a multiple of the generator degree");
    const int N = Di / dg;
    // Ansatz fi * Q(g) = P(g) with deg P, deg Q <= N; kernel of the
    // coefficient matrix over the monomials of the combined expansion.
    std::vector<MPoly> gp(N + 1, MPoly::constant(n, Rat(1)));
    for (int j = 1; j <= N; ++j) gp[j] = gp[j - 1] * g;
    std::vector<MPoly> cols;
    cols.reserve(2 * (N + 1));
    for (int j = 0; j <= N; ++j) cols.push_back(-gp[j]);
    for (int j = 0; j <= N; ++j) cols.push_back(fi * gp[j]);
    std::map<MPoly::Exp, int> rowof;
    for (const auto& c : cols)
      for (const auto& [e, v] : c.terms())
        rowof.emplace(e, static_cast<int>(rowof.size()));
    QMat A(rowof.size(), std::vector<Rat>(cols.size(), Rat(0)));
    for (size_t cix = 0; cix < cols.size(); ++cix)
      for (const auto& [e, v] : cols[cix].terms()) A[rowof[e]][cix] = v;
    std::optional<RatFunc> found;
    for (const auto& vkr : qmat_kernel(std::move(A), static_cast<int>(cols.size()))) {
      UPoly Q(std::vector<Rat>(vkr.begin() + N + 1, vkr.end()));
      if (Q.is_zero()) continue;
      found = RatFunc(UPoly(std::vector<Rat>(vkr.begin(), vkr.begin() + N + 1)), Q);
      break;
    }
    if (!found) fail(ErrorKind::NotInSubfield, "component is not a rational function of the generator");
    const UPoly &P = found->num(), &Q = found->den();
    // Bezout certificate: 1 = P A + Q B, so Q(g) * (fi A(g) + B(g)) = 1 and
    // Q(g) is a nonzero constant.
    ExtGcd eg = upoly_ext_gcd(P, Q);
    if (eg.g.degree() != 0)
      fail(ErrorKind::InternalContradiction, "reduced pair is not coprime");
    Rat c0 = eg.g.coeff(0);
    MPoly qg = upoly_at_mpoly(Q, g);
    if (!qg.is_constant() || qg.is_zero())
      fail(ErrorKind::NotInSubfield, "reduced denominator is not constant at the generator");
    MPoly ident = qg * (fi * upoly_at_mpoly(eg.s, g) + upoly_at_mpoly(eg.t, g));
    if (!(ident == MPoly::constant(n, c0)))
      fail(ErrorKind::NotInSubfield, "certificate identity failed");
    if (!(upoly_at_mpoly(P, g) == fi * qg.constant_value()))
      fail(ErrorKind::NotInSubfield, "recomposition failed");
    h.comp.push_back(RatFunc(P, UPoly::constant(qg.constant_value())));
  }
  return h;
}

Decomposition decompose(const std::vector<MRatFunc>& f, std::uint64_t seed) {
  if (f.empty()) fail(ErrorKind::WrongDimension, "empty map");
  const int n = f[0].nvars();
  const int dim = dim_image(f);
  if (dim != 1)
    fail(ErrorKind::WrongDimension,
         std::string("image dimension is ") + (dim == 0 ? "0" : "at least 2") + ", not 1");
  std::uint64_t st = seed ? seed : 0x5eedull;
  std::ostringstream tried;
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<Rat> a(n), b(n);
    bool bnz = false;
    for (int i = 0; i < n; ++i) {
      st = splitmix64(st);
      a[i] = Rat(static_cast<long>(st % 41) - 20);
      st = splitmix64(st);
      b[i] = Rat(static_cast<long>(st % 41) - 20);
      bnz = bnz || !b[i].is_zero();
    }
    if (!bnz) continue;
    auto describe = [&]() {
      tried << " [a=(";
      for (int i = 0; i < n; ++i) tried << (i ? "," : "") << a[i].str();
      tried << ") b=(";
      for (int i = 0; i < n; ++i) tried << (i ? "," : "") << b[i].str();
      tried << ")]";
    };
    AffineRatMap fL;
    bool ok = true;
    for (const auto& fi : f) {
      UPoly dd = mpoly_on_line(fi.den(), a, b);
      if (dd.is_zero()) {
        ok = false;
        break;
      }
      UPoly nn = mpoly_on_line(fi.num(), a, b);
      RatFunc c(nn, dd);
      if (!fi.is_constant() && c.is_constant()) {
        ok = false;
        break;
      }
      fL.comp.push_back(c);
    }
    if (!ok) {
      describe();
      continue;
    }
    ProperParam pp;
    try {
      pp = make_proper(fL);
    } catch (const Error&) {
      describe();
      continue;
    }
    // Birational inverse: the unique parameter over a generic curve point
    // is cut out by the degree-1 gcd of num_i(t) - f_i(x) den_i(t).
    const int tv = n;
    MPoly G(n + 1);
    bool first = true;
    for (size_t i = 0; i < f.size(); ++i) {
      MPoly A = upoly_to_mpoly(pp.outer.comp[i].num(), n + 1, tv) * lift_var(f[i].den()) -
                lift_var(f[i].num()) * upoly_to_mpoly(pp.outer.comp[i].den(), n + 1, tv);
      if (A.is_zero()) continue;
      G = first ? A : mpoly_gcd(G, A);
      first = false;
    }
    if (first || G.degree_in(tv) != 1) {
      describe();
      continue;
    }
    MPoly ct = mpoly_content_in(G, tv);
    if (!ct.is_constant()) G = mpoly_exact_div(G, ct);
    auto cs = G.coeffs_in(tv);
    MRatFunc g0(-drop_last_var(cs[0]), drop_last_var(cs[1]));
    bool verified = true;
    for (size_t i = 0; i < f.size(); ++i)
      if (!(ratfunc_at_mrat(pp.outer.comp[i], g0) == f[i])) {
        verified = false;
        break;
      }
    if (!verified) {
      describe();
      continue;
    }
    Decomposition out;
    out.g = g0;
    out.h = pp.outer;
    out.line_a = a;
    out.line_b = b;
    bool allpoly = true;
    for (const auto& fi : f) allpoly = allpoly && fi.is_poly();
    if (allpoly) {
      std::vector<MPoly> fp;
      fp.reserve(f.size());
      for (const auto& fi : f) fp.push_back(fi.num() * (Rat(1) / fi.den().constant_value()));
      auto [g, ev] = polynomialize_generator(g0, fp, pp.outer);
      (void)ev;
      AffineRatMap h2 = adjust_h(g, fp);
      MRatFunc gm = MRatFunc::from_poly(g);
      for (size_t i = 0; i < f.size(); ++i)
        if (!(ratfunc_at_mrat(h2.comp[i], gm) == f[i]))
          fail(ErrorKind::InternalContradiction, "polynomial recomposition failed");
      out.g = gm;
      out.h = h2;
      out.polynomial_certified = true;
    }
    return out;
  }
  fail(ErrorKind::GenericityFailure, "no workable parameter line; tried" + tried.str());
}


namespace {

std::vector<int> vars_present(const MPoly& p) {
  std::vector<int> out;
  for (int i = 0; i < p.nvars(); ++i)
    if (p.degree_in(i) > 0) out.push_back(i);
  return out;
}

MPoly compress_to2(const MPoly& p, int v0, int v1) {
  MPoly out(2);
  for (const auto& [e, c] : p.terms()) out.add_term({e[v0], e[v1]}, c);
  return out;
}

MPoly leading_form(const MPoly& p) {
  int d = p.total_degree();
  MPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    unsigned s = 0;
    for (unsigned u : e) s += u;
    if (static_cast<int>(s) == d) out.add_term(e, c);
  }
  return out;
}

void collect_real_roots(const UPoly& p, std::vector<AlgebraicNumber>& out) {
  if (p.is_zero() || p.is_constant()) return;
  for (auto& [r, m] : isolate_real_roots(p)) out.push_back(r);
}

}  // namespace

std::optional<bool> bivariate_has_real_zero(const MPoly& p) {
  if (p.is_zero()) return true;
  if (p.is_constant()) return false;
  auto used = vars_present(p);
  if (used.size() == 1) {
    UPoly u = mpoly_to_upoly(p, used[0]);
    return count_real_roots_in(u, IntervalDesc::all()) > 0;
  }
  if (used.size() != 2)
    fail(ErrorKind::WrongArity, "real-zero test handles at most two variables");
  MPoly q2 = p.nvars() == 2 ? p : compress_to2(p, used[0], used[1]);
  // A real root of the content in y gives a whole vertical line of zeros.
  MPoly C = mpoly_content_in(q2, 1);
  if (!C.is_constant() && count_real_roots_in(mpoly_to_upoly(C, 0), IntervalDesc::all()) > 0)
    return true;
  MPoly q = mpoly_primitive_in(q2, 1);
  if (q.degree_in(1) == 0) {
    UPoly u = mpoly_to_upoly(q, 0);
    return count_real_roots_in(u, IntervalDesc::all()) > 0;
  }
  // Squarefree in y: same real locus, and the y-discriminant is nonzero.
  MPoly sf = mpoly_exact_div(q, mpoly_gcd(q, q.derivative(1)));
  MPoly D = mpoly_resultant(sf, sf.derivative(1), 1) * sf.coeffs_in(1).back();
  std::vector<AlgebraicNumber> xs;
  if (!D.is_constant()) collect_real_roots(mpoly_to_upoly(D, 0), xs);
  // Every connected component of the real locus projects over a probe, or
  // over a root of D (isolated points and tangency-bounded arcs).
  std::vector<Rat> probes;
  bool irrational_root = false;
  if (xs.empty()) {
    probes.push_back(Rat(0));
  } else {
    probes.push_back(rational_strictly_below(xs.front()));
    for (size_t i = 0; i + 1 < xs.size(); ++i)
      probes.push_back(rational_strictly_between(xs[i], xs[i + 1]));
    probes.push_back(rational_strictly_above(xs.back()));
    for (const auto& r : xs) {
      if (auto v = r.as_rational())
        probes.push_back(*v);
      else
        irrational_root = true;
    }
  }
  for (const Rat& x0 : probes) {
    MPoly fib = sf.eval_partial(0, x0);
    UPoly u = mpoly_to_upoly(fib, 1);
    if (u.is_zero() || count_real_roots_in(u, IntervalDesc::all()) > 0) return true;
  }
  if (irrational_root) return std::nullopt;
  return false;
}

IntervalDesc generator_image_interval(const MRatFunc& g) {
  if (g.is_constant()) fail(ErrorKind::DegenerateConstant, "generator is constant");
  std::vector<int> used = vars_present(g.num());
  for (int v : vars_present(g.den()))
    if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
  std::sort(used.begin(), used.end());
  if (used.size() == 1) {
    int v = used[0];
    UPoly den = mpoly_to_upoly(g.den(), v);
    if (count_real_roots_in(den, IntervalDesc::all()) > 0)
      fail(ErrorKind::Unsupported, "generator has a real pole; its image is not an interval");
    RatFunc r(mpoly_to_upoly(g.num(), v), den);
    auto J = to_interval_desc(image_of(r, IntervalDesc::all()));
    if (!J) fail(ErrorKind::Unsupported, "generator image has an irrational endpoint");
    return *J;
  }
  if (!g.is_poly())
    fail(ErrorKind::Unsupported, "rational generator in several variables");
  MPoly G = g.num() * (Rat(1) / g.den().constant_value());
  if (G.total_degree() % 2 == 1) {
    // Odd degree: surjective along any direction where the leading form
    // survives.
    MPoly L = leading_form(G);
    int n = G.nvars();
    std::uint64_t st = 0x51ab0e1ull;
    for (int attempt = 0; attempt < 500; ++attempt) {
      std::vector<Rat> b(n, Rat(0));
      if (attempt < n) {
        b[attempt] = Rat(1);
      } else if (attempt == n) {
        for (auto& x : b) x = Rat(1);
      } else {
        for (auto& x : b) x = Rat(static_cast<long>(splitmix64(st) % 19) - 9);
      }
      if (L.eval(b) != Rat(0)) return IntervalDesc::all();
    }
    fail(ErrorKind::InternalContradiction, "no direction witnesses the odd leading form");
  }
  if (used.size() != 2)
    fail(ErrorKind::Unsupported,
         "even-degree generator in more than two variables");
  MPoly G2 = G.nvars() == 2 ? G : compress_to2(G, used[0], used[1]);
  // Work in (x, y, t); finite boundary values of the image are critical
  // values (common zero of G-t, Gx, Gy) or asymptotic critical values
  // (degree drop in an elimination projection), both caught below.
  MPoly G3 = lift_var(G2);
  MPoly A = G3 - MPoly::var(3, 2);
  MPoly R1 = mpoly_resultant(A, G3.derivative(1), 1);   // (x, t)
  MPoly R1b = mpoly_resultant(A, G3.derivative(0), 1);  // (x, t)
  MPoly R2 = mpoly_resultant(A, G3.derivative(0), 0);   // (y, t)
  std::vector<AlgebraicNumber> cand;
  auto add_tpoly = [&](const MPoly& tp) {
    if (!tp.is_constant()) collect_real_roots(mpoly_to_upoly(tp, 2), cand);
  };
  MPoly Rc = R1, Rd = R1b;
  MPoly common = mpoly_gcd(Rc, Rd);
  if (!common.is_constant()) {
    Rc = mpoly_exact_div(Rc, common);
    Rd = mpoly_exact_div(Rd, common);
    for (const MPoly& c : common.coeffs_in(0)) add_tpoly(c);
  }
  bool cfree = Rc.degree_in(0) == 0, dfree = Rd.degree_in(0) == 0;
  if (cfree) add_tpoly(Rc);
  if (dfree) add_tpoly(Rd);
  if (!cfree && !dfree) add_tpoly(mpoly_resultant(Rc, Rd, 0));
  for (const MPoly& c : R1.coeffs_in(0)) add_tpoly(c);
  for (const MPoly& c : R2.coeffs_in(1)) add_tpoly(c);
  std::sort(cand.begin(), cand.end(),
            [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return a.compare(b) < 0; });
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
                           return a.compare(b) == 0;
                         }),
             cand.end());
  auto fiber_nonempty = [&](const Rat& v) {
    auto r = bivariate_has_real_zero(G2 - MPoly::constant(2, v));
    if (!r) fail(ErrorKind::Unsupported, "fiber emptiness undecided at a probe value");
    return *r;
  };
  if (cand.empty()) return IntervalDesc::all();
  std::vector<Rat> probes;
  probes.push_back(rational_strictly_below(cand.front()));
  for (size_t i = 0; i + 1 < cand.size(); ++i)
    probes.push_back(rational_strictly_between(cand[i], cand[i + 1]));
  probes.push_back(rational_strictly_above(cand.back()));
  std::vector<bool> ne;
  ne.reserve(probes.size());
  for (const Rat& v : probes) ne.push_back(fiber_nonempty(v));
  int first = -1, last = -1;
  for (size_t i = 0; i < ne.size(); ++i)
    if (ne[i]) {
      if (first < 0) first = static_cast<int>(i);
      last = static_cast<int>(i);
    }
  if (first < 0)
    fail(ErrorKind::InternalContradiction, "no probe value lies in the image");
  for (int i = first; i <= last; ++i)
    if (!ne[i]) fail(ErrorKind::InternalContradiction, "image probe pattern is not an interval");
  IntervalDesc out;
  if (first > 0) {
    auto v = cand[first - 1].as_rational();
    if (!v) fail(ErrorKind::Unsupported, "generator image has an irrational endpoint");
    out.lo = *v;
    out.lo_closed = fiber_nonempty(*v);
  }
  if (last + 1 < static_cast<int>(ne.size())) {
    auto v = cand[last].as_rational();
    if (!v) fail(ErrorKind::Unsupported, "generator image has an irrational endpoint");
    out.hi = *v;
    out.hi_closed = fiber_nonempty(*v);
  }
  out.validate();
  return out;
}

}  // namespace primage
