#include "primage/certificate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "primage/error.hpp"

namespace primage {

NamedConstant NamedConstant::from_algebraic(const std::string& name, const AlgebraicNumber& v) {
  v.refine_below(Rat(1, 1000000));
  NamedConstant c;
  c.name = name;
  if (auto r = v.known_rational()) {
    c.definer = UPoly({-*r, Rat(1)});
    c.lo = *r - Rat(1);
    c.hi = *r + Rat(1);
  } else {
    c.definer = v.definer();
    QInterval iv = v.interval();
    c.lo = iv.lo;
    c.hi = iv.hi;
  }
  c.decimal_approx = v.decimal(12);
  return c;
}

MRat::MRat(MPoly num, MPoly den) : n(std::move(num)), d(std::move(den)) {
  n.check_same(d);
  if (d.is_zero()) fail(ErrorKind::DomainViolation, "rational expression with zero denominator");
  if (n.is_zero()) {
    d = MPoly::constant(n.nvars(), Rat(1));
    return;
  }
  MPoly g = mpoly_gcd(n, d);
  if (!g.is_constant()) {
    n = mpoly_exact_div(n, g);
    d = mpoly_exact_div(d, g);
  }
  // Normalize: integer-primitive denominator with positive leading sign; the
  // scalar moves into the numerator.
  MPoly dn = d.primitive_normalized();
  Rat c = d.terms().rbegin()->second / dn.terms().rbegin()->second;
  n = n * c.inv();
  d = dn;
}

MRat MRat::from_mpoly(MPoly p) {
  int nv = p.nvars();
  return MRat(std::move(p), MPoly::constant(nv, Rat(1)));
}

Rat MRat::eval(const std::vector<Rat>& x) const {
  Rat dv = d.eval(x);
  if (dv.is_zero()) fail(ErrorKind::DomainViolation, "evaluation at a pole");
  return n.eval(x) / dv;
}

double MRat::eval_double(const std::vector<double>& x) const {
  return n.eval_double(x) / d.eval_double(x);
}

std::string MRat::str(const std::vector<std::string>& names) const {
  if (is_polynomial()) {
    Rat c = d.constant_value();
    if (c == Rat(1)) return n.str(names);
    return "(" + n.str(names) + ")/" + c.str();
  }
  return "(" + n.str(names) + ")/(" + d.str(names) + ")";
}

MRat compose_ratfunc_mrat(const RatFunc& f, const MRat& g) {
  int N = f.map_degree();
  int nv = g.nvars();
  if (N <= 0) {
    Rat c = f.num().is_zero() ? Rat(0) : f.num().coeff(0) / f.den().coeff(0);
    return MRat::from_mpoly(MPoly::constant(nv, c));
  }
  std::vector<MPoly> npow(static_cast<size_t>(N) + 1, MPoly(nv));
  std::vector<MPoly> dpow(static_cast<size_t>(N) + 1, MPoly(nv));
  npow[0] = dpow[0] = MPoly::constant(nv, Rat(1));
  for (int i = 1; i <= N; ++i) {
    npow[static_cast<size_t>(i)] = npow[static_cast<size_t>(i - 1)] * g.n;
    dpow[static_cast<size_t>(i)] = dpow[static_cast<size_t>(i - 1)] * g.d;
  }
  auto cleared = [&](const UPoly& u) {
    MPoly acc(nv);
    for (int i = 0; i <= u.degree(); ++i) {
      if (u.coeff(i).is_zero()) continue;
      acc = acc + npow[static_cast<size_t>(i)] * dpow[static_cast<size_t>(N - i)] * u.coeff(i);
    }
    return acc;
  };
  return MRat(cleared(f.num()), cleared(f.den()));
}

std::vector<std::string> CertificateMap::var_names() const {
  std::vector<std::string> names;
  if (source_dim == 1) {
    names.push_back("t");
  } else {
    for (int i = 1; i <= source_dim; ++i) names.push_back("x" + std::to_string(i));
  }
  for (const auto& c : constants) names.push_back(c.name);
  return names;
}

bool CertificateMap::components_polynomial() const {
  return std::all_of(comp.begin(), comp.end(), [](const MRat& c) { return c.is_polynomial(); });
}

std::vector<double> CertificateMap::eval_double(const std::vector<double>& x) const {
  std::vector<double> full(x);
  for (const auto& c : constants) full.push_back(c.to_double());
  std::vector<double> y;
  y.reserve(comp.size());
  for (const auto& c : comp) y.push_back(c.eval_double(full));
  return y;
}

std::vector<Rat> CertificateMap::eval(const std::vector<Rat>& x) const {
  if (!constants.empty())
    fail(ErrorKind::NotInSubfield, "certificate uses named constants; exact evaluation unavailable");
  std::vector<Rat> y;
  y.reserve(comp.size());
  for (const auto& c : comp) y.push_back(c.eval(x));
  return y;
}

std::string CertificateMap::str() const {
  auto names = var_names();
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < comp.size(); ++i) {
    if (i) os << ", ";
    os << comp[i].str(names);
  }
  os << ")";
  for (const auto& c : constants) {
    os << " where " << c.name << " = root of " << c.definer.str() << " in ("
       << c.lo.str() << ", " << c.hi.str() << "), approx. " << c.decimal_approx;
  }
  return os.str();
}

namespace {

// Chart coordinates saturate here; unchart(kChartEdge) is about 1e13, the
// largest parameter magnitude any search will visit.
constexpr double kChartEdge = 1.0 - 1e-13;

double chart(double t) { return t / (1.0 + std::fabs(t)); }
double unchart(double u) { return u / (1.0 - std::fabs(u)); }

bool finite_vec(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Distance between two points after charting each coordinate; sup norm.
double chart_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::fabs(chart(a[i]) - chart(b[i])));
  return d;
}

// |p(y)| scaled by the accumulated term magnitudes: stable residual for
// "p vanishes at y".
double relative_residual(const MPoly& p, const std::vector<double>& y) {
  double acc = 0, mag = 0;
  for (const auto& [e, c] : p.terms()) {
    double t = c.to_double();
    for (size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= y[i];
    acc += t;
    mag += std::fabs(t);
  }
  if (!std::isfinite(acc) || !std::isfinite(mag)) return std::numeric_limits<double>::infinity();
  return std::fabs(acc) / (1.0 + mag);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// A univariate rational map with coefficients lowered to doubles. The
// membership search evaluates the target thousands of times per sample;
// per-call rational-to-double coefficient conversion is hoisted out here.
struct DoubleCurve {
  struct Comp {
    std::vector<double> num, den;
  };
  std::vector<Comp> comp;

  static DoubleCurve of(const AffineRatMap& f) {
    DoubleCurve d;
    d.comp.reserve(f.comp.size());
    for (const auto& c : f.comp) {
      Comp dc;
      for (const auto& q : c.num().coeffs()) dc.num.push_back(q.to_double());
      for (const auto& q : c.den().coeffs()) dc.den.push_back(q.to_double());
      d.comp.push_back(std::move(dc));
    }
    return d;
  }

  // Chart of each component at t; false if any value is non-finite.
  bool eval_chart(double t, std::vector<double>& out) const {
    out.clear();
    for (const auto& c : comp) {
      double n = 0, dn = 0;
      for (auto it = c.num.rbegin(); it != c.num.rend(); ++it) n = n * t + *it;
      for (auto it = c.den.rbegin(); it != c.den.rend(); ++it) dn = dn * t + *it;
      double v = n / dn;
      if (!std::isfinite(v)) return false;
      out.push_back(chart(v));
    }
    return true;
  }
};

// Deterministic grid-zoom minimizer over the chart cube (-1, 1)^k, k <= 2.
// phi must treat non-finite values as large. Returns best chart point.
struct MinResult {
  std::vector<double> u;
  double value;
};

template <typename Phi>
MinResult grid_zoom_min(const Phi& phi, int k, int level0, int zooms,
                        const std::vector<double>* box_lo = nullptr,
                        const std::vector<double>* box_hi = nullptr) {
  const double kEdge = kChartEdge;
  std::vector<double> lo(static_cast<size_t>(k), -kEdge), hi(static_cast<size_t>(k), kEdge);
  // An explicit box avoids plateaus from clamped phi: a minimum basin
  // narrower than the grid spacing next to a clamp boundary is lost.
  if (box_lo)
    for (int a = 0; a < k; ++a)
      lo[static_cast<size_t>(a)] = std::max(-kEdge, (*box_lo)[static_cast<size_t>(a)]);
  if (box_hi)
    for (int a = 0; a < k; ++a)
      hi[static_cast<size_t>(a)] = std::min(kEdge, (*box_hi)[static_cast<size_t>(a)]);
  // Coarse scan, keeping every grid value: nearby branches of the target
  // curve produce competing local minima, so the zoom below is seeded from
  // several well-separated basins rather than the single best cell.
  std::vector<double> coarse;
  std::vector<double> pt(static_cast<size_t>(k));
  const int n0 = level0;
  if (k == 1) {
    coarse.resize(static_cast<size_t>(n0) + 1);
    for (int i = 0; i <= n0; ++i) {
      pt[0] = lo[0] + (hi[0] - lo[0]) * i / n0;
      coarse[static_cast<size_t>(i)] = phi(pt);
    }
  } else {
    coarse.resize((static_cast<size_t>(n0) + 1) * (static_cast<size_t>(n0) + 1));
    for (int i = 0; i <= n0; ++i) {
      pt[0] = lo[0] + (hi[0] - lo[0]) * i / n0;
      for (int j = 0; j <= n0; ++j) {
        pt[1] = lo[1] + (hi[1] - lo[1]) * j / n0;
        coarse[static_cast<size_t>(i) * (static_cast<size_t>(n0) + 1) +
               static_cast<size_t>(j)] = phi(pt);
      }
    }
  }
  std::vector<size_t> order(coarse.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return coarse[a] < coarse[b]; });

  const int kBasins = 5;
  const int kMinCellGap = 4;
  std::vector<std::array<int, 2>> seeds;
  for (size_t idx : order) {
    if (static_cast<int>(seeds.size()) >= kBasins) break;
    if (!std::isfinite(coarse[idx])) break;
    std::array<int, 2> cell{static_cast<int>(idx), 0};
    if (k == 2)
      cell = {static_cast<int>(idx / (static_cast<size_t>(n0) + 1)),
              static_cast<int>(idx % (static_cast<size_t>(n0) + 1))};
    bool separated = true;
    for (const auto& s : seeds) {
      int d = std::max(std::abs(cell[0] - s[0]), std::abs(cell[1] - s[1]));
      if (d < kMinCellGap) { separated = false; break; }
    }
    if (separated) seeds.push_back(cell);
  }
  if (seeds.empty()) seeds.push_back({0, 0});

  MinResult best{std::vector<double>(static_cast<size_t>(k), 0.0),
                 std::numeric_limits<double>::infinity()};
  for (const auto& seed : seeds) {
    MinResult cur{std::vector<double>(static_cast<size_t>(k), 0.0),
                  std::numeric_limits<double>::infinity()};
    std::vector<double> slo(static_cast<size_t>(k)), shi(static_cast<size_t>(k));
    for (int a = 0; a < k; ++a) {
      double step = (hi[static_cast<size_t>(a)] - lo[static_cast<size_t>(a)]) / n0;
      double c = lo[static_cast<size_t>(a)] + step * seed[static_cast<size_t>(a)];
      cur.u[static_cast<size_t>(a)] = c;
      slo[static_cast<size_t>(a)] = std::max(-kEdge, c - 3.0 * step);
      shi[static_cast<size_t>(a)] = std::min(kEdge, c + 3.0 * step);
    }
    cur.value = phi(cur.u);
    int n = (k == 1) ? 400 : 48;
    for (int level = 1; level <= zooms; ++level) {
      if (k == 1) {
        for (int i = 0; i <= n; ++i) {
          pt[0] = slo[0] + (shi[0] - slo[0]) * i / n;
          double v = phi(pt);
          if (v < cur.value) cur = {pt, v};
        }
      } else {
        for (int i = 0; i <= n; ++i) {
          pt[0] = slo[0] + (shi[0] - slo[0]) * i / n;
          for (int j = 0; j <= n; ++j) {
            pt[1] = slo[1] + (shi[1] - slo[1]) * j / n;
            double v = phi(pt);
            if (v < cur.value) cur = {pt, v};
          }
        }
      }
      for (int a = 0; a < k; ++a) {
        double w = (shi[static_cast<size_t>(a)] - slo[static_cast<size_t>(a)]) * 3.0 / n;
        slo[static_cast<size_t>(a)] = std::max(-kEdge, cur.u[static_cast<size_t>(a)] - w);
        shi[static_cast<size_t>(a)] = std::min(kEdge, cur.u[static_cast<size_t>(a)] + w);
      }
    }
    // Per-axis trisection polish.
    for (int round = 0; round < 3; ++round) {
      for (int a = 0; a < k; ++a) {
        double L = std::max(-kEdge, cur.u[static_cast<size_t>(a)] - 1e-3 / (round * 9 + 1));
        double H = std::min(kEdge, cur.u[static_cast<size_t>(a)] + 1e-3 / (round * 9 + 1));
        for (int it = 0; it < 60; ++it) {
          double u1 = L + (H - L) / 3, u2 = H - (H - L) / 3;
          std::vector<double> p1 = cur.u, p2 = cur.u;
          p1[static_cast<size_t>(a)] = u1;
          p2[static_cast<size_t>(a)] = u2;
          double v1 = phi(p1), v2 = phi(p2);
          if (v1 < cur.value) cur = {p1, v1};
          if (v2 < cur.value) cur = {p2, v2};
          if (v1 <= v2) H = u2; else L = u1;
        }
      }
    }
    if (cur.value < best.value) best = cur;
  }
  return best;
}

struct ChartRange {
  double lo, hi;  // chart coordinates of the parameter interval
};

ChartRange chart_range_of(const VerifyTarget& t) {
  double lo = t.lo ? chart(t.lo->to_double()) : -1.0;
  double hi = t.hi ? chart(t.hi->to_double()) : 1.0;
  return {lo, hi};
}

}  // namespace

VerificationReport verify_certificate(const CertificateMap& cert, const VerifyTarget& target,
                                      const VerifyParams& params) {
  VerificationReport rep;
  const int k = cert.source_dim;
  const int m = cert.target_dim();
  if (m != target.f.dimension())
    fail(ErrorKind::WrongDimension, "certificate and target dimensions differ");
  if (k < 1 || k > 2)
    fail(ErrorKind::Unsupported, "verification supports source dimension 1 or 2");

  // ---- membership ----
  // With tolerance, open versus closed interval ends are indistinguishable;
  // membership checks the closure.
  const double tol = params.tol;
  // Parameter-recovery threshold: the preimage search is a numeric
  // minimization, so it gets three orders of magnitude more slack.
  const double confine_tol = 1e3 * tol;
  ChartRange pr = chart_range_of(target);

  // Arc-recovery index: the target curve charted once over the parameter box.
  // Each membership sample asks how close a certificate value is to the arc;
  // the refinement below is seeded from several well-separated coarse basins
  // so that nearby branches (nodes, cusps) cannot capture the search.
  const double box_lo = std::max(pr.lo, -kChartEdge);
  const double box_hi = std::min(pr.hi, kChartEdge);
  const int kCoarseN = 4000;
  const DoubleCurve dcurve = DoubleCurve::of(target.f);
  std::vector<double> tab_u(static_cast<size_t>(kCoarseN) + 1);
  std::vector<double> tab_chart((static_cast<size_t>(kCoarseN) + 1) * static_cast<size_t>(m));
  std::vector<char> tab_ok(static_cast<size_t>(kCoarseN) + 1, 0);
  if (m > 1) {
    std::vector<double> row;
    for (int i = 0; i <= kCoarseN; ++i) {
      double u = box_lo + (box_hi - box_lo) * i / kCoarseN;
      tab_u[static_cast<size_t>(i)] = u;
      if (dcurve.eval_chart(unchart(u), row)) {
        tab_ok[static_cast<size_t>(i)] = 1;
        std::copy(row.begin(), row.end(),
                  tab_chart.begin() + static_cast<size_t>(i) * static_cast<size_t>(m));
      }
    }
  }

  // Distance (chart metric) from charted point cy to f(I); ft is scratch.
  auto arc_param_dist = [&](const std::vector<double>& cy, std::vector<double>& ft) {
    auto phi = [&](double u) {
      double uu = std::min(std::max(u, box_lo), box_hi);
      if (!dcurve.eval_chart(unchart(uu), ft)) return std::numeric_limits<double>::infinity();
      double d = 0;
      for (int a = 0; a < m; ++a)
        d = std::max(d, std::fabs(ft[static_cast<size_t>(a)] - cy[static_cast<size_t>(a)]));
      return d;
    };
    // Any value at or below this settles acceptance; stop refining there.
    const double accept = 0.1 * confine_tol;

    // Coarse pass: minima of blocks of cells, kept as ranked seeds.
    constexpr int kBlock = 4, kTop = 16, kSeeds = 5, kMinGap = 4;
    double top_v[kTop];
    int top_i[kTop];
    int ntop = 0;
    double bv = std::numeric_limits<double>::infinity();
    int bi = -1;
    for (int i = 0; i <= kCoarseN; ++i) {
      if (tab_ok[static_cast<size_t>(i)]) {
        const double* row = &tab_chart[static_cast<size_t>(i) * static_cast<size_t>(m)];
        double d = 0;
        for (int a = 0; a < m; ++a)
          d = std::max(d, std::fabs(row[a] - cy[static_cast<size_t>(a)]));
        if (d < bv) { bv = d; bi = i; }
      }
      if (i % kBlock == kBlock - 1 || i == kCoarseN) {
        if (bi >= 0) {
          int pos = ntop;
          while (pos > 0 && top_v[pos - 1] > bv) --pos;
          if (pos < kTop) {
            int last = std::min(ntop, kTop - 1);
            for (int q = last; q > pos; --q) {
              top_v[q] = top_v[q - 1];
              top_i[q] = top_i[q - 1];
            }
            top_v[pos] = bv;
            top_i[pos] = bi;
            if (ntop < kTop) ++ntop;
          }
        }
        bv = std::numeric_limits<double>::infinity();
        bi = -1;
      }
    }
    if (ntop == 0) return std::numeric_limits<double>::infinity();
    if (top_v[0] <= accept) return top_v[0];

    double best = std::numeric_limits<double>::infinity();
    int used = 0;
    int seed_cell[kSeeds];
    const double spacing = (box_hi - box_lo) / kCoarseN;
    for (int s = 0; s < ntop && used < kSeeds; ++s) {
      bool separated = true;
      for (int q = 0; q < used; ++q)
        if (std::abs(top_i[s] - seed_cell[q]) < kMinGap) { separated = false; break; }
      if (!separated) continue;
      seed_cell[used++] = top_i[s];

      double cu = tab_u[static_cast<size_t>(top_i[s])];
      double cv = top_v[s];
      double slo = std::max(box_lo, cu - 3.0 * spacing);
      double shi = std::min(box_hi, cu + 3.0 * spacing);
      const int n = 400;
      for (int level = 1; level <= 3; ++level) {
        for (int i = 0; i <= n; ++i) {
          double u = slo + (shi - slo) * i / n;
          double v = phi(u);
          if (v < cv) { cv = v; cu = u; }
        }
        double w = (shi - slo) * 3.0 / n;
        slo = std::max(box_lo, cu - w);
        shi = std::min(box_hi, cu + w);
      }
      // Per-axis trisection polish.
      for (int round = 0; round < 3; ++round) {
        double L = std::max(box_lo, cu - 1e-3 / (round * 9 + 1));
        double H = std::min(box_hi, cu + 1e-3 / (round * 9 + 1));
        for (int it = 0; it < 60; ++it) {
          double u1 = L + (H - L) / 3, u2 = H - (H - L) / 3;
          double v1 = phi(u1), v2 = phi(u2);
          if (v1 < cv) { cv = v1; cu = u1; }
          if (v2 < cv) { cv = v2; cu = u2; }
          if (v1 <= v2) H = u2;
          else L = u1;
        }
      }
      best = std::min(best, cv);
      if (best <= accept) break;
    }
    return best;
  };

  int n_samples = std::max(params.samples, 1);
  int jobs = std::max(params.jobs, 1);
  struct MemberChunk {
    bool ok = true;
    double max_res = 0;
    int done = 0;
    std::string note;
  };
  auto member_worker = [&](int j) {
    MemberChunk ch;
    std::mt19937_64 rng(splitmix64(params.seed ^ (0x5eedull + static_cast<std::uint64_t>(j))));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> cy, ft;
    int lo_i = static_cast<int>(static_cast<long long>(n_samples) * j / jobs);
    int hi_i = static_cast<int>(static_cast<long long>(n_samples) * (j + 1) / jobs);
    for (int i = lo_i; i < hi_i; ++i) {
      std::vector<double> x(static_cast<size_t>(k));
      for (int a = 0; a < k; ++a) {
        double u = uni(rng);
        // Alternate moderate and heavy-tail draws.
        x[static_cast<size_t>(a)] = (i % 2 == 0) ? 50.0 * u : unchart(0.999 * u);
      }
      auto y = cert.eval_double(x);
      ++ch.done;
      if (!finite_vec(y)) {
        ch.ok = false;
        ch.note = "certificate value not finite";
        ch.max_res = std::numeric_limits<double>::infinity();
        continue;
      }
      if (m == 1) {
        double v = y[0];
        double res = 0;
        if (!target.image_lo_unbounded)
          res = std::max(res, (target.image_lo - v) / (1.0 + std::fabs(v)));
        if (!target.image_hi_unbounded)
          res = std::max(res, (v - target.image_hi) / (1.0 + std::fabs(v)));
        res = std::max(res, 0.0);
        ch.max_res = std::max(ch.max_res, res);
        if (res > tol) {
          ch.ok = false;
          if (ch.note.empty()) ch.note = "value outside the image interval";
        }
      } else {
        double res = 0;
        for (const auto& eq : target.implicit_eqs)
          res = std::max(res, relative_residual(eq, y));
        ch.max_res = std::max(ch.max_res, res);
        if (res > tol) {
          ch.ok = false;
          if (ch.note.empty()) ch.note = "implicit equation residual too large";
          continue;
        }
        cy.clear();
        for (double v : y) cy.push_back(chart(v));
        double pd = arc_param_dist(cy, ft);
        if (pd > confine_tol) {
          ch.ok = false;
          if (ch.note.empty()) ch.note = "certificate point off the parametrized arc";
        }
      }
    }
    return ch;
  };

  std::vector<std::future<MemberChunk>> mfut;
  for (int j = 1; j < jobs; ++j)
    mfut.push_back(std::async(std::launch::async, member_worker, j));
  MemberChunk agg = member_worker(0);
  for (auto& f : mfut) {
    MemberChunk ch = f.get();
    agg.ok = agg.ok && ch.ok;
    agg.max_res = std::max(agg.max_res, ch.max_res);
    agg.done += ch.done;
    if (agg.note.empty()) agg.note = ch.note;
  }
  rep.membership_ok = agg.ok;
  rep.membership_samples = agg.done;
  rep.max_membership_residual = agg.max_res;
  std::string detail = agg.note;

  // ---- coverage ----
  // Epsilon-net over the parameter interval in the bounded chart, plus tail
  // probes on unbounded sides.
  std::vector<double> targets_t;
  {
    double lo = pr.lo, hi = pr.hi;
    // Step half a cell inside open finite ends (and fully inside infinite
    // ends, where the chart endpoint itself is unreachable).
    double step = params.net;
    double a = lo + ((target.lo && target.lo_closed) ? 0.0 : step / 2);
    double b = hi - ((target.hi && target.hi_closed) ? 0.0 : step / 2);
    if (a > b) a = b = (lo + hi) / 2;
    int cells = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
    cells = std::min(cells, 400000);
    for (int i = 0; i <= cells; ++i)
      targets_t.push_back(unchart(a + (b - a) * i / cells));
    if (!target.lo) {
      for (double t = -10; t >= -1e8; t *= 10) targets_t.push_back(t);
    }
    if (!target.hi) {
      for (double t = 10; t <= 1e8; t *= 10) targets_t.push_back(t);
    }
  }

  // Charted probe points; a non-finite probe is unusable (e.g. adjacent to an
  // allowed pole) and counts as hit.
  const size_t ncells = targets_t.size();
  std::vector<char> hit(ncells, 0);
  std::vector<std::vector<double>> cell_chart(ncells);
  for (size_t i = 0; i < ncells; ++i) {
    auto yg = target.f.eval_double(targets_t[i]);
    if (!finite_vec(yg)) {
      hit[i] = 1;
      continue;
    }
    for (auto& v : yg) v = chart(v);
    cell_chart[i] = std::move(yg);
  }

  // Screening: a deterministic sample stream marks every cell it lands in;
  // only the leftovers get the expensive preimage search.
  {
    std::mt19937_64 rng(splitmix64(params.seed ^ 0xc07e11ull));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    long long budget = static_cast<long long>(ncells) * n_samples;
    int n_screen = budget <= 200000000LL
                       ? n_samples
                       : static_cast<int>(200000000LL / static_cast<long long>(std::max<size_t>(ncells, 1)));
    std::vector<double> x(static_cast<size_t>(k));
    for (int i = 0; i < n_screen; ++i) {
      for (int a = 0; a < k; ++a) {
        double u = uni(rng);
        x[static_cast<size_t>(a)] = (i % 2 == 0) ? 50.0 * u : unchart(0.999 * u);
      }
      auto y = cert.eval_double(x);
      if (!finite_vec(y)) continue;
      for (auto& v : y) v = chart(v);
      for (size_t c = 0; c < ncells; ++c) {
        if (hit[c]) continue;
        double d = 0;
        for (size_t a = 0; a < y.size(); ++a)
          d = std::max(d, std::fabs(y[a] - cell_chart[c][a]));
        if (d <= params.net) hit[c] = 1;
      }
    }
  }

  std::vector<size_t> pending;
  for (size_t i = 0; i < ncells; ++i)
    if (!hit[i]) pending.push_back(i);

  struct CoverChunk {
    int hit = 0;
    std::string note;
  };
  auto cover_worker = [&](int j) {
    CoverChunk ch;
    size_t n = pending.size();
    size_t lo_i = n * static_cast<size_t>(j) / static_cast<size_t>(jobs);
    size_t hi_i = n * static_cast<size_t>(j + 1) / static_cast<size_t>(jobs);
    for (size_t i = lo_i; i < hi_i; ++i) {
      const std::vector<double>& yg = cell_chart[pending[i]];
      auto phi = [&](const std::vector<double>& u) {
        std::vector<double> x(static_cast<size_t>(k));
        for (int a = 0; a < k; ++a) x[static_cast<size_t>(a)] = unchart(u[static_cast<size_t>(a)]);
        auto y = cert.eval_double(x);
        if (!finite_vec(y)) return std::numeric_limits<double>::infinity();
        double d = 0;
        for (size_t a = 0; a < y.size(); ++a)
          d = std::max(d, std::fabs(chart(y[a]) - yg[a]));
        return d;
      };
      MinResult r = grid_zoom_min(phi, k, k == 1 ? 4000 : 128, 3);
      if (r.value > params.net) {
        // One adaptive retry with a denser initial grid.
        r = grid_zoom_min(phi, k, k == 1 ? 16000 : 384, 4);
      }
      if (r.value <= params.net) {
        ++ch.hit;
      } else if (ch.note.empty()) {
        std::ostringstream os;
        os << "coverage miss near parameter " << targets_t[pending[i]];
        ch.note = os.str();
      }
    }
    return ch;
  };

  std::vector<std::future<CoverChunk>> cfut;
  for (int j = 1; j < jobs; ++j)
    cfut.push_back(std::async(std::launch::async, cover_worker, j));
  CoverChunk cagg = cover_worker(0);
  for (auto& f : cfut) {
    CoverChunk ch = f.get();
    cagg.hit += ch.hit;
    if (cagg.note.empty()) cagg.note = ch.note;
  }
  int total_hit = cagg.hit;
  for (size_t i = 0; i < ncells; ++i)
    if (hit[i]) ++total_hit;
  rep.coverage_cells_total = static_cast<int>(ncells);
  rep.coverage_cells_hit = total_hit;
  rep.coverage_ok = (total_hit == static_cast<int>(ncells));
  if (detail.empty()) detail = cagg.note;
  if (target.implicit_superset && !detail.empty())
    detail += "; implicit equations cut out a superset";
  else if (target.implicit_superset)
    detail = "implicit equations cut out a superset";
  rep.detail = detail;
  return rep;
}

}  // namespace primage
