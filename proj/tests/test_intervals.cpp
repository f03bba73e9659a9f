#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "primage/error.hpp"
#include "primage/intervals.hpp"
#include "testutil.hpp"

using namespace primage;
using namespace testutil;

namespace {

// Finite limit of f at t -> +-infinity; NaN when the map is unbounded there.
double limit_at_inf(const RatFunc& f) {
  if (f.is_zero()) return 0.0;
  int dn = f.num().degree(), dd = f.den().degree();
  if (dn < dd) return 0.0;
  if (dn == dd) return (f.num().lc() / f.den().lc()).to_double();
  return std::numeric_limits<double>::quiet_NaN();
}

double clampd(double t, double lo, double hi) { return std::min(hi, std::max(lo, t)); }

// Local extremum near center: recentering grid search with shrinking window,
// every probe clamped into the sampling domain.
double zoom_extreme(const RatFunc& f, double center, double width, bool want_max,
                    double dom_lo, double dom_hi) {
  double c = clampd(center, dom_lo, dom_hi);
  double best = f.eval_double(c), w = width;
  for (int round = 0; round < 60; ++round) {
    double bc = c;
    for (int i = 0; i <= 16; ++i) {
      double t = clampd(c - w + (2.0 * w) * i / 16.0, dom_lo, dom_hi);
      double y = f.eval_double(t);
      if (std::isfinite(y) && (want_max ? y > best : y < best)) {
        best = y;
        bc = t;
      }
    }
    c = bc;
    w *= 0.35;
  }
  return best;
}

std::vector<double> probe_points(const IntervalDesc& I) {
  std::vector<double> ts;
  double a = I.lo ? I.lo->to_double() : 0.0;
  double b = I.hi ? I.hi->to_double() : 0.0;
  if (I.bounded()) {
    const int N = 6000;
    for (int i = 0; i <= N; ++i) ts.push_back(a + (b - a) * i / N);
    return ts;
  }
  double anchor = I.lo ? a : (I.hi ? b : 0.0);
  ts.push_back(anchor);
  for (double g = 1e-6; g <= 1.02e6; g *= 1.02) {
    if (!I.hi) ts.push_back(anchor + g);
    if (!I.lo) ts.push_back(anchor - g);
  }
  for (int i = 1; i <= 2000; ++i) {
    if (!I.hi) ts.push_back(anchor + 20.0 * i / 2000.0);
    if (!I.lo) ts.push_back(anchor - 20.0 * i / 2000.0);
  }
  return ts;
}

// Numeric min or max of f over I: coarse probes, then zoom refinement around
// the five best candidates; the limit at infinity joins on unbounded domains.
double oracle_extreme(const RatFunc& f, const IntervalDesc& I, const std::vector<double>& ts,
                      bool want_max) {
  std::vector<std::pair<double, double>> vals;  // (value, t)
  vals.reserve(ts.size());
  for (double t : ts) {
    double y = f.eval_double(t);
    if (std::isfinite(y)) vals.emplace_back(y, t);
  }
  REQUIRE(!vals.empty());
  std::sort(vals.begin(), vals.end());
  if (want_max) std::reverse(vals.begin(), vals.end());

  double dom_lo = I.lo ? I.lo->to_double() : -2e6;
  double dom_hi = I.hi ? I.hi->to_double() : 2e6;
  double best = vals[0].first;
  for (size_t i = 0; i < vals.size() && i < 5; ++i) {
    double t0 = vals[i].second;
    double w = std::max(1e-3, 0.05 * std::fabs(t0));
    if (I.bounded()) w = std::max(w, (dom_hi - dom_lo) / 1000.0);
    double y = zoom_extreme(f, t0, w, want_max, dom_lo, dom_hi);
    if (want_max ? y > best : y < best) best = y;
  }
  if (I.unbounded()) {
    double L = limit_at_inf(f);
    if (std::isfinite(L) && (want_max ? L > best : L < best)) best = L;
  }
  return best;
}

double slack(double v) { return 1e-6 * std::max(1.0, std::fabs(v)); }

void check_image_against_oracle(const RatFunc& f, const IntervalDesc& I) {
  ImageInterval J = image_of(f, I);
  std::vector<double> ts = probe_points(I);

  double probe_min = std::numeric_limits<double>::infinity();
  double probe_max = -std::numeric_limits<double>::infinity();
  int below = 0, above = 0;
  for (double t : ts) {
    double y = f.eval_double(t);
    if (!std::isfinite(y)) continue;
    probe_min = std::min(probe_min, y);
    probe_max = std::max(probe_max, y);
    if (!J.lo.infinite && y < J.lo.v.to_double() - slack(J.lo.v.to_double())) ++below;
    if (!J.hi.infinite && y > J.hi.v.to_double() + slack(J.hi.v.to_double())) ++above;
  }
  CHECK(below == 0);
  CHECK(above == 0);
  if (J.lo.infinite) {
    CHECK(probe_min <= -1e3);
  } else {
    double lov = J.lo.v.to_double();
    CHECK(std::fabs(oracle_extreme(f, I, ts, false) - lov) <= slack(lov));
  }
  if (J.hi.infinite) {
    CHECK(probe_max >= 1e3);
  } else {
    double hiv = J.hi.v.to_double();
    CHECK(std::fabs(oracle_extreme(f, I, ts, true) - hiv) <= slack(hiv));
  }
}

RatFunc rf(std::initializer_list<Rat> num, std::initializer_list<Rat> den) {
  return RatFunc(UPoly(num), UPoly(den));
}

}  // namespace

TEST_CASE("image endpoints agree with a refined sampling oracle") {
  auto g = rng_for(301);
  for (int i = 0; i < 100; ++i) {
    RatFunc f = rand_ratfunc(g, 6);
    IntervalDesc I = rand_interval(g);
    CAPTURE(i);
    CAPTURE(f.str());
    CAPTURE(I.str());
    check_image_against_oracle(f, I);
  }
}

TEST_CASE("image endpoint examples are exact") {
  UPoly t = UPoly::variable();
  {
    ImageInterval J = image_of(RatFunc::from_poly(t * t), IntervalDesc::all());
    REQUIRE(!J.lo.infinite);
    CHECK(*J.lo.rational() == Rat(0));
    CHECK(J.lo.attained);
    CHECK(J.hi.infinite);
  }
  {
    ImageInterval J = image_of(rf({Rat(1)}, {Rat(1), Rat(0), Rat(1)}), IntervalDesc::all());
    CHECK(*J.lo.rational() == Rat(0));
    CHECK(!J.lo.attained);
    CHECK(*J.hi.rational() == Rat(1));
    CHECK(J.hi.attained);
  }
  {
    RatFunc f = rf({Rat(0), Rat(1)}, {Rat(1), Rat(0), Rat(1)}) + RatFunc::constant(Rat(1, 2));
    ImageInterval J = image_of(f, IntervalDesc::all());
    CHECK(*J.lo.rational() == Rat(0));
    CHECK(J.lo.attained);
    CHECK(*J.hi.rational() == Rat(1));
    CHECK(J.hi.attained);
  }
  {
    // Interior minimum, open sup end: t^2 on (-1, 1) gives [0, 1).
    ImageInterval J = image_of(RatFunc::from_poly(t * t), IntervalDesc::open(Rat(-1), Rat(1)));
    CHECK(*J.lo.rational() == Rat(0));
    CHECK(J.lo.attained);
    CHECK(*J.hi.rational() == Rat(1));
    CHECK(!J.hi.attained);
  }
  {
    // Critical value ties the endpoint values: t^3 - 3t on [-2, 2].
    RatFunc f = RatFunc::from_poly(UPoly({Rat(0), Rat(-3), Rat(0), Rat(1)}));
    ImageInterval J = image_of(f, IntervalDesc::closed(Rat(-2), Rat(2)));
    CHECK(*J.lo.rational() == Rat(-2));
    CHECK(J.lo.attained);
    CHECK(*J.hi.rational() == Rat(2));
    CHECK(J.hi.attained);
  }
  {
    // Irrational critical value: min of t^3 - t on [0, 1] is -2*sqrt(3)/9.
    RatFunc f = RatFunc::from_poly(UPoly({Rat(0), Rat(-1), Rat(0), Rat(1)}));
    ImageInterval J = image_of(f, IntervalDesc::closed(Rat(0), Rat(1)));
    REQUIRE(!J.lo.infinite);
    CHECK(!J.lo.rational().has_value());
    CHECK(J.lo.v == AlgebraicNumber(UPoly({Rat(-4), Rat(0), Rat(27)}), Rat(-1), Rat(0)));
    CHECK(J.lo.attained);
    CHECK(*J.hi.rational() == Rat(0));
    CHECK(J.hi.attained);
  }
  {
    ImageInterval J =
        image_of(RatFunc::from_poly(t * t + UPoly::constant(Rat(1))), IntervalDesc::point(Rat(2)));
    CHECK(J.is_singleton());
    CHECK(*J.lo.rational() == Rat(5));
  }
}

TEST_CASE("interval containment queries") {
  ImageInterval J = image_of(rf({Rat(1)}, {Rat(1), Rat(0), Rat(1)}), IntervalDesc::all());
  CHECK(J.contains(Rat(1)));
  CHECK(J.contains(Rat(1, 2)));
  CHECK(!J.contains(Rat(0)));
  CHECK(!J.contains(Rat(2)));
}

TEST_CASE("denominator roots respect the pole policy") {
  RatFunc inv = rf({Rat(1)}, {Rat(0), Rat(1)});  // 1/t
  IntervalDesc I{Rat(0), Rat(1), false, true};   // (0, 1]
  CHECK(kind_of([&] { image_of(inv, I); }) == ErrorKind::DomainViolation);
  ImageInterval J = image_of(inv, I, PolePolicy::kAllowOpenEnds);
  CHECK(*J.lo.rational() == Rat(1));
  CHECK(J.lo.attained);
  CHECK(J.hi.infinite);
  // An interior pole is rejected under both policies.
  IntervalDesc W = IntervalDesc::closed(Rat(-1), Rat(1));
  CHECK(kind_of([&] { image_of(inv, W); }) == ErrorKind::DomainViolation);
  CHECK(kind_of([&] { image_of(inv, W, PolePolicy::kAllowOpenEnds); }) ==
        ErrorKind::DomainViolation);
}

TEST_CASE("shape classification matches the invariant table") {
  struct Row {
    IntervalDesc I;
    IntervalShape shape;
    Nval p, r;
    bool degenerate;
  };
  const Nval inf = Nval::infinite;
  std::vector<Row> rows = {
      {IntervalDesc::all(), IntervalShape::All, Nval::one, Nval::one, false},
      {IntervalDesc::point(Rat(7, 3)), IntervalShape::Singleton, Nval::one, Nval::one, true},
      {IntervalDesc::point(Rat(-4)), IntervalShape::Singleton, Nval::one, Nval::one, true},
      {IntervalDesc::ray_up(Rat(0), true), IntervalShape::ClosedRayUp, Nval::one, Nval::one, false},
      {IntervalDesc::ray_up(Rat(-9, 2), true), IntervalShape::ClosedRayUp, Nval::one, Nval::one,
       false},
      {IntervalDesc::ray_down(Rat(1), true), IntervalShape::ClosedRayDown, Nval::one, Nval::one,
       false},
      {IntervalDesc::ray_down(Rat(5, 4), true), IntervalShape::ClosedRayDown, Nval::one, Nval::one,
       false},
      {IntervalDesc::ray_up(Rat(0), false), IntervalShape::OpenRayUp, Nval::two, Nval::two, false},
      {IntervalDesc::ray_up(Rat(13, 6), false), IntervalShape::OpenRayUp, Nval::two, Nval::two,
       false},
      {IntervalDesc::ray_down(Rat(0), false), IntervalShape::OpenRayDown, Nval::two, Nval::two,
       false},
      {IntervalDesc::ray_down(Rat(-2, 7), false), IntervalShape::OpenRayDown, Nval::two, Nval::two,
       false},
      {IntervalDesc::closed(Rat(0), Rat(1)), IntervalShape::ClosedBounded, inf, Nval::one, false},
      {IntervalDesc::closed(Rat(-3, 2), Rat(-1, 3)), IntervalShape::ClosedBounded, inf, Nval::one,
       false},
      {IntervalDesc::open(Rat(0), Rat(1)), IntervalShape::OpenBounded, inf, Nval::two, false},
      {IntervalDesc::open(Rat(2), Rat(11, 4)), IntervalShape::OpenBounded, inf, Nval::two, false},
      {{Rat(0), Rat(1), false, true}, IntervalShape::HalfOpenLo, inf, Nval::one, false},
      {{Rat(-5), Rat(1, 2), false, true}, IntervalShape::HalfOpenLo, inf, Nval::one, false},
      {{Rat(0), Rat(1), true, false}, IntervalShape::HalfOpenHi, inf, Nval::one, false},
      {{Rat(3, 8), Rat(2), true, false}, IntervalShape::HalfOpenHi, inf, Nval::one, false},
  };
  for (const auto& row : rows) {
    CAPTURE(row.I.str());
    CHECK(shape_of(row.I) == row.shape);
    IntervalClass c = classify_interval(row.I);
    CHECK(c.p == row.p);
    CHECK(c.r == row.r);
    CHECK(c.shape == row.shape);
    CHECK(c.degenerate == row.degenerate);
    // Structural constraints on the invariant pair.
    CHECK(static_cast<int>(c.r) <= static_cast<int>(c.p));
    CHECK(!(c.r == Nval::one && c.p == Nval::two));
  }
}

TEST_CASE("interval certificates recompose to the exact interval") {
  std::vector<IntervalDesc> shapes = {
      IntervalDesc::all(),
      IntervalDesc::point(Rat(5, 3)),
      IntervalDesc::point(Rat(-2)),
      IntervalDesc::ray_up(Rat(1, 2), true),
      IntervalDesc::ray_up(Rat(-7, 2), true),
      IntervalDesc::ray_down(Rat(3), true),
      IntervalDesc::ray_down(Rat(-1, 4), true),
      IntervalDesc::ray_up(Rat(0), false),
      IntervalDesc::ray_up(Rat(9, 4), false),
      IntervalDesc::ray_down(Rat(0), false),
      IntervalDesc::ray_down(Rat(-5, 2), false),
      IntervalDesc::closed(Rat(-1), Rat(2)),
      IntervalDesc::closed(Rat(1, 3), Rat(1, 2)),
      IntervalDesc::open(Rat(0), Rat(1)),
      IntervalDesc::open(Rat(-3, 2), Rat(7, 4)),
      {Rat(0), Rat(1), false, true},
      {Rat(-2), Rat(5, 2), false, true},
      {Rat(0), Rat(1), true, false},
      {Rat(1, 5), Rat(8, 3), true, false},
  };
  for (const auto& I : shapes) {
    CAPTURE(I.str());
    IntervalClass cls = classify_interval(I);
    for (bool polykind : {false, true}) {
      Nval n = polykind ? cls.p : cls.r;
      if (polykind && n == Nval::infinite) {
        CHECK(kind_of([&] { certificate_for_interval(I, true); }) ==
              ErrorKind::NotAPolynomialImage);
        continue;
      }
      CertificateMap cert = certificate_for_interval(I, polykind);
      CHECK(cert.kind == (polykind ? "polynomial" : "regular"));
      CHECK(cert.constants.empty());
      CHECK(cert.target_dim() == 1);
      CHECK(cert.source_dim == (n == Nval::one ? 1 : 2));
      if (polykind) CHECK(cert.components_polynomial());
      if (cert.source_dim == 1) {
        RatFunc g(mpoly_to_upoly(cert.comp[0].n, 0), mpoly_to_upoly(cert.comp[0].d, 0));
        ImageInterval J = image_of(g, IntervalDesc::all());
        auto D = to_interval_desc(J);
        REQUIRE(D.has_value());
        CHECK(D->lo == I.lo);
        CHECK(D->hi == I.hi);
        CHECK(D->lo_closed == I.lo_closed);
        CHECK(D->hi_closed == I.hi_closed);
      } else {
        AffineRatMap id;
        id.comp.push_back(RatFunc::variable());
        VerifyParams vp;
        vp.seed = 11;
        vp.samples = 10000;
        vp.tol = 1e-9;
        vp.net = 1e-3;
        VerificationReport rep = verify_certificate(cert, target_for(id, I), vp);
        CHECK(rep.membership_ok);
        CHECK(rep.coverage_ok);
      }
    }
  }
}

TEST_CASE("certificates carry named constants for irrational endpoints") {
  RatFunc f = RatFunc::from_poly(UPoly({Rat(0), Rat(-1), Rat(0), Rat(1)}));
  ImageInterval J = image_of(f, IntervalDesc::closed(Rat(0), Rat(1)));
  CertificateMap cert = certificate_for_shape(J, false);
  CHECK(cert.source_dim == 1);
  REQUIRE(cert.constants.size() == 1);
  CHECK(cert.nvars() == 2);
  double c = cert.constants[0].to_double();
  CHECK(std::fabs(c - (-0.3849001794597505)) < 1e-12);
  // t = -1 lands on the lower endpoint, t = 1 on the upper; constant values
  // are bound by the map itself.
  CHECK(std::fabs(cert.eval_double({-1.0})[0] - c) < 1e-15);
  CHECK(std::fabs(cert.eval_double({1.0})[0] - 0.0) < 1e-15);
  for (double t : {-3.0, -0.5, 0.0, 0.25, 2.0, 40.0}) {
    double y = cert.eval_double({t})[0];
    CHECK(y >= c - 1e-12);
    CHECK(y <= 0.0 + 1e-12);
  }
}

TEST_CASE("unbounded closed certificates absorb affine reparametrization") {
  std::vector<IntervalDesc> shapes = {IntervalDesc::all(), IntervalDesc::ray_up(Rat(2), true),
                                      IntervalDesc::ray_down(Rat(-3, 2), true)};
  std::vector<std::pair<Rat, Rat>> aff = {{Rat(2), Rat(3)}, {Rat(-1, 2), Rat(1, 5)},
                                          {Rat(7), Rat(0)}};
  for (const auto& I : shapes) {
    CertificateMap cert = certificate_for_interval(I, false);
    REQUIRE(cert.source_dim == 1);
    RatFunc g(mpoly_to_upoly(cert.comp[0].n, 0), mpoly_to_upoly(cert.comp[0].d, 0));
    for (const auto& [a, b] : aff) {
      RatFunc h = g.compose(RatFunc::from_poly(UPoly({b, a})));
      ImageInterval J = image_of(h, IntervalDesc::all());
      auto D = to_interval_desc(J);
      REQUIRE(D.has_value());
      CHECK(D->lo == I.lo);
      CHECK(D->hi == I.hi);
      CHECK(D->lo_closed == I.lo_closed);
      CHECK(D->hi_closed == I.hi_closed);
    }
  }
}

TEST_CASE("postcomposing with an affine map transforms the image ends") {
  RatFunc f = RatFunc::from_poly(UPoly({Rat(0), Rat(0), Rat(1)}));
  IntervalDesc I = IntervalDesc::closed(Rat(1), Rat(3));
  RatFunc g = f * Rat(2) + RatFunc::constant(Rat(5));
  ImageInterval J = image_of(g, I);
  CHECK(*J.lo.rational() == Rat(7));
  CHECK(*J.hi.rational() == Rat(23));
  RatFunc neg = -f;
  ImageInterval K = image_of(neg, I);
  CHECK(*K.lo.rational() == Rat(-9));
  CHECK(*K.hi.rational() == Rat(-1));
}

TEST_CASE("real root counting inside intervals") {
  UPoly p = UPoly({Rat(-1), Rat(1)}) * UPoly({Rat(-2), Rat(1)}) * UPoly({Rat(-5), Rat(1)});
  CHECK(count_real_roots_in(p, IntervalDesc::all()) == 3);
  CHECK(count_real_roots_in(p, IntervalDesc{Rat(1), Rat(5), false, true}) == 2);
  CHECK(count_real_roots_in(p, IntervalDesc{Rat(1), Rat(5), true, false}) == 2);
  CHECK(count_real_roots_in(p, IntervalDesc::closed(Rat(1), Rat(5))) == 3);
  CHECK(count_real_roots_in(p, IntervalDesc::open(Rat(1), Rat(5))) == 1);
  CHECK(count_real_roots_in(p, IntervalDesc::point(Rat(2))) == 1);
  CHECK(count_real_roots_in(p, IntervalDesc::point(Rat(3))) == 0);
  CHECK(!has_real_root_in(UPoly({Rat(1), Rat(0), Rat(1)}), IntervalDesc::all()));
}

TEST_CASE("interval descriptions embed and convert back") {
  std::vector<IntervalDesc> shapes = {
      IntervalDesc::all(),
      IntervalDesc::point(Rat(2)),
      IntervalDesc::ray_up(Rat(-1), true),
      IntervalDesc::ray_down(Rat(4, 3), false),
      IntervalDesc::closed(Rat(0), Rat(1)),
      IntervalDesc::open(Rat(-2), Rat(2)),
      {Rat(0), Rat(7, 2), false, true},
      {Rat(-1, 3), Rat(0), true, false},
  };
  for (const auto& I : shapes) {
    auto D = to_interval_desc(image_interval_of_desc(I));
    REQUIRE(D.has_value());
    CHECK(D->lo == I.lo);
    CHECK(D->hi == I.hi);
    CHECK(D->lo_closed == I.lo_closed);
    CHECK(D->hi_closed == I.hi_closed);
  }
}
