#include <algorithm>
#include <utility>
#include <vector>

#include "doctest.h"
#include "primage/curve.hpp"
#include "primage/error.hpp"
#include "testutil.hpp"

using namespace primage;
using namespace testutil;

namespace {

AffineRatMap mk(std::vector<RatFunc> comps) {
  AffineRatMap f;
  f.comp = std::move(comps);
  return f;
}

RatFunc poly(std::initializer_list<Rat> asc) { return RatFunc::from_poly(UPoly(asc)); }

AffineRatMap cusp_map() {
  return mk({poly({Rat(0), Rat(0), Rat(1)}), poly({Rat(0), Rat(0), Rat(0), Rat(1)})});
}

AffineRatMap circle_map() {
  UPoly den({Rat(1), Rat(0), Rat(1)});
  return mk({RatFunc(UPoly({Rat(0), Rat(2)}), den), RatFunc(UPoly({Rat(1), Rat(0), Rat(-1)}), den)});
}

AffineRatMap witch_graph() {
  return mk({RatFunc::variable(), RatFunc(UPoly::constant(Rat(1)), UPoly({Rat(1), Rat(0), Rat(1)}))});
}

// Proper by construction: the first component is the identity.
AffineRatMap identity_first(std::mt19937_64& g, int dim, int max_deg) {
  AffineRatMap f;
  f.comp.push_back(RatFunc::variable());
  for (int i = 1; i < dim; ++i) f.comp.push_back(rand_ratfunc(g, max_deg));
  return f;
}

IntervalDesc affine_image_interval(const IntervalDesc& J, const Rat& a, const Rat& b) {
  auto shift = [&](const std::optional<Rat>& x) -> std::optional<Rat> {
    if (!x) return std::nullopt;
    return a * *x + b;
  };
  IntervalDesc K;
  if (a > Rat(0)) {
    K = {shift(J.lo), shift(J.hi), J.lo_closed, J.hi_closed};
  } else {
    K = {shift(J.hi), shift(J.lo), J.hi_closed, J.lo_closed};
  }
  return K;
}

using DefKey = std::pair<std::vector<Rat>, int>;

std::vector<DefKey> sorted_deficiency(const Classification& c) {
  std::vector<DefKey> v;
  for (const auto& d : c.closure_deficiency) v.emplace_back(d.q, d.branch_count);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("planted inner factors are recovered exactly") {
  auto g = rng_for(401);
  std::uniform_int_distribution<int> pick(0, 3), dim(2, 3), ddeg(1, 3);
  int done = 0;
  while (done < 30) {
    AffineRatMap outer;
    switch (pick(g)) {
      case 0: outer = cusp_map(); break;
      case 1: outer = circle_map(); break;
      case 2: outer = witch_graph(); break;
      default: outer = identity_first(g, dim(g), 3); break;
    }
    RatFunc inner = rand_ratfunc(g, ddeg(g));
    if (inner.is_constant()) continue;
    int d = inner.map_degree();
    AffineRatMap f = outer.compose_inner(inner);
    CAPTURE(done);
    CAPTURE(outer.str());
    CAPTURE(inner.str());
    CHECK(properness_degree(f) == d);
    ProperParam mp = make_proper(f);
    CHECK(mp.degree == d);
    CHECK(mp.inner.map_degree() == d);
    CHECK(properness_degree(mp.outer) == 1);
    CHECK(map_equal(mp.outer.compose_inner(mp.inner), f));
    ++done;
  }
}

TEST_CASE("parameter preimages of smooth points are singletons") {
  auto g = rng_for(402);
  std::uniform_int_distribution<int> dim(2, 3);
  for (int i = 0; i < 20; ++i) {
    AffineRatMap f = identity_first(g, dim(g), 4);
    Rat t0 = rand_small_rat(g, 8, 3);
    UPoly fiber = param_preimage(f, f.eval(t0));
    CHECK(fiber == UPoly({-t0, Rat(1)}));
  }
  // Doubling the parameter doubles the generic fiber.
  AffineRatMap f2 = cusp_map().compose_inner(poly({Rat(0), Rat(0), Rat(1)}));
  for (const Rat& t0 : {Rat(1), Rat(3, 2), Rat(-2)}) {
    UPoly fiber = param_preimage(f2, f2.eval(t0));
    CHECK(fiber == UPoly({-(t0 * t0), Rat(0), Rat(1)}));
  }
  CHECK(kind_of([&] { param_preimage(mk({poly({Rat(5)})}), {Rat(5)}); }) ==
        ErrorKind::DegenerateConstant);
  CHECK(kind_of([&] { param_preimage(cusp_map(), {Rat(1)}); }) == ErrorKind::WrongDimension);
}

TEST_CASE("structure over the hyperplane at infinity") {
  {
    InfinityData d = infinity_analysis(cusp_map());
    REQUIRE(d.real_places.size() == 1);
    CHECK(d.real_places[0].at_param_infinity);
    CHECK(d.real_places[0].multiplicity == 3);
    CHECK(d.complex_place_pairs == 0);
    CHECK(d.single_point_over_C);
    CHECK(d.germ_irreducible);
    CHECK(d.germ_multiplicity == 3);
    REQUIRE(d.place_param.has_value());
    CHECK(d.place_param->first == Rat(0));
    CHECK(d.place_param->second == Rat(1));
  }
  {
    InfinityData d = infinity_analysis(circle_map());
    CHECK(d.real_places.empty());
    CHECK(d.complex_place_pairs == 1);
    CHECK(!d.single_point_over_C);
    CHECK(!d.germ_irreducible);
    CHECK(d.germ_multiplicity == 0);
    CHECK(!d.place_param.has_value());
  }
  {
    InfinityData d = infinity_analysis(witch_graph());
    REQUIRE(d.real_places.size() == 1);
    CHECK(d.real_places[0].at_param_infinity);
    CHECK(d.real_places[0].multiplicity == 1);
    CHECK(d.complex_place_pairs == 1);
    CHECK(!d.single_point_over_C);
    CHECK(!d.germ_irreducible);
  }
  {
    AffineRatMap f = mk({RatFunc(UPoly::constant(Rat(1)), UPoly::variable()),
                         RatFunc(UPoly::constant(Rat(1)), UPoly({Rat(0), Rat(0), Rat(1)}))});
    InfinityData d = infinity_analysis(f);
    REQUIRE(d.real_places.size() == 1);
    CHECK(!d.real_places[0].at_param_infinity);
    CHECK(*d.real_places[0].param.as_rational() == Rat(0));
    CHECK(d.real_places[0].multiplicity == 2);
    CHECK(d.single_point_over_C);
    CHECK(d.germ_irreducible);
    CHECK(d.germ_multiplicity == 2);
    REQUIRE(d.place_param.has_value());
    CHECK(d.place_param->first == Rat(1));
    CHECK(d.place_param->second == Rat(0));
  }
}

TEST_CASE("polynomial normalization moves the place to the parameter infinity") {
  {
    AffineRatMap f = mk({RatFunc(UPoly::constant(Rat(1)), UPoly::variable()),
                         RatFunc(UPoly::constant(Rat(1)), UPoly({Rat(0), Rat(0), Rat(1)}))});
    PolyNormalization pn = normalize_infinity(f);
    CHECK(pn.multiplicity == 2);
    for (const auto& c : pn.poly_map.comp) CHECK(c.is_poly());
    CHECK(map_equal(pn.poly_map.compose_inner(pn.sigma_inv), f));
    auto [m0, m1] = pn.M.apply(Rat(0), Rat(1));
    CHECK(ProjPoint({m0, m1}) == ProjPoint({Rat(1), Rat(0)}));
  }
  {
    PolyNormalization pn = normalize_infinity(cusp_map());
    CHECK(pn.multiplicity == 3);
    for (const auto& c : pn.poly_map.comp) CHECK(c.is_poly());
    CHECK(map_equal(pn.poly_map.compose_inner(pn.sigma_inv), cusp_map()));
  }
  CHECK(kind_of([&] { normalize_infinity(witch_graph()); }) ==
        ErrorKind::NotSingleRealBranchAtInfinity);
}

TEST_CASE("curated classifications have the expected invariants and evidence") {
  {
    Classification c = classify(cusp_map(), IntervalDesc::all());
    CHECK(c.p == Nval::one);
    CHECK(c.r == Nval::one);
    CHECK(c.closed);
    CHECK(c.unbounded);
    CHECK(!c.degenerate);
    CHECK(c.properness_degree == 1);
    CHECK(c.closure_deficiency.empty());
    REQUIRE(c.infinite_closure_points.size() == 1);
    CHECK(c.infinite_closure_points[0] == ProjPoint({Rat(0), Rat(0), Rat(1)}));
    REQUIRE(c.cert_p.has_value());
    CHECK(c.cert_p->source_dim == 1);
    CHECK(c.cert_r.source_dim == 1);
  }
  {
    Classification c = classify(cusp_map(), IntervalDesc::ray_up(Rat(0), false));
    CHECK(c.p == Nval::two);
    CHECK(c.r == Nval::two);
    CHECK(!c.closed);
    CHECK(c.unbounded);
    REQUIRE(c.closure_deficiency.size() == 1);
    CHECK(c.closure_deficiency[0].q == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(c.closure_deficiency[0].branch_count == 1);
    REQUIRE(c.cert_p.has_value());
    CHECK(c.cert_p->source_dim == 2);
    CHECK(c.cert_r.source_dim == 2);
  }
  {
    Classification c = classify(cusp_map(), IntervalDesc::closed(Rat(1), Rat(2)));
    CHECK(c.p == Nval::infinite);
    CHECK(c.r == Nval::one);
    CHECK(c.closed);
    CHECK(!c.unbounded);
    CHECK(!c.cert_p.has_value());
    CHECK(c.cert_r.source_dim == 1);
  }
  {
    AffineRatMap parabola = mk({RatFunc::variable(), poly({Rat(0), Rat(0), Rat(1)})});
    Classification c = classify(parabola, IntervalDesc{Rat(0), Rat(1), true, false});
    CHECK(c.p == Nval::infinite);
    CHECK(c.r == Nval::one);
    CHECK(!c.closed);
    CHECK(!c.unbounded);
    REQUIRE(c.closure_deficiency.size() == 1);
    CHECK(c.closure_deficiency[0].q == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(c.closure_deficiency[0].branch_count == 1);
    CHECK(!c.cert_p.has_value());
  }
  {
    Classification c = classify(circle_map(), IntervalDesc::all());
    CHECK(c.p == Nval::infinite);
    CHECK(c.r == Nval::one);
    CHECK(!c.closed);
    CHECK(!c.unbounded);
    REQUIRE(c.closure_deficiency.size() == 1);
    CHECK(c.closure_deficiency[0].q == std::vector<Rat>{Rat(0), Rat(-1)});
    CHECK(c.closure_deficiency[0].branch_count == 1);
    CHECK(c.infinite_closure_points.empty());
  }
  {
    AffineRatMap f = mk({poly({Rat(0), Rat(0), Rat(1)}), poly({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)})});
    Classification c = classify(f, IntervalDesc::all());
    CHECK(c.p == Nval::one);
    CHECK(c.r == Nval::one);
    CHECK(c.closed);
    CHECK(c.unbounded);
    CHECK(c.properness_degree == 2);
    CHECK(map_equal(c.proper_map.compose_inner(c.inner), f));
  }
  {
    Classification c = classify(witch_graph(), IntervalDesc::all());
    CHECK(c.p == Nval::infinite);
    CHECK(c.r == Nval::one);
    CHECK(c.closed);
    CHECK(c.unbounded);
    CHECK(c.closure_deficiency.empty());
    REQUIRE(c.infinite_closure_points.size() == 1);
    CHECK(c.infinite_closure_points[0] == ProjPoint({Rat(0), Rat(1), Rat(0)}));
  }
  {
    // Singleton interval: a zero-dimensional image.
    Classification c = classify(cusp_map(), IntervalDesc::point(Rat(2)));
    CHECK(c.degenerate);
    CHECK(c.p == Nval::one);
    CHECK(c.r == Nval::one);
    REQUIRE(c.point_value.has_value());
    CHECK(*c.point_value == std::vector<Rat>{Rat(4), Rat(8)});
  }
}

TEST_CASE("random classifications satisfy the structural constraints") {
  auto g = rng_for(403);
  std::uniform_int_distribution<int> dim(2, 3);
  for (int i = 0; i < 50; ++i) {
    AffineRatMap f = rand_map(g, dim(g), 5);
    IntervalDesc I = rand_interval(g);
    CAPTURE(i);
    CAPTURE(f.str());
    CAPTURE(I.str());
    Classification c = classify(f, I);
    CHECK(static_cast<int>(c.r) <= static_cast<int>(c.p));
    CHECK(!(c.r == Nval::one && c.p == Nval::two));
    CHECK((c.p != Nval::infinite) == c.cert_p.has_value());
    CHECK(c.degenerate == c.point_value.has_value());
    if (c.degenerate) {
      CHECK(c.p == Nval::one);
      CHECK(c.r == Nval::one);
      CHECK(c.closed);
      CHECK(!c.unbounded);
      continue;
    }
    if (c.p == Nval::one || c.p == Nval::two) {
      CHECK(c.unbounded);
      CHECK(c.infinity.single_point_over_C);
      CHECK(c.infinity.germ_irreducible);
    }
    if (c.p == Nval::one) CHECK(c.closed);
    CHECK(c.properness_degree >= 1);
    CHECK(map_equal(c.proper_map.compose_inner(c.inner), f));
    CHECK(c.cert_r.target_dim() == f.dimension());
    CHECK(c.cert_r.source_dim == (c.r == Nval::one ? 1 : 2));
    if (c.cert_p) {
      CHECK(c.cert_p->target_dim() == f.dimension());
      CHECK(c.cert_p->source_dim == (c.p == Nval::one ? 1 : 2));
      CHECK(c.cert_p->components_polynomial());
    }
  }
}

TEST_CASE("implicit equations vanish on exact samples") {
  auto g = rng_for(404);
  std::vector<Rat> ts;
  for (int k = 0; k < 100; ++k) ts.push_back(Rat(2 * k - 99, 13));

  {
    ImplicitSet im = implicitize(cusp_map());
    REQUIRE(im.eqs.size() == 1);
    CHECK(!im.superset);
    MPoly expect = MPoly::var(2, 0, 3) - MPoly::var(2, 1, 2);
    CHECK(im.eqs[0] == expect);
  }
  {
    ImplicitSet im = implicitize(circle_map());
    REQUIRE(im.eqs.size() == 1);
    MPoly expect = MPoly::var(2, 0, 2) + MPoly::var(2, 1, 2) - MPoly::constant(2, Rat(1));
    CHECK(im.eqs[0] == expect);
  }
  for (int i = 0; i < 8; ++i) {
    AffineRatMap f = rand_map(g, 2, 4);
    if (f.comp[0].is_constant() && f.comp[1].is_constant()) continue;
    CAPTURE(f.str());
    ImplicitSet im = implicitize(f);
    REQUIRE(!im.eqs.empty());
    int bad = 0;
    for (const Rat& t : ts) {
      std::vector<Rat> q = f.eval(t);
      for (const MPoly& e : im.eqs)
        if (!(e.eval(q) == Rat(0))) ++bad;
    }
    CHECK(bad == 0);
  }
  for (int i = 0; i < 3; ++i) {
    AffineRatMap f = rand_map(g, 3, 3);
    bool allconst = true;
    for (const auto& c : f.comp) allconst = allconst && c.is_constant();
    if (allconst) continue;
    CAPTURE(f.str());
    ImplicitSet im = implicitize(f);
    REQUIRE(!im.eqs.empty());
    int bad = 0;
    for (int k = 0; k < 50; ++k) {
      std::vector<Rat> q = f.eval(ts[k]);
      for (const MPoly& e : im.eqs)
        if (!(e.eval(q) == Rat(0))) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("classification is invariant under affine reparametrization") {
  auto g = rng_for(405);
  std::vector<std::pair<Rat, Rat>> aff = {{Rat(2), Rat(3)}, {Rat(-1), Rat(2)},
                                          {Rat(1, 2), Rat(-5, 3)}};
  for (int i = 0; i < 9; ++i) {
    AffineRatMap f = rand_map(g, 2, 4);
    IntervalDesc J = rand_interval(g);
    auto [a, b] = aff[static_cast<size_t>(i) % aff.size()];
    IntervalDesc K = affine_image_interval(J, a, b);
    CAPTURE(f.str());
    CAPTURE(J.str());
    CAPTURE(a.str());
    CAPTURE(b.str());
    Classification c1 = classify(f, K);
    Classification c2 = classify(f.compose_inner(poly({b, a})), J);
    CHECK(c1.p == c2.p);
    CHECK(c1.r == c2.r);
    CHECK(c1.degenerate == c2.degenerate);
    CHECK(c1.closed == c2.closed);
    CHECK(c1.unbounded == c2.unbounded);
    CHECK(c1.properness_degree == c2.properness_degree);
    CHECK(sorted_deficiency(c1) == sorted_deficiency(c2));
    CHECK(c1.infinite_closure_points.size() == c2.infinite_closure_points.size());
  }
}
