#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "primage/algebraic.hpp"
#include "primage/upoly.hpp"
#include "testutil.hpp"

using namespace primage;
using namespace testutil;

TEST_CASE("gcd divides both arguments exactly") {
  auto g = rng_for(101);
  for (int i = 0; i < 200; ++i) {
    UPoly a = rand_upoly(g, 8), b = rand_upoly(g, 8);
    if (a.is_zero() || b.is_zero()) continue;
    UPoly d = upoly_gcd(a, b);
    REQUIRE(!d.is_zero());
    CHECK(upoly_divrem(a, d).second.is_zero());
    CHECK(upoly_divrem(b, d).second.is_zero());
  }
}

TEST_CASE("resultant vanishes exactly when a common root exists") {
  auto g = rng_for(102);
  int nontrivial = 0;
  for (int i = 0; i < 150; ++i) {
    UPoly a = rand_upoly(g, 6), b = rand_upoly(g, 6);
    if (a.is_constant() || b.is_constant()) continue;
    bool common = upoly_gcd(a, b).degree() >= 1;
    bool res_zero = upoly_resultant(a, b) == Rat(0);
    CHECK(common == res_zero);
    // Planted common factor hits the vanishing direction.
    UPoly f = rand_upoly(g, 3);
    if (f.degree() >= 1) {
      CHECK(upoly_resultant(a * f, b * f) == Rat(0));
      ++nontrivial;
    }
  }
  CHECK(nontrivial > 50);
}

namespace {

// Dense-grid sign-change oracle: bisect each bracketed root to width 1e-9.
std::vector<double> grid_roots(const UPoly& p) {
  UPoly q = squarefree_part(p);
  double B = cauchy_root_bound(q).to_double() + 1.0;
  const int N = 40000;
  std::vector<double> roots;
  double prev_x = -B, prev_v = q.eval_double(prev_x);
  for (int i = 1; i <= N; ++i) {
    double x = -B + 2 * B * i / N;
    double v = q.eval_double(x);
    if (prev_v == 0.0) {
      roots.push_back(prev_x);
    } else if (v != 0.0 && ((prev_v < 0) != (v < 0))) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
        double mid = (lo + hi) / 2, mv = q.eval_double(mid);
        if (mv == 0) { lo = hi = mid; break; }
        if ((mv < 0) == (prev_v < 0)) lo = mid; else hi = mid;
      }
      roots.push_back((lo + hi) / 2);
    }
    prev_x = x;
    prev_v = v;
  }
  if (prev_v == 0.0) roots.push_back(prev_x);
  return roots;
}

}  // namespace

TEST_CASE("real root isolation matches the dense-grid oracle") {
  auto g = rng_for(103);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    UPoly p = rand_upoly(g, 8);
    if (p.is_constant()) continue;
    auto exact = isolate_real_roots(p);
    auto approx = grid_roots(p);
    REQUIRE(exact.size() == approx.size());
    std::vector<double> ex;
    for (auto& [a, mult] : exact) {
      CHECK(mult >= 1);
      ex.push_back(a.to_double());
    }
    std::sort(ex.begin(), ex.end());
    std::sort(approx.begin(), approx.end());
    for (size_t k = 0; k < ex.size(); ++k) CHECK(std::fabs(ex[k] - approx[k]) < 1e-6);
    ++checked;
  }
  CHECK(checked >= 80);
}

TEST_CASE("isolation reports multiplicities of planted powers") {
  UPoly base({Rat(-2), Rat(0), Rat(1)});  // t^2 - 2
  UPoly p = base.pow(3) * UPoly({Rat(1), Rat(1)});
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 3);
  int m3 = 0, m1 = 0;
  for (auto& [a, mult] : roots) (mult == 3 ? m3 : m1) += 1;
  CHECK(m3 == 2);
  CHECK(m1 == 1);
}

TEST_CASE("distinct complex root count ignores powers") {
  auto g = rng_for(104);
  for (int i = 0; i < 50; ++i) {
    UPoly p = rand_upoly(g, 5);
    if (p.is_constant()) continue;
    int n1 = count_distinct_complex_roots(p);
    CHECK(count_distinct_complex_roots(p * p) == n1);
    CHECK(count_distinct_complex_roots(p * p * p) == n1);
  }
}

TEST_CASE("linear power factorization agrees with the root census") {
  auto g = rng_for(105);
  SUBCASE("planted powers are recognized with normalized root") {
    UPoly lin({Rat(-3), Rat(2)});  // 2t - 3, projective root (2 : 3)
    for (int e = 1; e <= 4; ++e) {
      HPoly h(lin.pow(static_cast<unsigned>(e)) * Rat(5, 7), e);
      auto lp = factor_linear_power(h);
      REQUIRE(lp.has_value());
      CHECK(lp->exponent == e);
      CHECK(lp->a == Rat(2));
      CHECK(lp->b == Rat(3));
    }
  }
  SUBCASE("pure infinity power has root (0 : 1)") {
    HPoly h(UPoly::constant(Rat(4)), 3);  // 4 * t0^3
    auto lp = factor_linear_power(h);
    REQUIRE(lp.has_value());
    CHECK(lp->exponent == 3);
    CHECK(lp->a == Rat(0));
    CHECK(lp->b == Rat(1));
  }
  SUBCASE("census equivalence on random forms") {
    std::uniform_int_distribution<int> extra(0, 2);
    for (int i = 0; i < 80; ++i) {
      UPoly u = rand_upoly(g, 4);
      if (u.is_zero()) continue;
      HPoly h(u, u.degree() + extra(g));
      int census = (u.is_constant() ? 0 : count_distinct_complex_roots(u)) +
                   (h.infinity_multiplicity() > 0 ? 1 : 0);
      CHECK(factor_linear_power(h).has_value() == (census == 1));
    }
  }
  SUBCASE("negatives") {
    CHECK(!factor_linear_power(HPoly(UPoly({Rat(2), Rat(-3), Rat(1)}), 2)).has_value());
    CHECK(!factor_linear_power(HPoly(UPoly({Rat(1), Rat(0), Rat(1)}), 2)).has_value());
    CHECK(!factor_linear_power(HPoly(UPoly({Rat(0), Rat(1)}), 2)).has_value());
  }
}

TEST_CASE("algebraic number equality is an equivalence relation across definers") {
  UPoly s2({Rat(-2), Rat(0), Rat(1)});
  UPoly s3({Rat(-3), Rat(0), Rat(1)});
  UPoly lin({Rat(-7), Rat(1)});
  AlgebraicNumber a(s2, Rat(1), Rat(2));
  AlgebraicNumber b(s2 * s3, Rat(7, 5), Rat(29, 20));          // sqrt 2 from a product
  AlgebraicNumber c(s2 * lin, Rat(1), Rat(3, 2));              // sqrt 2 again
  AlgebraicNumber d(s2 * s3, Rat(17, 10), Rat(9, 5));          // sqrt 3
  AlgebraicNumber e(Rat(7));
  AlgebraicNumber f(s2 * lin, Rat(13, 2), Rat(15, 2));         // the rational root 7

  CHECK(a == a);
  CHECK(a == b);
  CHECK(b == a);
  CHECK(b == c);
  CHECK(a == c);  // transitivity across three definers
  CHECK(!(a == d));
  CHECK(!(b == d));
  CHECK(e == f);
  CHECK(f == e);
  CHECK(!(a == e));
  CHECK(a < d);
  CHECK(d.compare(a) > 0);
  CHECK(a.compare(Rat(3, 2)) < 0);
  CHECK(a.sign() == 1);

  SUBCASE("pool from random products") {
    auto g = rng_for(106);
    std::vector<AlgebraicNumber> pool;
    for (int i = 0; i < 6; ++i) {
      UPoly p = rand_upoly(g, 3) * rand_upoly(g, 2);
      if (p.is_constant()) continue;
      for (auto& [root, mult] : isolate_real_roots(p)) pool.push_back(root);
    }
    for (size_t i = 0; i < pool.size(); ++i)
      for (size_t j = 0; j < pool.size(); ++j) {
        bool ij = pool[i] == pool[j];
        CHECK(ij == (pool[j] == pool[i]));
        if (ij) CHECK(std::fabs(pool[i].to_double() - pool[j].to_double()) < 1e-9);
        for (size_t k = 0; ij && k < pool.size(); ++k)
          if (pool[j] == pool[k]) CHECK(pool[i] == pool[k]);
      }
  }
}

TEST_CASE("rational detection and decimal rendering") {
  UPoly p({Rat(-1, 3), Rat(1)});
  AlgebraicNumber a(p, Rat(0), Rat(1));
  auto r = a.as_rational();
  REQUIRE(r.has_value());
  CHECK(*r == Rat(1, 3));
  CHECK(a.decimal(5) == "0.33333");
  AlgebraicNumber s2(UPoly({Rat(-2), Rat(0), Rat(1)}), Rat(1), Rat(2));
  CHECK(s2.decimal(10).substr(0, 12) == "1.4142135623");
}
