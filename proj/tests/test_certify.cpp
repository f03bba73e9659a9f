#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "primage/certificate.hpp"
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

VerifyParams default_params() {
  VerifyParams p;
  p.seed = 23;
  return p;  // samples 10000, tol 1e-9, net 1e-2
}

// x_j <- x_j^3 + x_j on every source variable: a surjective reparametrization
// of the source, so the claimed image is unchanged.
CertificateMap precompose_odd_cubic(const CertificateMap& cert) {
  CertificateMap out = cert;
  for (int j = 0; j < cert.source_dim; ++j) {
    MPoly cube = MPoly::var(cert.nvars(), j, 3) + MPoly::var(cert.nvars(), j);
    for (auto& c : out.comp) c = MRat(c.n.substitute(j, cube), c.d.substitute(j, cube));
  }
  return out;
}

}  // namespace

TEST_CASE("classification certificates verify against their own targets") {
  AffineRatMap id = mk({RatFunc::variable()});
  AffineRatMap square = mk({poly({Rat(0), Rat(0), Rat(1)})});
  AffineRatMap bump = mk({RatFunc(UPoly::constant(Rat(1)), UPoly({Rat(1), Rat(0), Rat(1)}))});
  AffineRatMap parabola = mk({RatFunc::variable(), poly({Rat(0), Rat(0), Rat(1)})});
  AffineRatMap evenpair =
      mk({poly({Rat(0), Rat(0), Rat(1)}), poly({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)})});

  struct Entry {
    AffineRatMap f;
    IntervalDesc I;
    Nval p, r;
  };
  std::vector<Entry> suite = {
      {cusp_map(), IntervalDesc::all(), Nval::one, Nval::one},
      {cusp_map(), IntervalDesc::ray_up(Rat(0), false), Nval::two, Nval::two},
      {cusp_map(), IntervalDesc::closed(Rat(1), Rat(2)), Nval::infinite, Nval::one},
      {parabola, IntervalDesc{Rat(0), Rat(1), true, false}, Nval::infinite, Nval::one},
      {circle_map(), IntervalDesc::all(), Nval::infinite, Nval::one},
      {evenpair, IntervalDesc::all(), Nval::one, Nval::one},
      {witch_graph(), IntervalDesc::all(), Nval::infinite, Nval::one},
      {id, IntervalDesc::ray_up(Rat(0), true), Nval::one, Nval::one},
      {id, IntervalDesc::open(Rat(0), Rat(1)), Nval::infinite, Nval::two},
      {square, IntervalDesc::all(), Nval::one, Nval::one},
      {bump, IntervalDesc::all(), Nval::infinite, Nval::one},
  };

  VerifyParams prm = default_params();
  for (const auto& e : suite) {
    CAPTURE(e.f.str());
    CAPTURE(e.I.str());
    Classification c = classify(e.f, e.I);
    CHECK(c.p == e.p);
    CHECK(c.r == e.r);
    VerifyTarget tgt = target_for(e.f, e.I);

    CHECK(c.cert_r.constants.empty());
    CHECK(c.cert_r.source_dim == (c.r == Nval::one ? 1 : 2));
    VerificationReport vr = verify_certificate(c.cert_r, tgt, prm);
    CAPTURE(vr.detail);
    CHECK(vr.membership_ok);
    CHECK(vr.coverage_ok);

    CHECK((c.p != Nval::infinite) == c.cert_p.has_value());
    if (c.cert_p) {
      CHECK(c.cert_p->source_dim == (c.p == Nval::one ? 1 : 2));
      CHECK(c.cert_p->components_polynomial());
      VerificationReport vp = verify_certificate(*c.cert_p, tgt, prm);
      CAPTURE(vp.detail);
      CHECK(vp.membership_ok);
      CHECK(vp.coverage_ok);
    }
  }
}

TEST_CASE("certificates survive precomposition with an odd cubic") {
  AffineRatMap id = mk({RatFunc::variable()});
  struct Entry {
    AffineRatMap f;
    IntervalDesc I;
  };
  std::vector<Entry> suite = {
      {cusp_map(), IntervalDesc::all()},
      {cusp_map(), IntervalDesc::ray_up(Rat(0), false)},
      {circle_map(), IntervalDesc::all()},
      {id, IntervalDesc::open(Rat(0), Rat(1))},
      {id, IntervalDesc::ray_up(Rat(0), true)},
  };
  VerifyParams prm = default_params();
  for (const auto& e : suite) {
    CAPTURE(e.f.str());
    CAPTURE(e.I.str());
    Classification c = classify(e.f, e.I);
    REQUIRE(c.cert_r.constants.empty());
    CertificateMap twisted = precompose_odd_cubic(c.cert_r);
    VerificationReport rep = verify_certificate(twisted, target_for(e.f, e.I), prm);
    CAPTURE(rep.detail);
    CHECK(rep.membership_ok);
    CHECK(rep.coverage_ok);
  }
}

TEST_CASE("verification separates membership from coverage") {
  AffineRatMap id = mk({RatFunc::variable()});
  VerifyTarget tgt = target_for(id, IntervalDesc::ray_up(Rat(0), true));
  VerifyParams prm = default_params();

  CertificateMap sq;
  sq.kind = "polynomial";
  sq.source_dim = 1;
  sq.comp.push_back(MRat::from_mpoly(MPoly::var(1, 0, 2)));
  VerificationReport ok = verify_certificate(sq, tgt, prm);
  CHECK(ok.membership_ok);
  CHECK(ok.coverage_ok);
  CHECK(ok.membership_samples == prm.samples);
  CHECK(ok.coverage_cells_hit == ok.coverage_cells_total);

  CertificateMap shifted = sq;
  shifted.comp[0] = MRat::from_mpoly(MPoly::var(1, 0, 2) + MPoly::constant(1, Rat(1)));
  VerificationReport miss = verify_certificate(shifted, tgt, prm);
  CHECK(miss.membership_ok);
  CHECK(!miss.coverage_ok);
  CHECK(miss.coverage_cells_hit < miss.coverage_cells_total);

  CertificateMap leaking = sq;
  leaking.comp[0] = MRat::from_mpoly(MPoly::var(1, 0, 2) - MPoly::constant(1, Rat(1)));
  VerificationReport bad = verify_certificate(leaking, tgt, prm);
  CHECK(!bad.membership_ok);
}

TEST_CASE("named constants define their algebraic values") {
  AlgebraicNumber r2(UPoly({Rat(-2), Rat(0), Rat(1)}), Rat(1), Rat(2));
  NamedConstant nc = NamedConstant::from_algebraic("c1", r2);
  CHECK(nc.name == "c1");
  CHECK(nc.value() == r2);
  CHECK(nc.lo < nc.hi);
  CHECK(std::fabs(nc.to_double() - 1.4142135623730951) < 1e-12);
  CHECK(nc.decimal_approx.substr(0, 6) == "1.4142");

  CertificateMap cert;
  cert.kind = "regular";
  cert.source_dim = 1;
  cert.constants.push_back(nc);
  cert.comp.push_back(MRat::from_mpoly(MPoly::var(2, 0) * MPoly::var(2, 1)));
  CHECK(cert.nvars() == 2);
  CHECK(cert.var_names() == std::vector<std::string>{"t", "c1"});
  CHECK(std::fabs(cert.eval_double({2.0})[0] - 2.0 * 1.4142135623730951) < 1e-12);
  CHECK(kind_of([&] { cert.eval({Rat(2)}); }) == ErrorKind::NotInSubfield);
}

TEST_CASE("verification rejects mismatched inputs") {
  AffineRatMap id = mk({RatFunc::variable()});
  VerifyTarget tgt = target_for(id, IntervalDesc::all());
  CertificateMap cert;
  cert.kind = "regular";
  cert.source_dim = 1;
  cert.comp.push_back(MRat::from_mpoly(MPoly::var(1, 0)));
  cert.comp.push_back(MRat::from_mpoly(MPoly::var(1, 0)));
  CHECK(kind_of([&] { verify_certificate(cert, tgt, default_params()); }) ==
        ErrorKind::WrongDimension);
}
