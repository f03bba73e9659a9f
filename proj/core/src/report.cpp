#include "primage/report.hpp"

#include <chrono>
#include <cstdio>
#include <future>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "primage/curve.hpp"
#include "primage/expr.hpp"
#include "primage/intervals.hpp"
#include "primage/luroth.hpp"

namespace primage {

using nlohmann::json;

namespace {

std::string dec10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

std::string dec3e(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

json alg_json(const AlgebraicNumber& v) {
  json j;
  j["exact"] = v.str();
  j["decimal"] = dec10(v.to_double());
  if (auto r = v.as_rational()) j["rational"] = r->str();
  return j;
}

json rat_point_json(const std::vector<Rat>& q) {
  json ex = json::array(), de = json::array();
  for (const Rat& c : q) {
    ex.push_back(c.str());
    de.push_back(dec10(c.to_double()));
  }
  return json{{"exact", ex}, {"decimal", de}};
}

json interval_json(const IntervalDesc& I) {
  json j;
  j["text"] = I.str();
  j["lo"] = I.lo ? json(I.lo->str()) : json();
  j["hi"] = I.hi ? json(I.hi->str()) : json();
  j["lo_closed"] = I.lo_closed;
  j["hi_closed"] = I.hi_closed;
  return j;
}

json image_end_json(const ImageEnd& e) {
  json j;
  j["infinite"] = e.infinite;
  if (!e.infinite) {
    j["value"] = alg_json(e.v);
    j["attained"] = e.attained;
  }
  return j;
}

json cert_json(const CertificateMap& c) {
  json j;
  j["kind"] = c.kind;
  j["source_dim"] = c.source_dim;
  j["expr"] = c.str();
  json comps = json::array();
  auto names = c.var_names();
  for (const auto& m : c.comp) comps.push_back(m.str(names));
  j["components"] = comps;
  json ks = json::array();
  for (const auto& k : c.constants)
    ks.push_back(json{{"name", k.name},
                      {"definer", k.definer.str("u")},
                      {"isolation_lo", k.lo.str()},
                      {"isolation_hi", k.hi.str()},
                      {"decimal", k.decimal_approx}});
  j["constants"] = ks;
  return j;
}

json verification_json(const VerificationReport& r) {
  json j;
  j["pass"] = r.ok();
  j["membership_ok"] = r.membership_ok;
  j["coverage_ok"] = r.coverage_ok;
  j["membership_samples"] = r.membership_samples;
  j["max_membership_residual"] = dec3e(r.max_membership_residual);
  j["coverage_cells_total"] = r.coverage_cells_total;
  j["coverage_cells_hit"] = r.coverage_cells_hit;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

json evidence_json(const Classification& c) {
  json ev;
  ev["degenerate"] = c.degenerate;
  ev["closed"] = c.closed;
  ev["unbounded"] = c.unbounded;
  ev["properness_degree"] = c.properness_degree;
  if (c.point_value) ev["point"] = rat_point_json(*c.point_value);
  json inf;
  json real = json::array();
  for (const auto& pl : c.infinity.real_places) {
    json p;
    p["at_parameter_infinity"] = pl.at_param_infinity;
    p["multiplicity"] = pl.multiplicity;
    if (!pl.at_param_infinity) p["parameter"] = alg_json(pl.param);
    real.push_back(p);
  }
  inf["real_places"] = real;
  inf["complex_place_pairs"] = c.infinity.complex_place_pairs;
  inf["single_point_over_C"] = c.infinity.single_point_over_C;
  inf["germ_irreducible"] = c.infinity.germ_irreducible;
  inf["germ_multiplicity"] = c.infinity.germ_multiplicity;
  ev["places_at_infinity"] = inf;
  json def = json::array();
  for (const auto& d : c.closure_deficiency)
    def.push_back(json{{"point", rat_point_json(d.q)}, {"branches", d.branch_count}});
  ev["closure_deficiency"] = def;
  json icp = json::array();
  for (const auto& q : c.infinite_closure_points) {
    json ex = json::array(), de = json::array();
    for (const Rat& h : q.h) {
      ex.push_back(h.str());
      de.push_back(dec10(h.to_double()));
    }
    icp.push_back(json{{"homogeneous", ex}, {"decimal", de}});
  }
  ev["infinite_closure_points"] = icp;
  return ev;
}

VerifyParams vparams(const JobSpec& s) {
  VerifyParams p;
  p.seed = s.seed;
  p.samples = s.samples;
  p.tol = Rat::parse(s.tol).to_double();
  p.jobs = s.threads;
  return p;
}

VerifyTarget target_for(const AffineRatMap& f, const IntervalDesc& I) {
  VerifyTarget T;
  T.f = f;
  T.lo = I.lo;
  T.hi = I.hi;
  T.lo_closed = I.lo_closed;
  T.hi_closed = I.hi_closed;
  T.lo_unbounded = !I.lo;
  T.hi_unbounded = !I.hi;
  if (f.dimension() >= 2) {
    ImplicitSet im = implicitize(f);
    T.implicit_eqs = im.eqs;
    T.implicit_superset = im.superset;
  } else {
    ImageInterval J = image_of(f.comp[0], I, PolePolicy::kAllowOpenEnds);
    T.image_lo_unbounded = J.lo.infinite;
    T.image_hi_unbounded = J.hi.infinite;
    if (!J.lo.infinite) {
      T.image_lo = J.lo.v.to_double();
      T.image_lo_closed = J.lo.attained;
    }
    if (!J.hi.infinite) {
      T.image_hi = J.hi.v.to_double();
      T.image_hi_closed = J.hi.attained;
    }
  }
  return T;
}

IntervalDesc spec_interval(const JobSpec& spec) {
  return spec.interval_text.empty() ? IntervalDesc::all() : parse_interval(spec.interval_text);
}

std::string human_cert(const char* label, const CertificateMap& c) {
  std::ostringstream o;
  o << "certificate (" << label << ", " << c.kind << ", source R";
  if (c.source_dim > 1) o << "^" << c.source_dim;
  o << "): " << c.str();
  return o.str();
}

std::string human_verif(const char* label, const VerificationReport& r) {
  std::ostringstream o;
  o << "verification (" << label << "): " << (r.ok() ? "pass" : "FAIL") << " ("
    << r.membership_samples << " samples, max residual " << dec3e(r.max_membership_residual)
    << ", coverage " << r.coverage_cells_hit << "/" << r.coverage_cells_total << ")";
  if (!r.ok() && !r.detail.empty()) o << " " << r.detail;
  return o.str();
}

// The classify pipeline shared by classify-curve, certify, and verify:
// univariate input classifies directly, multivariate input factors through a
// generator of its coordinate field first.
struct Pipeline {
  Classification c;
  AffineRatMap target_f;  // univariate map whose image over target_I is S
  IntervalDesc target_I;
  std::optional<json> factorization;
  int image_dimension = 1;
};

Pipeline run_pipeline(const ParsedMap& pm, const JobSpec& spec) {
  Pipeline out;
  if (pm.uses_t) {
    IntervalDesc I = spec_interval(spec);
    AffineRatMap f = pm.univariate();
    out.c = classify(f, I);
    out.target_f = f;
    out.target_I = I;
    return out;
  }
  if (!spec.interval_text.empty() && !parse_interval(spec.interval_text).is_all())
    fail(ErrorKind::Unsupported, "a map of several variables is classified over all of R^n");
  int dim = dim_image(pm.comps);
  out.image_dimension = dim;
  if (dim >= 2) fail(ErrorKind::WrongDimension, "the image is a surface, not a curve");
  if (dim == 0) {
    std::vector<Rat> zero(pm.nvars, Rat(0));
    AffineRatMap hc;
    for (const auto& comp : pm.comps)
      hc.comp.emplace_back(UPoly({comp.eval(zero)}), UPoly({Rat(1)}));
    out.c = classify(hc, IntervalDesc::all());
    out.target_f = hc;
    out.target_I = IntervalDesc::all();
    return out;
  }
  Decomposition dec = decompose(pm.comps, spec.seed);
  IntervalDesc J = generator_image_interval(dec.g);
  out.c = classify(dec.h, J, DomainPolicy::kPolesOffInterval);
  out.target_f = dec.h;
  out.target_I = J;
  json fac;
  fac["generator"] = dec.g.str(pm.var_names());
  fac["generator_polynomial"] = dec.g.is_poly();
  fac["generator_image"] = interval_json(J);
  json hs = json::array();
  for (const auto& comp : dec.h.comp) hs.push_back(comp.str("t"));
  fac["proper_map"] = hs;
  fac["polynomial_certified"] = dec.polynomial_certified;
  out.factorization = fac;
  return out;
}

json cmd_classify_interval(const JobSpec& spec, std::ostringstream& hu) {
  IntervalDesc I = spec_interval(spec);
  IntervalClass ic = classify_interval(I);
  json res;
  res["p"] = nval_str(ic.p);
  res["r"] = nval_str(ic.r);
  res["interval"] = interval_json(I);
  res["shape"] = shape_name(ic.shape);
  res["degenerate"] = ic.degenerate;
  CertificateMap cr = certificate_for_interval(I, false);
  json certs;
  certs["regular"] = cert_json(cr);
  std::optional<CertificateMap> cp;
  if (ic.p != Nval::infinite) {
    cp = certificate_for_interval(I, true);
    certs["polynomial"] = cert_json(*cp);
  }
  res["certificates"] = certs;
  AffineRatMap id;
  id.comp.push_back(RatFunc::variable());
  VerifyTarget T = target_for(id, I);
  VerifyParams vp = vparams(spec);
  json ver;
  VerificationReport vr = verify_certificate(cr, T, vp);
  ver["regular"] = verification_json(vr);
  std::optional<VerificationReport> vpr;
  if (cp) {
    vpr = verify_certificate(*cp, T, vp);
    ver["polynomial"] = verification_json(*vpr);
  }
  res["verification"] = ver;
  hu << "S = " << I.str() << " (" << shape_name(ic.shape) << ")\n";
  hu << "r = " << nval_str(ic.r) << "   p = " << nval_str(ic.p) << "\n";
  hu << human_cert("r", cr) << "\n";
  if (cp) hu << human_cert("p", *cp) << "\n";
  hu << human_verif("r", vr) << "\n";
  if (vpr) hu << human_verif("p", *vpr) << "\n";
  return res;
}

void render_classification(const Classification& c, const JobSpec& spec,
                           const AffineRatMap& target_f, const IntervalDesc& target_I,
                           json& res, std::ostringstream& hu) {
  res["p"] = nval_str(c.p);
  res["r"] = nval_str(c.r);
  res["evidence"] = evidence_json(c);
  json certs;
  certs["regular"] = cert_json(c.cert_r);
  if (c.cert_p) certs["polynomial"] = cert_json(*c.cert_p);
  res["certificates"] = certs;
  VerifyTarget T = target_for(target_f, target_I);
  VerifyParams vp = vparams(spec);
  json ver;
  VerificationReport vr = verify_certificate(c.cert_r, T, vp);
  ver["regular"] = verification_json(vr);
  std::optional<VerificationReport> vpr;
  if (c.cert_p) {
    vpr = verify_certificate(*c.cert_p, T, vp);
    ver["polynomial"] = verification_json(*vpr);
  }
  res["verification"] = ver;

  hu << "r = " << nval_str(c.r) << "   p = " << nval_str(c.p) << "\n";
  if (c.degenerate) hu << "S is a single point\n";
  hu << "closed: " << (c.closed ? "yes" : "no") << "   unbounded: " << (c.unbounded ? "yes" : "no")
     << "   properness degree: " << c.properness_degree << "\n";
  for (const auto& d : c.closure_deficiency) {
    hu << "closure misses (";
    for (size_t i = 0; i < d.q.size(); ++i) hu << (i ? ", " : "") << d.q[i].str();
    hu << ") approached along " << d.branch_count << (d.branch_count == 1 ? " place" : " places")
       << "\n";
  }
  if (!c.degenerate)
    hu << "places at infinity: " << c.infinity.real_places.size() << " real, "
       << c.infinity.complex_place_pairs << " conjugate pairs\n";
  hu << human_cert("r", c.cert_r) << "\n";
  if (c.cert_p) hu << human_cert("p", *c.cert_p) << "\n";
  hu << human_verif("r", vr) << "\n";
  if (vpr) hu << human_verif("p", *vpr) << "\n";
}

json cmd_classify_curve(const JobSpec& spec, std::ostringstream& hu) {
  ParsedMap pm = parse_map(spec.map_text);
  Pipeline pl = run_pipeline(pm, spec);
  json res;
  res["image_dimension"] = pl.image_dimension;
  if (pl.factorization) {
    res["factorization"] = *pl.factorization;
    hu << "factored through generator " << (*pl.factorization)["generator"].get<std::string>()
       << " with image " << pl.target_I.str() << "\n";
  }
  render_classification(pl.c, spec, pl.target_f, pl.target_I, res, hu);
  return res;
}

json cmd_image(const JobSpec& spec, std::ostringstream& hu) {
  ParsedMap pm = parse_map(spec.map_text);
  if (pm.dimension() != 1)
    fail(ErrorKind::WrongDimension, "the image of a map with several components is not an interval");
  ImageInterval J;
  if (pm.uses_t) {
    J = image_of(pm.univariate().comp[0], spec_interval(spec));
  } else {
    if (!spec.interval_text.empty() && !parse_interval(spec.interval_text).is_all())
      fail(ErrorKind::Unsupported, "a map of several variables is evaluated over all of R^n");
    int dim = dim_image(pm.comps);
    if (dim == 0) {
      std::vector<Rat> zero(pm.nvars, Rat(0));
      Rat v = pm.comps[0].eval(zero);
      J.lo = {false, AlgebraicNumber(v), true};
      J.hi = {false, AlgebraicNumber(v), true};
    } else {
      Decomposition dec = decompose(pm.comps, spec.seed);
      IntervalDesc J0 = generator_image_interval(dec.g);
      J = image_of(dec.h.comp[0], J0, PolePolicy::kAllowOpenEnds);
    }
  }
  json res;
  res["image"] = json{{"text", J.str()}, {"lo", image_end_json(J.lo)}, {"hi", image_end_json(J.hi)}};
  hu << "image: " << J.str() << "\n";
  return res;
}

json cmd_decompose(const JobSpec& spec, std::ostringstream& hu) {
  ParsedMap pm = parse_map(spec.map_text);
  int dim = dim_image(pm.comps);
  if (dim == 0) fail(ErrorKind::DegenerateConstant, "the map is constant");
  if (dim >= 2) fail(ErrorKind::WrongDimension, "the image is a surface, not a curve");
  Decomposition dec = decompose(pm.comps, spec.seed);
  json res;
  res["generator"] = dec.g.str(pm.var_names());
  res["generator_polynomial"] = dec.g.is_poly();
  res["polynomial_certified"] = dec.polynomial_certified;
  json hs = json::array();
  for (const auto& comp : dec.h.comp) hs.push_back(comp.str("t"));
  res["proper_map"] = hs;
  json la = json::array(), lb = json::array();
  for (const Rat& a : dec.line_a) la.push_back(a.str());
  for (const Rat& b : dec.line_b) lb.push_back(b.str());
  res["line"] = json{{"a", la}, {"b", lb}};
  hu << "f = h(g) with\n";
  hu << "g = " << dec.g.str(pm.var_names()) << (dec.g.is_poly() ? "" : "  (rational)") << "\n";
  hu << "h = (";
  for (size_t i = 0; i < dec.h.comp.size(); ++i) hu << (i ? ", " : "") << dec.h.comp[i].str("t");
  hu << ")\n";
  if (dec.polynomial_certified) hu << "both parts are polynomial\n";
  return res;
}

json cmd_implicitize(const JobSpec& spec, std::ostringstream& hu) {
  ParsedMap pm = parse_map(spec.map_text);
  AffineRatMap f;
  if (pm.uses_t) {
    f = pm.univariate();
  } else {
    int dim = dim_image(pm.comps);
    if (dim == 0) fail(ErrorKind::DegenerateConstant, "the map is constant");
    if (dim >= 2) fail(ErrorKind::WrongDimension, "the image is a surface, not a curve");
    f = decompose(pm.comps, spec.seed).h;
  }
  ImplicitSet im = implicitize(f);
  std::vector<std::string> names;
  for (int i = 0; i < f.dimension(); ++i) names.push_back("x" + std::to_string(i + 1));
  json res;
  json eqs = json::array();
  for (const auto& e : im.eqs) eqs.push_back(e.str(names));
  res["equations"] = eqs;
  res["superset"] = im.superset;
  if (im.eqs.empty())
    hu << "the Zariski closure of the image is the whole line\n";
  else
    for (const auto& e : im.eqs) hu << e.str(names) << " = 0\n";
  if (im.superset) hu << "(pairwise elimination; may cut out a strict superset)\n";
  return res;
}

json cmd_certify(const JobSpec& spec, std::ostringstream& hu) {
  if (spec.kind != "" && spec.kind != "polynomial" && spec.kind != "regular")
    fail(ErrorKind::ParseError, "certificate kind must be polynomial or regular");
  ParsedMap pm = parse_map(spec.map_text);
  Pipeline pl = run_pipeline(pm, spec);
  const Classification& c = pl.c;
  if (spec.kind == "polynomial" && !c.cert_p)
    fail(ErrorKind::NotAPolynomialImage,
         "p is infinite: the set is not a polynomial image of any R^n");
  json res;
  res["p"] = nval_str(c.p);
  res["r"] = nval_str(c.r);
  VerifyTarget T = target_for(pl.target_f, pl.target_I);
  VerifyParams vp = vparams(spec);
  json certs, ver;
  if (spec.kind != "polynomial") {
    certs["regular"] = cert_json(c.cert_r);
    VerificationReport vr = verify_certificate(c.cert_r, T, vp);
    ver["regular"] = verification_json(vr);
    hu << human_cert("r", c.cert_r) << "\n" << human_verif("r", vr) << "\n";
  }
  if (spec.kind != "regular" && c.cert_p) {
    certs["polynomial"] = cert_json(*c.cert_p);
    VerificationReport vr = verify_certificate(*c.cert_p, T, vp);
    ver["polynomial"] = verification_json(vr);
    hu << human_cert("p", *c.cert_p) << "\n" << human_verif("p", vr) << "\n";
  }
  res["certificates"] = certs;
  res["verification"] = ver;
  return res;
}

json cmd_verify(const JobSpec& spec, std::ostringstream& hu) {
  ParsedMap pm = parse_map(spec.map_text);
  Pipeline pl = run_pipeline(pm, spec);
  const Classification& c = pl.c;
  VerifyTarget T = target_for(pl.target_f, pl.target_I);
  VerifyParams vp = vparams(spec);
  json res;
  res["p"] = nval_str(c.p);
  res["r"] = nval_str(c.r);
  json ver;
  VerificationReport vr = verify_certificate(c.cert_r, T, vp);
  ver["regular"] = verification_json(vr);
  bool all = vr.ok();
  hu << human_verif("r", vr) << "\n";
  if (c.cert_p) {
    VerificationReport vp2 = verify_certificate(*c.cert_p, T, vp);
    ver["polynomial"] = verification_json(vp2);
    all = all && vp2.ok();
    hu << human_verif("p", vp2) << "\n";
  }
  res["verification"] = ver;
  res["all_pass"] = all;
  return res;
}

}  // namespace

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
      return 2;
    case ErrorKind::DomainViolation:
    case ErrorKind::DegenerateInput:
    case ErrorKind::DegenerateConstant:
      return 3;
    case ErrorKind::WrongDimension:
    case ErrorKind::WrongArity:
    case ErrorKind::Unsupported:
    case ErrorKind::NotAPolynomialImage:
    case ErrorKind::GenericityFailure:
      return 4;
    default:
      return 5;
  }
}

JobResult run_job(const JobSpec& spec) {
  auto t0 = std::chrono::steady_clock::now();
  json rep;
  rep["schema"] = "primage.report.v1";
  rep["command"] = spec.command;
  json in;
  if (!spec.map_text.empty()) in["map"] = spec.map_text;
  if (!spec.interval_text.empty()) in["interval"] = spec.interval_text;
  if (!spec.kind.empty()) in["kind"] = spec.kind;
  in["seed"] = spec.seed;
  in["samples"] = spec.samples;
  in["tol"] = spec.tol;
  rep["input"] = in;
  JobResult out;
  std::ostringstream hu;
  try {
    json res;
    if (spec.command == "classify-interval")
      res = cmd_classify_interval(spec, hu);
    else if (spec.command == "classify-curve")
      res = cmd_classify_curve(spec, hu);
    else if (spec.command == "image")
      res = cmd_image(spec, hu);
    else if (spec.command == "decompose")
      res = cmd_decompose(spec, hu);
    else if (spec.command == "implicitize")
      res = cmd_implicitize(spec, hu);
    else if (spec.command == "certify")
      res = cmd_certify(spec, hu);
    else if (spec.command == "verify")
      res = cmd_verify(spec, hu);
    else
      fail(ErrorKind::ParseError, "unknown command '" + spec.command + "'");
    rep["ok"] = true;
    rep["result"] = res;
  } catch (const Error& e) {
    rep["ok"] = false;
    rep["error"] = json{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    out.exit_code = exit_code_for(e.kind());
    hu << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
  }
  if (spec.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    rep["timing_ms"] = static_cast<std::int64_t>(ms);
  }
  out.json = rep.dump();
  out.human = hu.str();
  return out;
}

std::string invariant_table() {
  static const char* rows[] = {"(-inf, inf)", "[0, inf)", "[0, 1)", "(0, inf)", "(0, 1)"};
  std::ostringstream o;
  o << "  interval      r     p\n";
  o << "  -----------   ---   ---\n";
  for (const char* t : rows) {
    IntervalClass ic = classify_interval(parse_interval(t));
    char buf[80];
    std::snprintf(buf, sizeof buf, "  %-13s %-5s %s\n", t, nval_str(ic.r).c_str(),
                  nval_str(ic.p).c_str());
    o << buf;
  }
  return o.str();
}

std::vector<JobResult> run_batch(const std::string& jobs_text, const JobSpec& defaults) {
  std::vector<std::string> lines;
  std::istringstream in(jobs_text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  std::vector<JobSpec> specs;
  std::vector<JobResult> out(lines.size());
  std::vector<int> bad;
  for (size_t i = 0; i < lines.size(); ++i) {
    JobSpec s = defaults;
    s.threads = 1;
    s.seed = mix64(defaults.seed ^ (i + 1));
    try {
      json j = json::parse(lines[i]);
      s.command = j.at("command").get<std::string>();
      s.map_text = j.value("map", "");
      s.interval_text = j.value("interval", "");
      s.kind = j.value("kind", "");
      s.samples = j.value("samples", defaults.samples);
      s.tol = j.value("tol", defaults.tol);
      if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    } catch (const std::exception& e) {
      json rep;
      rep["schema"] = "primage.report.v1";
      rep["command"] = "";
      rep["ok"] = false;
      rep["error"] =
          json{{"kind", "ParseError"}, {"message", std::string("bad job line: ") + e.what()}};
      out[i] = JobResult{2, rep.dump(), std::string("error (ParseError): bad job line: ") + e.what() + "\n"};
      bad.push_back(static_cast<int>(i));
      s.command = "";
    }
    specs.push_back(s);
  }
  auto is_bad = [&](size_t i) {
    for (int b : bad)
      if (b == static_cast<int>(i)) return true;
    return false;
  };
  int workers = defaults.threads;
  if (workers <= 1) {
    for (size_t i = 0; i < specs.size(); ++i)
      if (!is_bad(i)) out[i] = run_job(specs[i]);
    return out;
  }
  std::vector<std::future<JobResult>> futs(specs.size());
  for (size_t i = 0; i < specs.size(); ++i)
    if (!is_bad(i))
      futs[i] = std::async(std::launch::async,
                           [&specs, i] { return run_job(specs[i]); });
  for (size_t i = 0; i < specs.size(); ++i)
    if (!is_bad(i)) out[i] = futs[i].get();
  return out;
}

}  // namespace primage
