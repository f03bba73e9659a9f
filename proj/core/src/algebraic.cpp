#include "primage/algebraic.hpp"

#include <algorithm>
#include <sstream>

#include "primage/error.hpp"

namespace primage {

namespace {

// Continued-fraction convergents of x (a rational) with denominator <= bound,
// in order. Any rational near enough to x with a small denominator is one of
// these.
std::vector<Rat> convergents_with_den_bound(const Rat& x, const mpz_class& den_bound) {
  std::vector<Rat> out;
  mpz_class pm2(0), qm2(1);
  mpz_class pm1(1), qm1(0);
  mpz_class num = x.raw().get_num();
  mpz_class den = x.raw().get_den();
  while (den != 0) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class p = a * pm1 + pm2;
    mpz_class q = a * qm1 + qm2;
    if (q > den_bound) break;
    out.push_back(Rat(mpq_class(p) / mpq_class(q)));
    pm2 = pm1; qm2 = qm1;
    pm1 = p; qm1 = q;
    num = den;
    den = r;
  }
  return out;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(const Rat& r)
    : w_(UPoly({-r, Rat(1)})), lo_(r - Rat(1)), hi_(r + Rat(1)), exact_(r) {}

AlgebraicNumber::AlgebraicNumber(UPoly definer, Rat lo, Rat hi)
    : w_(std::move(definer)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (w_.degree() < 1)
    fail(ErrorKind::InternalContradiction, "algebraic number needs a nonconstant definer");
  w_ = w_.monic();
  if (count_distinct_complex_roots(w_) != w_.degree())
    fail(ErrorKind::InternalContradiction, "algebraic number definer must be squarefree");
  if (!(lo_ < hi_))
    fail(ErrorKind::InternalContradiction, "empty isolating interval");
  if (w_.eval(lo_).is_zero() || w_.eval(hi_).is_zero())
    fail(ErrorKind::InternalContradiction, "isolating interval endpoint is a root");
  auto chain = sturm_chain(w_);
  if (sturm_count(chain, lo_, hi_) != 1)
    fail(ErrorKind::InternalContradiction, "interval does not isolate exactly one root");
  if (w_.degree() == 1) exact_ = -w_.coeff(0);
}

AlgebraicNumber::AlgebraicNumber(const AlgebraicNumber& other) {
  auto s = other.snapshot();
  w_ = other.w_;
  lo_ = s.lo;
  hi_ = s.hi;
  exact_ = s.exact;
}

AlgebraicNumber& AlgebraicNumber::operator=(const AlgebraicNumber& other) {
  if (this == &other) return *this;
  auto s = other.snapshot();
  std::scoped_lock lk(mu_);
  w_ = other.w_;
  lo_ = s.lo;
  hi_ = s.hi;
  exact_ = s.exact;
  rational_bits_tried_ = 0;
  return *this;
}

AlgebraicNumber::Snapshot AlgebraicNumber::snapshot() const {
  std::scoped_lock lk(mu_);
  return {lo_, hi_, exact_};
}

void AlgebraicNumber::store(const Rat& lo, const Rat& hi) const {
  std::scoped_lock lk(mu_);
  if (lo_ < lo) lo_ = lo;
  if (hi < hi_) hi_ = hi;
}

void AlgebraicNumber::store_exact(const Rat& r) const {
  std::scoped_lock lk(mu_);
  exact_ = r;
}

QInterval AlgebraicNumber::interval() const {
  auto s = snapshot();
  if (s.exact) return QInterval::point(*s.exact);
  return QInterval(s.lo, s.hi);
}

std::optional<Rat> AlgebraicNumber::known_rational() const {
  std::scoped_lock lk(mu_);
  return exact_;
}

void AlgebraicNumber::refine_once(Snapshot& s) const {
  if (s.exact) return;
  Rat mid = (s.lo + s.hi) / Rat(2);
  Rat vm = w_.eval(mid);
  if (vm.is_zero()) {
    s.exact = mid;
    store_exact(mid);
    return;
  }
  // A squarefree definer with exactly one root inside changes sign there.
  if (w_.eval(s.lo).sign() * vm.sign() < 0) {
    s.hi = mid;
  } else {
    s.lo = mid;
  }
  store(s.lo, s.hi);
}

void AlgebraicNumber::refine() const {
  auto s = snapshot();
  refine_once(s);
}

void AlgebraicNumber::refine_below(const Rat& eps) const {
  auto s = snapshot();
  while (!s.exact && !(s.hi - s.lo < eps)) refine_once(s);
}

int AlgebraicNumber::sign() const { return compare(Rat(0)); }

int AlgebraicNumber::compare(const Rat& r) const {
  auto s = snapshot();
  if (s.exact) {
    if (*s.exact < r) return -1;
    if (r < *s.exact) return 1;
    return 0;
  }
  if (w_.eval(r).is_zero() && s.lo < r && r < s.hi) {
    store_exact(r);
    return 0;
  }
  while (true) {
    if (s.hi <= r) return -1;
    if (r <= s.lo) return 1;
    refine_once(s);
    if (s.exact) return compare(r);
  }
}

int AlgebraicNumber::compare(const AlgebraicNumber& other) const {
  if (this == &other) return 0;
  auto sa = snapshot();
  if (sa.exact) return -other.compare(*sa.exact);
  auto sb = other.snapshot();
  if (sb.exact) return compare(*sb.exact);
  bool equality_tested = false;
  while (true) {
    if (sa.hi <= sb.lo) return -1;
    if (sb.hi <= sa.lo) return 1;
    if (!equality_tested) {
      equality_tested = true;
      UPoly g = upoly_gcd(w_, other.w_);
      if (g.degree() >= 1) {
        Rat L = std::max(sa.lo, sb.lo);
        Rat H = std::min(sa.hi, sb.hi);
        // Intersection endpoints are endpoints of one operand, hence not
        // roots of its definer, hence not roots of g.
        if (L < H && sturm_count(sturm_chain(g), L, H) >= 1) return 0;
      }
    }
    refine_once(sa);
    other.refine_once(sb);
    if (sa.exact) return -other.compare(*sa.exact);
    if (sb.exact) return compare(*sb.exact);
  }
}

std::optional<Rat> AlgebraicNumber::as_rational(int den_bits) const {
  {
    std::scoped_lock lk(mu_);
    if (exact_) return exact_;
    if (rational_bits_tried_ >= den_bits) return std::nullopt;
  }
  // Interval width below 2^-(2b+2) admits at most one rational with
  // denominator <= 2^b, and that rational is a convergent of the midpoint.
  refine_below(dyadic(2 * den_bits + 2));
  auto s = snapshot();
  if (s.exact) return s.exact;
  mpz_class bound(1);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(den_bits));
  Rat mid = (s.lo + s.hi) / Rat(2);
  for (const Rat& cand : convergents_with_den_bound(mid, bound)) {
    if (s.lo < cand && cand < s.hi && w_.eval(cand).is_zero()) {
      store_exact(cand);
      return cand;
    }
  }
  std::scoped_lock lk(mu_);
  rational_bits_tried_ = std::max(rational_bits_tried_, den_bits);
  return std::nullopt;
}

double AlgebraicNumber::to_double() const {
  auto s = snapshot();
  if (s.exact) return s.exact->to_double();
  refine_below(dyadic(60));
  s = snapshot();
  if (s.exact) return s.exact->to_double();
  return ((s.lo + s.hi) / Rat(2)).to_double();
}

std::string AlgebraicNumber::decimal(int digits) const {
  Rat eps = rat_pow(Rat(1, 10), static_cast<unsigned>(digits + 2));
  refine_below(eps);
  auto s = snapshot();
  Rat v = s.exact ? *s.exact : (s.lo + s.hi) / Rat(2);
  return v.decimal(digits);
}

std::string AlgebraicNumber::str() const {
  auto s = snapshot();
  if (s.exact) return s.exact->str();
  std::ostringstream os;
  os << "root of " << w_.str() << " near " << decimal(6);
  return os.str();
}

int sign_of_upoly_at(const UPoly& q, const AlgebraicNumber& alpha) {
  if (q.is_zero()) return 0;
  auto s = alpha.snapshot();
  if (s.exact) return q.eval(*s.exact).sign();
  if (q.degree() >= 1) {
    UPoly g = upoly_gcd(q, alpha.w_);
    if (g.degree() >= 1) {
      // g divides the definer, so the interval endpoints are not roots of g.
      if (sturm_count(sturm_chain(g), s.lo, s.hi) >= 1) return 0;
    }
  }
  while (true) {
    int sg = qinterval_eval(q, QInterval(s.lo, s.hi)).sign();
    if (sg != 0) return sg;
    alpha.refine_once(s);
    if (s.exact) return q.eval(*s.exact).sign();
  }
}

AlgebraicNumber eval_ratfunc_at_algebraic(const UPoly& n, const UPoly& d,
                                          const AlgebraicNumber& alpha) {
  if (d.is_zero()) fail(ErrorKind::DomainViolation, "zero denominator");
  int sd = sign_of_upoly_at(d, alpha);
  if (sd == 0)
    fail(ErrorKind::DomainViolation, "denominator vanishes at evaluation point");
  auto s0 = alpha.snapshot();
  if (s0.exact) return AlgebraicNumber(n.eval(*s0.exact) / d.eval(*s0.exact));
  if (n.is_zero()) return AlgebraicNumber(Rat(0));
  // Proportional numerator: constant value.
  if (n.degree() == d.degree() && n * d.lc() == d * n.lc())
    return AlgebraicNumber(n.lc() / d.lc());

  // Strip definer roots where n and d both vanish, so the annihilator below
  // has no identically-zero factor.
  UPoly w = alpha.w_;
  UPoly gnd = upoly_gcd(n, d);
  if (gnd.degree() >= 1) {
    UPoly common = upoly_gcd(w, gnd);
    if (common.degree() >= 1) w = upoly_exact_div(w, common).monic();
  }

  // chi(y) = prod over roots t_i of w of (y*d(t_i) - n(t_i)); computed by
  // interpolation from resultant samples (w monic means no leading-term
  // correction). beta = n(alpha)/d(alpha) is a root of chi.
  int m = w.degree();
  std::vector<Rat> xs, ys;
  xs.reserve(static_cast<size_t>(m) + 1);
  ys.reserve(static_cast<size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    Rat yk(k);
    xs.push_back(yk);
    ys.push_back(upoly_resultant(w, d * yk - n));
  }
  // Lagrange interpolation.
  UPoly chi;
  for (int i = 0; i <= m; ++i) {
    if (ys[static_cast<size_t>(i)].is_zero()) continue;
    UPoly li = UPoly::constant(Rat(1));
    Rat denom(1);
    for (int j = 0; j <= m; ++j) {
      if (j == i) continue;
      li = li * UPoly({-xs[static_cast<size_t>(j)], Rat(1)});
      denom *= xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)];
    }
    chi = chi + li * (ys[static_cast<size_t>(i)] / denom);
  }
  if (chi.is_zero())
    fail(ErrorKind::InternalContradiction, "vanishing annihilator for algebraic evaluation");
  UPoly chi_sf = squarefree_part(chi);
  auto chi_chain = sturm_chain(chi_sf);

  auto s = alpha.snapshot();
  while (true) {
    QInterval ai(s.lo, s.hi);
    QInterval D = qinterval_eval(d, ai);
    if (D.sign() == 0) {
      alpha.refine_once(s);
      if (s.exact) return AlgebraicNumber(n.eval(*s.exact) / d.eval(*s.exact));
      continue;
    }
    QInterval B = qinterval_eval(n, ai) / D;
    // Nudge endpoints off roots of chi_sf, widening outward only.
    Rat step = (B.hi - B.lo + Rat(1)) / Rat(16);
    Rat lo = B.lo, hi = B.hi;
    while (chi_sf.eval(lo).is_zero()) {
      lo = B.lo - step;
      step = step / Rat(2);
    }
    step = (B.hi - B.lo + Rat(1)) / Rat(16);
    while (chi_sf.eval(hi).is_zero()) {
      hi = B.hi + step;
      step = step / Rat(2);
    }
    if (sturm_count(chi_chain, lo, hi) == 1) {
      AlgebraicNumber beta(chi_sf, lo, hi);
      return beta;
    }
    alpha.refine_once(s);
    if (s.exact) return AlgebraicNumber(n.eval(*s.exact) / d.eval(*s.exact));
  }
}

Rat rational_strictly_between(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.compare(b) >= 0)
    fail(ErrorKind::InternalContradiction, "rational_strictly_between needs a < b");
  auto sa = a.snapshot();
  auto sb = b.snapshot();
  // Shrink both enclosures until they are disjoint; a < b guarantees progress.
  while (true) {
    Rat ahi = sa.exact ? *sa.exact : sa.hi;
    Rat blo = sb.exact ? *sb.exact : sb.lo;
    if (ahi < blo) return (ahi + blo) / Rat(2);
    if (sa.exact && sb.exact) return (*sa.exact + *sb.exact) / Rat(2);
    if (!sa.exact) a.refine_once(sa);
    if (!sb.exact) b.refine_once(sb);
  }
}

Rat rational_strictly_below(const AlgebraicNumber& a) {
  auto s = a.snapshot();
  return (s.exact ? *s.exact : s.lo) - Rat(1);
}

Rat rational_strictly_above(const AlgebraicNumber& a) {
  auto s = a.snapshot();
  return (s.exact ? *s.exact : s.hi) + Rat(1);
}

std::vector<std::pair<AlgebraicNumber, int>> isolate_real_roots(const UPoly& p) {
  if (p.is_zero())
    fail(ErrorKind::InternalContradiction, "cannot isolate roots of the zero polynomial");
  std::vector<std::pair<AlgebraicNumber, int>> out;
  auto levels = yun_squarefree_decomposition(p);
  for (size_t li = 0; li < levels.size(); ++li) {
    const UPoly& f = levels[li];
    if (f.degree() < 1) continue;
    int mult = static_cast<int>(li) + 1;
    auto chain = sturm_chain(f);
    Rat B = cauchy_root_bound(f);
    // Invariant for (lo, hi) on the stack: f(lo) != 0, f(hi) != 0.
    std::vector<std::pair<Rat, Rat>> stack;
    stack.emplace_back(-B, B);
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      int cnt = sturm_count(chain, lo, hi);
      if (cnt == 0) continue;
      if (cnt == 1) {
        out.emplace_back(AlgebraicNumber(f, lo, hi), mult);
        continue;
      }
      Rat mid = (lo + hi) / Rat(2);
      if (f.eval(mid).is_zero()) {
        out.emplace_back(AlgebraicNumber(mid), mult);
        // Carve out an interval around the exact root mid before recursing.
        Rat delta = (hi - lo) / Rat(4);
        while (f.eval(mid - delta).is_zero() || f.eval(mid + delta).is_zero() ||
               sturm_count(chain, mid - delta, mid + delta) != 1) {
          delta = delta / Rat(2);
        }
        stack.emplace_back(lo, mid - delta);
        stack.emplace_back(mid + delta, hi);
      } else {
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.compare(b.first) < 0;
  });
  return out;
}

}  // namespace primage
