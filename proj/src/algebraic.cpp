#include "specm/algebraic.hpp"

#include <algorithm>

#include "specm/error.hpp"

namespace specm {

AlgebraicReal::AlgebraicReal(const Rational& q) : poly_(Poly::linear_root(q)), lo_(q), hi_(q) {}

AlgebraicReal AlgebraicReal::from_isolating(Poly sqfree, Rational lo, Rational hi) {
  AlgebraicReal a;
  a.poly_ = std::move(sqfree);
  a.lo_ = std::move(lo);
  a.hi_ = std::move(hi);
  return a;
}

AlgebraicReal AlgebraicReal::bisected() const {
  if (is_rational()) return *this;
  Rational m = (lo_ + hi_) / 2;
  int sm = poly_.sign_at(m);
  if (sm == 0) return AlgebraicReal(m);
  AlgebraicReal out = *this;
  if (poly_.sign_at(lo_) != sm)
    out.hi_ = m;
  else
    out.lo_ = m;
  return out;
}

AlgebraicReal AlgebraicReal::refined(const Rational& max_width) const {
  AlgebraicReal a = *this;
  while (!a.is_rational() && a.hi_ - a.lo_ > max_width) a = a.bisected();
  return a;
}

double AlgebraicReal::approx() const {
  if (is_rational()) return lo_.get_d();
  AlgebraicReal a = refined(Rational(1, 1 << 30));
  return Rational((a.lo_ + a.hi_) / 2).get_d();
}

std::string AlgebraicReal::to_string() const {
  if (is_rational()) return specm::to_string(lo_);
  return "root of " + poly_.to_string() + " in (" + specm::to_string(lo_) + ", " + specm::to_string(hi_) + ")";
}

namespace {

int cmp_rat(const Rational& a, const Rational& b) { return a < b ? -1 : (a > b ? 1 : 0); }

/// compare(x, r) for irrational x.
int compare_with_rational(AlgebraicReal x, const Rational& r) {
  while (true) {
    if (x.is_rational()) return cmp_rat(x.rational(), r);
    if (r <= x.lo()) return 1;
    if (r >= x.hi()) return -1;
    if (x.poly().eval(r) == 0) return 0;
    x = x.bisected();
  }
}

/// Roots of a square-free q in the open interval (a, b); endpoints may be roots.
int count_open(const Poly& q, const std::vector<Poly>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b) - (q.eval(b) == 0 ? 1 : 0);
}

Integer integer_lead(const Poly& q) {
  Integer den = 1;
  for (const auto& c : q.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  std::vector<Integer> ints;
  for (const auto& c : q.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(v);
  }
  Integer l = ints.back() / g;
  return abs(l);
}

struct Isolator {
  const Poly& q;
  std::vector<Poly> chain;
  Integer lead;
  std::vector<AlgebraicReal>& out;

  void single(Rational a, Rational b) {
    // Exactly one root in (a, b). Shrink until the endpoints are non-roots
    // and (b - a) * lead < 1, so a rational root p/s (s | lead) is unique.
    while (true) {
      bool a_root = q.eval(a) == 0, b_root = q.eval(b) == 0;
      if (!a_root && !b_root && (b - a) * lead < 1) break;
      Rational m = (a + b) / 2;
      int sm = q.sign_at(m);
      if (sm == 0) {
        out.emplace_back(m);
        return;
      }
      bool left;
      if (!a_root)
        left = q.sign_at(a) != sm;
      else if (!b_root)
        left = q.sign_at(b) == sm;
      else
        left = count_open(q, chain, a, m) == 1;
      if (left)
        b = m;
      else
        a = m;
    }
    Rational la = a * lead;
    Integer t = floor_of(la) + 1;
    if (Rational(t) < b * lead) {
      Rational cand(t, lead);
      cand.canonicalize();
      if (q.eval(cand) == 0) {
        out.emplace_back(cand);
        return;
      }
    }
    out.push_back(AlgebraicReal::from_isolating(q, a, b));
  }

  void run(const Rational& a, const Rational& b, int n) {
    if (n == 0) return;
    if (n == 1) {
      single(a, b);
      return;
    }
    Rational m = (a + b) / 2;
    int nl = count_open(q, chain, a, m);
    bool mr = q.eval(m) == 0;
    run(a, m, nl);
    if (mr) out.emplace_back(m);
    run(m, b, n - nl - (mr ? 1 : 0));
  }
};

}  // namespace

Cmp alg_compare(const AlgebraicReal& a, const AlgebraicReal& b) {
  int c = compare(a, b);
  return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
}

int compare(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (a.is_rational() && b.is_rational()) return cmp_rat(a.rational(), b.rational());
  if (b.is_rational()) return compare_with_rational(a, b.rational());
  if (a.is_rational()) return -compare_with_rational(b, a.rational());
  if (a.hi() <= b.lo()) return -1;
  if (b.hi() <= a.lo()) return 1;
  Poly g = gcd(a.poly(), b.poly());
  if (g.degree() >= 1) {
    Rational lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    auto chain = sturm_sequence(g);
    if (lo < hi && count_open(g, chain, lo, hi) > 0) return 0;
  }
  AlgebraicReal x = a, y = b;
  while (true) {
    if (x.is_rational() || y.is_rational()) return compare(x, y);
    if (x.hi() <= y.lo()) return -1;
    if (y.hi() <= x.lo()) return 1;
    x = x.bisected();
    y = y.bisected();
  }
}

int sign_at(const Poly& p, const AlgebraicReal& a) {
  if (a.is_rational()) return p.sign_at(a.rational());
  if (p.is_zero()) return 0;
  Poly g = gcd(p, a.poly());
  if (g.degree() >= 1) {
    auto chain = sturm_sequence(g);
    if (count_open(g, chain, a.lo(), a.hi()) > 0) return 0;
  }
  AlgebraicReal x = a;
  while (true) {
    if (x.is_rational()) return p.sign_at(x.rational());
    auto [l, h] = poly_range_bound(p, x.lo(), x.hi());
    if (l > 0) return 1;
    if (h < 0) return -1;
    x = x.bisected();
  }
}

Rational root_bound(const Poly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs_of(p.coeff(i) / p.lead()));
  return m + 1;
}

std::vector<AlgebraicReal> isolate_real_roots(const Poly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot isolate the roots of the zero polynomial");
  if (lo > hi) fail(ErrorCode::InvalidArgument, "empty root window");
  std::vector<AlgebraicReal> out;
  Poly q = squarefree_part(p);
  if (q.degree() <= 0) return out;
  if (lo == hi) {
    if (q.eval(lo) == 0) out.emplace_back(lo);
    return out;
  }
  Isolator iso{q, sturm_sequence(q), integer_lead(q), out};
  if (q.eval(lo) == 0) out.emplace_back(lo);
  iso.run(lo, hi, count_open(q, iso.chain, lo, hi));
  if (q.eval(hi) == 0) out.emplace_back(hi);
  return out;
}

Rational rational_between(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (a.is_rational() && b.is_rational()) return (a.rational() + b.rational()) / 2;
  AlgebraicReal x = a, y = b;
  while (true) {
    const Rational& ub = x.is_rational() ? x.rational() : x.hi();
    const Rational& lb = y.is_rational() ? y.rational() : y.lo();
    if (ub < lb) return (ub + lb) / 2;
    if (ub == lb && !x.is_rational() && !y.is_rational()) return ub;
    if (!x.is_rational() && (y.is_rational() || x.hi() - x.lo() >= y.hi() - y.lo()))
      x = x.bisected();
    else
      y = y.bisected();
  }
}

namespace {
bool inside(const AlgebraicReal& r, const AlgInterval& iv) {
  int cl = compare(r, iv.lo), ch = compare(r, iv.hi);
  bool lo_ok = cl > 0 || (cl == 0 && iv.lo_closed);
  bool hi_ok = ch < 0 || (ch == 0 && iv.hi_closed);
  return lo_ok && hi_ok;
}
}  // namespace

SignSummary poly_sign_summary(const Poly& p, const AlgInterval& iv) {
  SignSummary s;
  if (p.is_zero()) {
    s.kind = SignKind::HasZero;
    s.identically_zero = true;
    return s;
  }
  if (iv.lo == iv.hi) {
    int sg = sign_at(p, iv.lo);
    if (sg == 0) {
      s.kind = SignKind::HasZero;
      s.roots.push_back(iv.lo);
    } else {
      s.kind = sg > 0 ? SignKind::AllPositive : SignKind::AllNegative;
    }
    return s;
  }
  for (auto& r : isolate_real_roots(p, iv.lo.lo(), iv.hi.hi()))
    if (inside(r, iv)) s.roots.push_back(r);
  std::vector<AlgebraicReal> marks;
  marks.push_back(iv.lo);
  for (auto& r : s.roots) marks.push_back(r);
  marks.push_back(iv.hi);
  bool pos = false, neg = false;
  for (size_t i = 0; i + 1 < marks.size(); ++i) {
    if (compare(marks[i], marks[i + 1]) >= 0) continue;
    int sg = p.sign_at(rational_between(marks[i], marks[i + 1]));
    pos = pos || sg > 0;
    neg = neg || sg < 0;
  }
  if (s.roots.empty())
    s.kind = neg ? SignKind::AllNegative : SignKind::AllPositive;
  else
    s.kind = (pos && neg) ? SignKind::MixedWithZeros : SignKind::HasZero;
  return s;
}

std::string to_string(SignKind k) {
  switch (k) {
    case SignKind::AllPositive: return "AllPositive";
    case SignKind::AllNegative: return "AllNegative";
    case SignKind::HasZero: return "HasZero";
    case SignKind::MixedWithZeros: return "MixedWithZeros";
  }
  return "?";
}

}  // namespace specm
