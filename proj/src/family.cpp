#include "specm/family.hpp"

#include <algorithm>
#include <set>

#include "specm/error.hpp"

namespace specm {

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

AccumFamily AccumFamily::make(const Rational& anchor, Side side, const Rational& c, const Rational& r,
                              const Integer& k_min, bool tangential) {
  if (c <= 0) fail(ErrorCode::InvalidArgument, "family scale c must be positive");
  AccumFamily f;
  f.anchor_ = anchor;
  f.side_ = side;
  f.c_ = c;
  Integer shift = ceil_of(r);
  f.r_ = r - Rational(shift);
  Integer k = k_min + shift;
  // Need k + r > 0 with r in (-1, 0]: k >= 1.
  if (k < 1) k = 1;
  f.k_min_ = k;
  f.tangential_ = tangential;
  return f;
}

Rational AccumFamily::member(const Integer& k) const {
  Rational d = c_ / (Rational(k) + r_);
  return side_ == Side::Left ? Rational(anchor_ - d) : Rational(anchor_ + d);
}

std::optional<Integer> AccumFamily::index_of(const Rational& x) const {
  Rational d = side_ == Side::Left ? Rational(anchor_ - x) : Rational(x - anchor_);
  if (d <= 0) return std::nullopt;
  Rational k = c_ / d - r_;
  if (k.get_den() != 1) return std::nullopt;
  Integer ki = k.get_num();
  if (ki < k_min_) return std::nullopt;
  return ki;
}

bool AccumFamily::contains(const AlgebraicReal& x) const {
  return x.is_rational() && contains(x.rational());
}

AccumFamily AccumFamily::with_k_min(const Integer& k) const {
  AccumFamily f = *this;
  f.k_min_ = std::max(k, Integer(1));
  return f;
}

AccumFamily AccumFamily::with_tangential(bool t) const {
  AccumFamily f = *this;
  f.tangential_ = t;
  return f;
}

std::optional<Integer> AccumFamily::first_index_past(const AlgebraicReal& bound, bool strict) const {
  AlgebraicReal a(anchor_);
  int ab = compare(bound, a);
  if (side_ == Side::Left && ab >= 0) return std::nullopt;
  if (side_ == Side::Right && ab <= 0) return std::nullopt;
  auto past = [&](const Integer& k) {
    int c = compare(AlgebraicReal(member(k)), bound);
    if (side_ == Side::Left) return strict ? c > 0 : c >= 0;
    return strict ? c < 0 : c <= 0;
  };
  if (past(k_min_)) return k_min_;
  Integer lo = k_min_, step = 1, hi = k_min_ + 1;
  while (!past(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  // past(lo) false, past(hi) true
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (past(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<Rational> AccumFamily::members_upto(const Integer& k_max) const {
  std::vector<Rational> out;
  for (Integer k = k_min_; k <= k_max; ++k) out.push_back(member(k));
  return out;
}

bool AccumFamily::same_tail(const AccumFamily& o) const {
  return anchor_ == o.anchor_ && side_ == o.side_ && c_ == o.c_ && r_ == o.r_;
}

bool operator==(const AccumFamily& a, const AccumFamily& b) {
  return a.same_tail(b) && a.k_min_ == b.k_min_ && a.tangential_ == b.tangential_;
}

std::string AccumFamily::to_string() const {
  return "family(" + specm::to_string(anchor_) + ", " + specm::to_string(side_) + ", c=" + specm::to_string(c_) +
         ", r=" + specm::to_string(r_) + ", k>=" + k_min_.get_str() + (tangential_ ? ", tangential" : "") + ")";
}

bool family_less(const AccumFamily& a, const AccumFamily& b) {
  if (a.anchor() != b.anchor()) return a.anchor() < b.anchor();
  if (a.side() != b.side()) return a.side() == Side::Left;
  if (a.c() != b.c()) return a.c() < b.c();
  if (a.r() != b.r()) return a.r() < b.r();
  if (a.k_min() != b.k_min()) return a.k_min() < b.k_min();
  return !a.tangential() && b.tangential();
}

namespace {

Integer den_lcm(std::initializer_list<Rational> qs) {
  Integer d = 1;
  for (const auto& q : qs) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  return d;
}

/// Solutions of c2*k - c1*j = c1*r2 - c2*r1 as (k0, j0, dk, dj) with
/// k = k0 + dk*t, j = j0 + dj*t.
struct Overlap {
  Integer k0, j0, dk, dj;
};

std::optional<Overlap> solve_overlap(const AccumFamily& p, const AccumFamily& q) {
  const Rational &c1 = p.c(), &r1 = p.r(), &c2 = q.c(), &r2 = q.r();
  Rational rhs = c1 * r2 - c2 * r1;
  Integer D = den_lcm({c1, c2, rhs});
  Integer A = Rational(c2 * D).get_num(), B = Rational(c1 * D).get_num(), C = Rational(rhs * D).get_num();
  // A k - B j = C
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  if (C % g != 0) return std::nullopt;
  Integer m = C / g;
  // A s + B t = g  =>  A (s m) - B (-t m) = C
  return Overlap{s * m, -t * m, B / g, A / g};
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer int_gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer int_lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Residues of the tails in w = (k + r)/c space modulo a common step.
struct Residues {
  Rational step;
  std::set<Rational> offsets;
};

Rational common_step(const std::vector<AccumFamily>& a, const std::vector<AccumFamily>& b) {
  Integer num = 1, den = 0;
  bool first = true;
  auto absorb = [&](const AccumFamily& f) {
    Rational s = 1 / f.c();
    if (first) {
      num = s.get_num();
      den = s.get_den();
      first = false;
    } else {
      num = int_lcm(num, s.get_num());
      den = int_gcd(den, s.get_den());
    }
  };
  for (const auto& f : a) absorb(f);
  for (const auto& f : b) absorb(f);
  Rational out(num, first ? Integer(1) : den);
  out.canonicalize();
  return out;
}

Residues residues(const std::vector<AccumFamily>& fs, const Rational& step) {
  Residues res{step, {}};
  for (const auto& f : fs) {
    Rational n = step * f.c();
    if (n.get_den() != 1) fail(ErrorCode::InvalidArgument, "step is not a multiple of the family step");
    long count = n.get_num().get_si();
    for (long j = 0; j < count; ++j) {
      Rational w = (f.r() + j) / f.c();
      Rational q = w / step;
      Rational off = w - Rational(floor_of(q)) * step;
      res.offsets.insert(off);
    }
  }
  return res;
}

bool same_place(const AccumFamily& a, const AccumFamily& b) { return a.anchor() == b.anchor() && a.side() == b.side(); }

}  // namespace

bool families_eventually_disjoint(const AccumFamily& p, const AccumFamily& q) {
  if (!same_place(p, q)) return true;
  return !solve_overlap(p, q).has_value();
}

std::optional<AccumFamily> family_intersection(const AccumFamily& p, const AccumFamily& q) {
  if (!same_place(p, q)) return std::nullopt;
  auto ov = solve_overlap(p, q);
  if (!ov) return std::nullopt;
  Integer t_min = std::max(ceil_div(p.k_min() - ov->k0, ov->dk), ceil_div(q.k_min() - ov->j0, ov->dj));
  // w = (k + r1)/c1 with k = k0 + dk t  =>  family c' = c1/dk, r' = (k0 + r1)/dk
  Rational dk(ov->dk);
  Rational c = p.c() / dk;
  Rational r = (Rational(ov->k0) + p.r()) / dk;
  return AccumFamily::make(p.anchor(), p.side(), c, r, t_min, p.tangential() && q.tangential());
}

bool family_tail_subset(const AccumFamily& g, const AccumFamily& f) {
  if (!same_place(g, f)) return false;
  Rational n = f.c() / g.c();
  if (n.get_den() != 1 || n <= 0) return false;
  Rational off = n * g.r() - f.r();
  return off.get_den() == 1;
}

bool family_union_subset(const std::vector<AccumFamily>& a, const std::vector<AccumFamily>& b) {
  for (const auto& g : a) {
    std::vector<AccumFamily> here;
    for (const auto& f : b)
      if (same_place(f, g)) here.push_back(f);
    if (here.empty()) return false;
    std::vector<AccumFamily> one{g};
    Rational step = common_step(one, here);
    auto rg = residues(one, step), rf = residues(here, step);
    if (!std::includes(rf.offsets.begin(), rf.offsets.end(), rg.offsets.begin(), rg.offsets.end())) return false;
  }
  return true;
}

bool family_tail_subset(const AccumFamily& g, const std::vector<AccumFamily>& fs) {
  return family_union_subset({g}, fs);
}

bool family_union_equal(const std::vector<AccumFamily>& a, const std::vector<AccumFamily>& b) {
  return family_union_subset(a, b) && family_union_subset(b, a);
}

std::vector<AccumFamily> family_union_intersection(const std::vector<AccumFamily>& a,
                                                   const std::vector<AccumFamily>& b) {
  std::vector<AccumFamily> out;
  for (const auto& f : a)
    for (const auto& g : b)
      if (auto h = family_intersection(f, g)) out.push_back(*h);
  return simplify_family_union(std::move(out));
}

std::vector<AccumFamily> simplify_family_union(std::vector<AccumFamily> fs) {
  std::sort(fs.begin(), fs.end(), family_less);
  std::vector<AccumFamily> out;
  for (size_t i = 0; i < fs.size(); ++i) {
    bool covered = false;
    for (size_t j = 0; j < fs.size() && !covered; ++j) {
      if (i == j || !family_tail_subset(fs[i], fs[j])) continue;
      // Keep the earlier of two identical tails.
      covered = !family_tail_subset(fs[j], fs[i]) || j < i;
    }
    if (!covered) out.push_back(fs[i]);
  }
  return out;
}

std::vector<AccumFamily> split_family(const AccumFamily& f, int parts) {
  std::vector<AccumFamily> out;
  Rational n(parts);
  for (int j = 0; j < parts; ++j) {
    Rational r = (Rational(f.k_min()) + j + f.r()) / n;
    out.push_back(AccumFamily::make(f.anchor(), f.side(), f.c() / n, r, 0, f.tangential()));
  }
  return out;
}

}  // namespace specm
