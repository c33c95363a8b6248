#include "specm/zeroset.hpp"

#include <algorithm>

#include "specm/error.hpp"

namespace specm {

namespace {

using OptA = std::optional<AlgebraicReal>;

constexpr long kMaxPoints = 100000;

/// Lower ends: nullopt is -inf.
int cmp_lo(const OptA& a, const OptA& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  return compare(*a, *b);
}

/// Upper ends: nullopt is +inf.
int cmp_hi(const OptA& a, const OptA& b) {
  if (!a || !b) return (b ? 1 : 0) - (a ? 1 : 0);
  return compare(*a, *b);
}

bool iv_nonempty(const ZInterval& iv) {
  if (!iv.lo || !iv.hi) return true;
  int c = compare(*iv.lo, *iv.hi);
  return c < 0 || (c == 0 && iv.lo_closed && iv.hi_closed);
}

bool iv_degenerate(const ZInterval& iv) { return iv.lo && iv.hi && compare(*iv.lo, *iv.hi) == 0; }

bool iv_contains(const ZInterval& iv, const AlgebraicReal& x) {
  if (iv.lo) {
    int c = compare(x, *iv.lo);
    if (c < 0 || (c == 0 && !iv.lo_closed)) return false;
  }
  if (iv.hi) {
    int c = compare(x, *iv.hi);
    if (c > 0 || (c == 0 && !iv.hi_closed)) return false;
  }
  return true;
}

bool iv_subset(const ZInterval& x, const ZInterval& y) {
  if (y.lo) {
    if (!x.lo) return false;
    int c = compare(*x.lo, *y.lo);
    if (c < 0 || (c == 0 && x.lo_closed && !y.lo_closed)) return false;
  }
  if (y.hi) {
    if (!x.hi) return false;
    int c = compare(*x.hi, *y.hi);
    if (c > 0 || (c == 0 && x.hi_closed && !y.hi_closed)) return false;
  }
  return true;
}

ZInterval iv_intersect(const ZInterval& a, const ZInterval& b) {
  ZInterval r;
  int cl = cmp_lo(a.lo, b.lo);
  if (cl > 0) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (cl < 0) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  int ch = cmp_hi(a.hi, b.hi);
  if (ch < 0) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (ch > 0) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

/// a starts no later than b; true when their union is one interval.
bool iv_joinable(const ZInterval& a, const ZInterval& b) {
  if (!a.hi || !b.lo) return true;
  int c = compare(*a.hi, *b.lo);
  return c > 0 || (c == 0 && (a.hi_closed || b.lo_closed));
}

/// Does iv contain (x - d, x) (Left) or (x, x + d) (Right) for some d > 0?
bool iv_covers_side(const ZInterval& iv, const Rational& x, Side side) {
  AlgebraicReal ax(x);
  if (side == Side::Left) return (!iv.lo || compare(*iv.lo, ax) < 0) && (!iv.hi || compare(*iv.hi, ax) >= 0);
  return (!iv.lo || compare(*iv.lo, ax) <= 0) && (!iv.hi || compare(*iv.hi, ax) > 0);
}

void check_count(const Integer& n) {
  if (n > kMaxPoints) fail(ErrorCode::TooLarge, "more than 100000 explicit family members requested");
}

void append(ZeroSet& into, const ZeroSet& from) {
  into.intervals.insert(into.intervals.end(), from.intervals.begin(), from.intervals.end());
  into.points.insert(into.points.end(), from.points.begin(), from.points.end());
  into.families.insert(into.families.end(), from.families.begin(), from.families.end());
}

ZInterval open_span(const Span& s) {
  ZInterval iv;
  if (s.lo) iv.lo = AlgebraicReal(*s.lo);
  if (s.hi) iv.hi = AlgebraicReal(*s.hi);
  iv.lo_closed = iv.hi_closed = false;
  return iv;
}

bool rational_sqrt(const Rational& t, Rational& out) {
  if (t < 0) return false;
  if (!mpz_perfect_square_p(t.get_num_mpz_t()) || !mpz_perfect_square_p(t.get_den_mpz_t())) return false;
  Integer n = sqrt(Integer(t.get_num())), d = sqrt(Integer(t.get_den()));
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

/// Zero families of scale * osc^power + shift on one side of the anchor.
std::vector<AccumFamily> osc_zero_families(const OscTerm& t, Side side) {
  const AccumFamily& base = t.osc.family(side);
  const Rational& z = t.osc.anchor;
  Rational ap = t.power == 1 ? t.osc.amplitude : t.osc.amplitude * t.osc.amplitude;
  Rational lvl = -t.shift / (t.scale * ap);
  auto period2 = [&](const Rational& u0, bool tangential) {
    return AccumFamily::make(z, side, base.c() / 2, (u0 + base.r()) / 2, Integer(-1000000), tangential);
  };
  auto period1 = [&](const Rational& u0, bool tangential) {
    return AccumFamily::make(z, side, base.c(), u0 + base.r(), Integer(-1000000), tangential);
  };
  std::vector<AccumFamily> out;
  if (t.power == 1) {
    if (lvl == 0) {
      out.push_back(period1(0, false));
    } else if (lvl == 1) {
      out.push_back(period2(Rational(1, 2), true));
    } else if (lvl == -1) {
      out.push_back(period2(Rational(3, 2), true));
    } else if (lvl > 0 && lvl < 1) {
      out.push_back(period2(lvl / 2, false));
      out.push_back(period2(1 - lvl / 2, false));
    } else if (lvl < 0 && lvl > -1) {
      out.push_back(period2(1 - lvl / 2, false));
      out.push_back(period2(2 + lvl / 2, false));
    }
    return out;
  }
  if (lvl == 0) {
    out.push_back(period1(0, true));
  } else if (lvl == 1) {
    out.push_back(period1(Rational(1, 2), true));
  } else if (lvl > 0 && lvl < 1) {
    Rational s;
    if (!rational_sqrt(lvl, s))
      fail(ErrorCode::OutsideFragment, "zeros of a squared oscillator at an irrational level");
    for (const Rational& u0 : std::vector<Rational>{s / 2, 1 - s / 2, 1 + s / 2, 2 - s / 2}) out.push_back(period2(u0, false));
  }
  return out;
}

/// f's members inside b, decided exactly.
bool family_covered(const AccumFamily& f, const ZeroSet& b) {
  const Rational& z = f.anchor();
  Side side = f.side();
  auto prefix_in_b = [&](const Integer& upto) {
    check_count(upto - f.k_min());
    for (Integer k = f.k_min(); k < upto; ++k)
      if (!b.contains(f.member(k))) return false;
    return true;
  };
  for (const auto& iv : b.intervals) {
    if (!iv_covers_side(iv, z, side)) continue;
    const OptA& far = side == Side::Left ? iv.lo : iv.hi;
    bool far_closed = side == Side::Left ? iv.lo_closed : iv.hi_closed;
    if (!far) return true;
    auto k = f.first_index_past(*far, !far_closed);
    return prefix_in_b(k ? *k : f.k_min());
  }
  Integer K = f.k_min();
  auto raise = [&](const std::optional<Integer>& k) {
    if (k && *k > K) K = *k;
  };
  for (const auto& iv : b.intervals) {
    const OptA& near = side == Side::Left ? iv.hi : iv.lo;
    if (near) raise(f.first_index_past(*near, true));
  }
  for (const auto& p : b.points) raise(f.first_index_past(p, true));
  std::vector<AccumFamily> here;
  for (const auto& g : b.families) {
    if (g.anchor() != z || g.side() != side) continue;
    here.push_back(g);
    Rational wg = (Rational(g.k_min()) + g.r()) / g.c();
    raise(ceil_of(wg * f.c() - f.r()));
  }
  if (here.empty()) return false;
  return prefix_in_b(K) && family_union_subset({f}, here);
}

std::string end_string(const OptA& a, bool lo) {
  if (!a) return lo ? "-inf" : "inf";
  return a->to_string();
}

}  // namespace

// ---------------------------------------------------------------- ZeroSet

ZeroSet ZeroSet::whole(const Domain& d) {
  ZInterval iv;
  if (d.lo) iv.lo = AlgebraicReal(*d.lo);
  if (d.hi) iv.hi = AlgebraicReal(*d.hi);
  iv.lo_closed = d.lo_closed;
  iv.hi_closed = d.hi_closed;
  return interval(iv);
}

ZeroSet ZeroSet::point(const AlgebraicReal& x) {
  ZeroSet z;
  z.points.push_back(x);
  return z;
}

ZeroSet ZeroSet::interval(ZInterval iv) {
  ZeroSet z;
  z.intervals.push_back(std::move(iv));
  z.normalize();
  return z;
}

ZeroSet ZeroSet::family(const AccumFamily& f) {
  ZeroSet z;
  z.families.push_back(f);
  return z;
}

bool ZeroSet::contains(const AlgebraicReal& x) const {
  for (const auto& iv : intervals)
    if (iv_contains(iv, x)) return true;
  for (const auto& p : points)
    if (p == x) return true;
  for (const auto& f : families)
    if (f.contains(x)) return true;
  return false;
}

bool ZeroSet::covers_side(const Rational& x, Side side) const {
  return std::any_of(intervals.begin(), intervals.end(),
                     [&](const ZInterval& iv) { return iv_covers_side(iv, x, side); });
}

bool ZeroSet::accumulates_at(const Rational& x, Side side) const {
  if (covers_side(x, side)) return true;
  return std::any_of(families.begin(), families.end(),
                     [&](const AccumFamily& f) { return f.anchor() == x && f.side() == side; });
}

void ZeroSet::normalize() {
  while (true) {
    // Intervals: drop empties, degenerate ones become points, sort and merge.
    std::vector<ZInterval> ivs;
    for (auto& iv : intervals) {
      if (!iv_nonempty(iv)) continue;
      if (iv_degenerate(iv))
        points.push_back(*iv.lo);
      else
        ivs.push_back(iv);
    }
    std::sort(ivs.begin(), ivs.end(), [](const ZInterval& a, const ZInterval& b) {
      int c = cmp_lo(a.lo, b.lo);
      if (c != 0) return c < 0;
      return a.lo_closed && !b.lo_closed;
    });
    intervals.clear();
    for (auto& iv : ivs) {
      if (!intervals.empty() && iv_joinable(intervals.back(), iv)) {
        ZInterval& last = intervals.back();
        if (cmp_lo(last.lo, iv.lo) == 0) last.lo_closed = last.lo_closed || iv.lo_closed;
        int ch = cmp_hi(last.hi, iv.hi);
        if (ch < 0) {
          last.hi = iv.hi;
          last.hi_closed = iv.hi_closed;
        } else if (ch == 0) {
          last.hi_closed = last.hi_closed || iv.hi_closed;
        }
      } else {
        intervals.push_back(iv);
      }
    }

    // Points: absorb into intervals, closing open ends they sit on.
    bool closed_end = false;
    std::vector<AlgebraicReal> pts;
    for (auto& p : points) {
      bool absorbed = false;
      for (auto& iv : intervals) {
        if (iv_contains(iv, p)) {
          absorbed = true;
        } else if (iv.lo && !iv.lo_closed && compare(*iv.lo, p) == 0) {
          iv.lo_closed = absorbed = closed_end = true;
        } else if (iv.hi && !iv.hi_closed && compare(*iv.hi, p) == 0) {
          iv.hi_closed = absorbed = closed_end = true;
        }
        if (absorbed) break;
      }
      if (!absorbed) pts.push_back(p);
    }
    points = std::move(pts);
    if (closed_end) continue;

    // Families whose anchor side lies inside an interval leave finitely many points.
    bool new_points = false;
    std::vector<AccumFamily> fams;
    for (const auto& f : families) {
      const ZInterval* cover = nullptr;
      for (const auto& iv : intervals)
        if (iv_covers_side(iv, f.anchor(), f.side())) cover = &iv;
      if (!cover) {
        fams.push_back(f);
        continue;
      }
      const OptA& far = f.side() == Side::Left ? cover->lo : cover->hi;
      bool far_closed = f.side() == Side::Left ? cover->lo_closed : cover->hi_closed;
      if (!far) continue;
      auto k = f.first_index_past(*far, !far_closed);
      Integer upto = k ? *k : f.k_min();
      check_count(upto - f.k_min());
      for (Integer j = f.k_min(); j < upto; ++j) {
        points.emplace_back(f.member(j));
        new_points = true;
      }
    }
    families = std::move(fams);
    if (new_points) continue;
    break;
  }

  // Extend families backwards over members already present.
  for (auto& f : families) {
    while (f.k_min() > 1) {
      Rational m = f.member(f.k_min() - 1);
      bool present = std::any_of(points.begin(), points.end(), [&](const AlgebraicReal& p) { return p == m; }) ||
                     std::any_of(intervals.begin(), intervals.end(),
                                 [&](const ZInterval& iv) { return iv_contains(iv, m); });
      if (!present) break;
      f = f.with_k_min(f.k_min() - 1);
    }
  }
  points.erase(std::remove_if(points.begin(), points.end(),
                              [&](const AlgebraicReal& p) {
                                return std::any_of(families.begin(), families.end(),
                                                   [&](const AccumFamily& f) { return f.contains(p); });
                              }),
               points.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Drop families contained in another family.
  std::sort(families.begin(), families.end(), family_less);
  std::vector<AccumFamily> kept;
  for (size_t i = 0; i < families.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < families.size() && !redundant; ++j) {
      if (i == j) continue;
      const AccumFamily &f = families[i], &g = families[j];
      if (!family_tail_subset(f, g) || !g.contains(f.first())) continue;
      bool mutual = family_tail_subset(g, f) && f.contains(g.first());
      redundant = !mutual || j < i;
    }
    if (!redundant) kept.push_back(families[i]);
  }
  families = std::move(kept);
}

std::string ZeroSet::to_string() const {
  std::vector<std::string> parts;
  for (const auto& iv : intervals)
    parts.push_back(std::string(iv.lo_closed ? "[" : "(") + end_string(iv.lo, true) + ", " + end_string(iv.hi, false) +
                    (iv.hi_closed ? "]" : ")"));
  if (!points.empty()) {
    std::string s = "{";
    for (size_t i = 0; i < points.size(); ++i) s += (i ? ", " : "") + points[i].to_string();
    parts.push_back(s + "}");
  }
  for (const auto& f : families) parts.push_back(f.to_string());
  if (parts.empty()) return "{}";
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? " u " : "") + parts[i];
  return out;
}

// ---------------------------------------------------------------- construction

ZeroSet family_within(const AccumFamily& f, const ZInterval& iv) {
  bool left = f.side() == Side::Left;
  const OptA& far = left ? iv.lo : iv.hi;
  const OptA& near = left ? iv.hi : iv.lo;
  bool far_closed = left ? iv.lo_closed : iv.hi_closed;
  bool near_closed = left ? iv.hi_closed : iv.lo_closed;
  Integer k0 = f.k_min();
  if (far) {
    auto k = f.first_index_past(*far, !far_closed);
    if (!k) return ZeroSet::empty();
    k0 = *k;
  }
  std::optional<Integer> k1;
  if (near) k1 = f.first_index_past(*near, near_closed);
  if (!k1) return ZeroSet::family(f.with_k_min(k0));
  ZeroSet out;
  if (*k1 > k0) check_count(*k1 - k0);
  for (Integer k = k0; k < *k1; ++k) out.points.emplace_back(f.member(k));
  return out;
}

ZeroSet zero_set_of_piece(const PieceExpr& e, const Span& s) {
  ZInterval span = open_span(s);
  ZeroSet out;
  if (e.is_poly()) {
    const Poly& p = e.poly();
    if (p.is_zero()) {
      out.intervals.push_back(span);
    } else if (s.bounded()) {
      for (auto& r : isolate_real_roots(p, *s.lo, *s.hi))
        if (compare(r, *s.lo) > 0 && compare(r, *s.hi) < 0) out.points.push_back(r);
    }
    return out;
  }
  const OscTerm& t = e.osc();
  Side side = (s.hi && *s.hi <= t.osc.anchor) ? Side::Left : Side::Right;
  for (const auto& fam : osc_zero_families(t, side)) append(out, family_within(fam, span));
  out.normalize();
  return out;
}

ZeroSet zero_set(const PiecewiseFn& f) {
  ZeroSet z;
  for (size_t i = 0; i < f.piece_count(); ++i) append(z, zero_set_of_piece(f.pieces()[i], f.span(i)));
  for (size_t i = 0; i < f.breakpoints().size(); ++i)
    if (f.point_values()[i] == 0) z.points.emplace_back(f.breakpoints()[i]);
  const Domain& d = f.domain();
  if (d.lo_closed && piece_value(f.pieces().front(), *d.lo) == 0) z.points.emplace_back(*d.lo);
  if (d.hi_closed && piece_value(f.pieces().back(), *d.hi) == 0) z.points.emplace_back(*d.hi);
  z.normalize();
  return z;
}

// ---------------------------------------------------------------- set algebra

ZeroSet zs_intersect(const ZeroSet& a, const ZeroSet& b) {
  ZeroSet out;
  for (const auto& x : a.intervals)
    for (const auto& y : b.intervals) {
      ZInterval r = iv_intersect(x, y);
      if (iv_nonempty(r)) out.intervals.push_back(r);
    }
  for (const auto& p : a.points)
    if (b.contains(p)) out.points.push_back(p);
  for (const auto& p : b.points)
    if (a.contains(p)) out.points.push_back(p);
  auto fam_vs = [&out](const std::vector<AccumFamily>& fs, const ZeroSet& other) {
    for (const auto& f : fs)
      for (const auto& iv : other.intervals) append(out, family_within(f, iv));
  };
  fam_vs(a.families, b);
  fam_vs(b.families, a);
  for (const auto& f : a.families)
    for (const auto& g : b.families) {
      if (f.anchor() == g.anchor()) {
        if (auto h = family_intersection(f, g)) out.families.push_back(*h);
        continue;
      }
      // Any common point lies at distance >= delta from one of the anchors.
      Rational delta = abs_of(f.anchor() - g.anchor()) / 2;
      for (const auto* p : {&f, &g}) {
        const AccumFamily& q = p == &f ? g : f;
        Integer kmax = floor_of(p->c() / delta - p->r());
        if (kmax >= p->k_min()) check_count(kmax - p->k_min());
        for (Integer k = p->k_min(); k <= kmax; ++k)
          if (q.contains(p->member(k))) out.points.emplace_back(p->member(k));
      }
    }
  out.normalize();
  return out;
}

ZeroSet zs_union(const ZeroSet& a, const ZeroSet& b) {
  ZeroSet out = a;
  append(out, b);
  out.normalize();
  return out;
}

ZeroSet zs_closure(const ZeroSet& a) {
  ZeroSet out = a;
  for (auto& iv : out.intervals) {
    iv.lo_closed = iv.lo.has_value();
    iv.hi_closed = iv.hi.has_value();
  }
  for (const auto& f : a.families) out.points.emplace_back(f.anchor());
  out.normalize();
  return out;
}

ZeroSet zs_iso(const ZeroSet& a) {
  ZeroSet out;
  out.families = a.families;
  for (const auto& p : a.points) {
    bool anchor = std::any_of(a.families.begin(), a.families.end(),
                              [&](const AccumFamily& f) { return AlgebraicReal(f.anchor()) == p; });
    if (!anchor) out.points.push_back(p);
  }
  out.normalize();
  return out;
}

ComponentCount component_count(const ZeroSet& a) {
  if (!a.families.empty()) return {true, 0};
  return {false, a.intervals.size() + a.points.size()};
}

bool zs_subset(const ZeroSet& a, const ZeroSet& b) {
  for (const auto& iv : a.intervals)
    if (std::none_of(b.intervals.begin(), b.intervals.end(), [&](const ZInterval& y) { return iv_subset(iv, y); }))
      return false;
  for (const auto& p : a.points)
    if (!b.contains(p)) return false;
  for (const auto& f : a.families)
    if (!family_covered(f, b)) return false;
  return true;
}

bool zs_equal(const ZeroSet& a, const ZeroSet& b) { return zs_subset(a, b) && zs_subset(b, a); }

}  // namespace specm
