#include "specm/ideals.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "specm/error.hpp"

namespace specm {

// ---------------------------------------------------------------- descriptions

SymbolicFamily SymbolicFamily::shrink(const Rational& anchor, Side side) {
  return SymbolicFamily{Kind::ShrinkingInterval, anchor, side, std::nullopt};
}

SymbolicFamily SymbolicFamily::tail(const AccumFamily& f) {
  return SymbolicFamily{Kind::AccumTail, f.anchor(), f.side(), f};
}

PiecewiseFn SymbolicFamily::member(const Domain& d, long n) const {
  if (kind == Kind::AccumTail) return distinguished_function(d, family->with_k_min(family->k_min() + n - 1));
  // 0 on [x - 1/n, x) (or (x, x + 1/n]), 1 elsewhere.
  Rational w(1, n);
  if (side == Side::Left) {
    Rational a = anchor - w;
    if (d.lo && a <= *d.lo) return indicator(d, {anchor}, {0, 1}, {1});
    return indicator(d, {a, anchor}, {1, 0, 1}, {0, 1});
  }
  Rational b = anchor + w;
  if (d.hi && b >= *d.hi) return indicator(d, {anchor}, {1, 0}, {1});
  return indicator(d, {anchor, b}, {1, 0, 1}, {1, 0});
}

std::string SymbolicFamily::to_string() const {
  if (kind == Kind::ShrinkingInterval) return "shrink(" + specm::to_string(anchor) + "," + specm::to_string(side) + ")";
  return "tail(" + specm::to_string(anchor) + "," + specm::to_string(side) + "," + specm::to_string(family->c()) +
         "," + specm::to_string(family->r()) + ")";
}

bool operator==(const SymbolicFamily& a, const SymbolicFamily& b) {
  if (a.kind != b.kind || a.anchor != b.anchor || a.side != b.side) return false;
  return a.kind == SymbolicFamily::Kind::ShrinkingInterval || a.family->same_tail(*b.family);
}

IdealDesc IdealDesc::make(const Domain& d, std::vector<PiecewiseFn> gens, std::vector<SymbolicFamily> fams) {
  if (gens.empty() && fams.empty()) fail(ErrorCode::InvalidArgument, "an ideal needs a generator or a family");
  for (const auto& g : gens)
    if (!(g.domain() == d)) fail(ErrorCode::DomainMismatch, "generator on a different domain");
  for (const auto& f : fams) {
    if (!d.approachable(f.anchor, f.side)) fail(ErrorCode::OutOfDomain, "family " + f.to_string() + " does not live on " + d.to_string());
  }
  return IdealDesc{d, std::move(gens), std::move(fams)};
}

IdealDesc IdealDesc::with(const std::vector<PiecewiseFn>& more) const {
  IdealDesc out = *this;
  out.generators.insert(out.generators.end(), more.begin(), more.end());
  return out;
}

PiecewiseFn distinguished_function(const Domain& d, const AccumFamily& f) {
  const Rational& z = f.anchor();
  OscTerm t{1, OscPrimitive::standard(z, f.c(), f.r()), 0, 1};
  std::vector<Rational> cuts;
  std::vector<PieceExpr> exprs;
  std::vector<Rational> values;
  bool left = f.side() == Side::Left;
  // Cut strictly between member k_min - 1 (or the far side) and member k_min.
  std::optional<Rational> a;
  if (f.k_min() > 1) {
    a = (f.member(f.k_min() - 1) + f.first()) / 2;
  } else {
    a = left ? Rational(f.first() - 1) : Rational(f.first() + 1);
  }
  if (left) {
    if (d.lo && *a <= *d.lo) a.reset();
    if (a) {
      cuts.push_back(*a);
      exprs.emplace_back(Poly::constant(1));
      values.emplace_back(1);
    }
    exprs.emplace_back(t);
    if (!d.hi || z < *d.hi) {
      cuts.push_back(z);
      values.emplace_back(1);
      exprs.emplace_back(Poly::constant(1));
    }
  } else {
    if (d.hi && *a >= *d.hi) a.reset();
    if (!d.lo || z > *d.lo) {
      cuts.push_back(z);
      values.emplace_back(1);
      exprs.emplace_back(Poly::constant(1));
    }
    exprs.emplace_back(t);
    if (a) {
      cuts.push_back(*a);
      values.emplace_back(1);
      exprs.emplace_back(Poly::constant(1));
    }
  }
  return PiecewiseFn::build(d, cuts, exprs, values);
}

// ---------------------------------------------------------------- side data

std::string to_string(SideKind k) {
  switch (k) {
    case SideKind::VanishesOnNbhd: return "VanishesOnNbhd";
    case SideKind::LimitZero: return "LimitZero";
    case SideKind::Accum: return "Accum";
    case SideKind::BoundedAway: return "BoundedAway";
    case SideKind::OscilNoLimit: return "OscilNoLimit";
  }
  return "?";
}

namespace {

bool approachable(const Domain& d, const AlgebraicReal& x, Side side) {
  if (x.is_rational()) return d.approachable(x.rational(), side);
  return d.contains(x);
}

/// Lower bound on |e| near an irrational x inside span s, where e(x) != 0.
Rational bound_near(const PieceExpr& e, AlgebraicReal x, const Span& s) {
  while (true) {
    if (x.is_rational()) return abs_of(piece_value(e, x.rational())) / 2;
    bool inside = (!s.lo || *s.lo < x.lo()) && (!s.hi || x.hi() < *s.hi);
    if (inside) {
      auto [l, h] = e.is_poly() ? poly_range_bound(e.poly(), x.lo(), x.hi()) : piece_range(e, Span{x.lo(), x.hi()});
      if (l > 0) return l;
      if (h < 0) return -h;
    }
    x = x.bisected();
  }
}

}  // namespace

SideData side_data(const PiecewiseFn& f, const AlgebraicReal& x, Side side) {
  if (!approachable(f.domain(), x, side))
    fail(ErrorCode::OutOfDomain, x.to_string() + " cannot be approached from the " + to_string(side));
  SideData sd;
  sd.point = x;
  sd.side = side;
  size_t i = x.is_rational() ? *f.piece_toward(x.rational(), side) : *f.piece_containing(x);
  const PieceExpr& e = f.pieces()[i];
  Span s = f.span(i);
  if (e.is_poly()) {
    const Poly& p = e.poly();
    if (p.is_zero()) {
      sd.kind = SideKind::VanishesOnNbhd;
    } else if (sign_at(p, x) == 0) {
      sd.kind = SideKind::LimitZero;
    } else {
      sd.kind = SideKind::BoundedAway;
      sd.epsilon = x.is_rational() ? Rational(abs_of(p.eval(x.rational())) / 2) : bound_near(e, x, s);
    }
    return sd;
  }
  const OscTerm& t = e.osc();
  if (x.is_rational() && x.rational() == t.osc.anchor) {
    ZeroSet zs = zero_set_of_piece(e, s);
    if (!zs.families.empty()) {
      sd.kind = SideKind::Accum;
      sd.families = zs.families;
    } else {
      auto [m, M] = piece_range(e, s);
      sd.kind = SideKind::OscilNoLimit;
      sd.epsilon = std::min(abs_of(m), abs_of(M));
    }
    return sd;
  }
  if (x.is_rational()) {
    Rational v = piece_value(e, x.rational());
    sd.kind = v == 0 ? SideKind::LimitZero : SideKind::BoundedAway;
    sd.epsilon = abs_of(v) / 2;
    return sd;
  }
  sd.kind = SideKind::BoundedAway;
  sd.epsilon = bound_near(e, x, s);
  return sd;
}

bool is_distinguished(const PiecewiseFn& f, const Rational& x, Side side) {
  return side_data(f, x, side).kind == SideKind::Accum;
}

// ---------------------------------------------------------------- descriptors

std::string to_string(BlockKind k) {
  switch (k) {
    case BlockKind::Full: return "Full";
    case BlockKind::Constrained: return "Constrained";
    case BlockKind::FinitePoints: return "FinitePoints";
  }
  return "?";
}

std::string Block::to_string() const {
  std::string s = "P(" + anchor.to_string() + ", " + specm::to_string(side) + "): " + specm::to_string(kind);
  if (!families.empty()) {
    s += " [";
    for (size_t i = 0; i < families.size(); ++i) s += (i ? "; " : "") + families[i].to_string();
    s += "]";
  }
  return s;
}

namespace {

bool position_less(const AlgebraicReal& x, Side a, const AlgebraicReal& y, Side b) {
  int c = compare(x, y);
  if (c != 0) return c < 0;
  return a == Side::Left && b == Side::Right;
}

bool block_less(const Block& a, const Block& b) { return position_less(a.anchor, a.side, b.anchor, b.side); }

std::optional<Block> block_union(const std::optional<Block>& a, const std::optional<Block>& b) {
  if (!a) return b;
  if (!b) return a;
  Block out = *a;
  if (a->kind == BlockKind::Full || b->kind == BlockKind::Full) {
    out.kind = BlockKind::Full;
    out.families.clear();
    return out;
  }
  if (a->kind == BlockKind::Constrained && b->kind == BlockKind::Constrained) {
    std::vector<AccumFamily> fs = a->families;
    fs.insert(fs.end(), b->families.begin(), b->families.end());
    out.families = simplify_family_union(fs);
    return out;
  }
  if (a->kind == BlockKind::FinitePoints && b->kind == BlockKind::FinitePoints) {
    out.families = a->families;
    for (const auto& h : b->families)
      if (std::none_of(out.families.begin(), out.families.end(),
                       [&](const AccumFamily& g) { return family_union_equal({g}, {h}); }))
        out.families.push_back(h);
    return out;
  }
  const Block& c = a->kind == BlockKind::Constrained ? *a : *b;
  const Block& p = a->kind == BlockKind::Constrained ? *b : *a;
  for (const auto& h : p.families)
    if (!family_tail_subset(h, c.families))
      fail(ErrorCode::InvalidArgument, "union of a constrained block and outside points is not representable");
  return c;
}

std::optional<Block> block_intersection(const std::optional<Block>& a, const std::optional<Block>& b) {
  if (!a || !b) return std::nullopt;
  if (a->kind == BlockKind::Full) return b;
  if (b->kind == BlockKind::Full) return a;
  Block out = *a;
  if (a->kind == BlockKind::Constrained && b->kind == BlockKind::Constrained) {
    out.families = family_union_intersection(a->families, b->families);
    if (out.families.empty()) return std::nullopt;
    return out;
  }
  const Block& p = a->kind == BlockKind::FinitePoints ? *a : *b;
  const Block& q = a->kind == BlockKind::FinitePoints ? *b : *a;
  out = p;
  out.families.clear();
  for (const auto& h : p.families) {
    bool in = q.kind == BlockKind::Constrained
                  ? family_tail_subset(h, q.families)
                  : std::any_of(q.families.begin(), q.families.end(),
                                [&](const AccumFamily& g) { return family_union_equal({g}, {h}); });
    if (in) out.families.push_back(h);
  }
  if (out.families.empty()) return std::nullopt;
  return out;
}

bool block_subset(const std::optional<Block>& a, const std::optional<Block>& b) {
  if (!a) return true;
  if (!b) return false;
  if (b->kind == BlockKind::Full) return true;
  if (a->kind == BlockKind::Full) return false;
  if (b->kind == BlockKind::Constrained) return family_union_subset(a->families, b->families);
  if (a->kind == BlockKind::Constrained) return false;
  for (const auto& h : a->families)
    if (std::none_of(b->families.begin(), b->families.end(),
                     [&](const AccumFamily& g) { return family_union_equal({g}, {h}); }))
      return false;
  return true;
}

bool block_equal(const std::optional<Block>& a, const std::optional<Block>& b) {
  return block_subset(a, b) && block_subset(b, a);
}

/// Stored and absent positions of either descriptor.
std::vector<std::pair<AlgebraicReal, Side>> positions(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b) {
  std::vector<std::pair<AlgebraicReal, Side>> out;
  for (const auto* d : {&a, &b}) {
    for (const auto& bl : d->blocks) out.emplace_back(bl.anchor, bl.side);
    out.insert(out.end(), d->absent.begin(), d->absent.end());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& p, const auto& q) { return position_less(p.first, p.second, q.first, q.second); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& p, const auto& q) { return p.first == q.first && p.second == q.second; }),
            out.end());
  return out;
}

template <class Op>
ClosedSetDescriptor combine(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b, ZeroSet locus, Op op,
                            bool jp, bool jm) {
  if (!(a.domain == b.domain)) fail(ErrorCode::DomainMismatch, "descriptors over different domains");
  ClosedSetDescriptor out;
  out.domain = a.domain;
  out.m_locus = std::move(locus);
  out.j_plus = jp;
  out.j_minus = jm;
  for (const auto& [x, side] : positions(a, b)) {
    if (auto bl = op(a.block_at(x, side), b.block_at(x, side))) {
      bl->anchor = x;
      bl->side = side;
      out.blocks.push_back(*bl);
    } else {
      out.absent.emplace_back(x, side);
    }
  }
  out.normalize();
  return out;
}

}  // namespace

bool ClosedSetDescriptor::is_empty() const { return m_locus.is_empty() && blocks.empty() && !j_plus && !j_minus; }

std::optional<Block> ClosedSetDescriptor::block_at(const AlgebraicReal& x, Side side) const {
  if (x.is_rational() && m_locus.covers_side(x.rational(), side)) return Block{x, side, BlockKind::Full, {}};
  if (!x.is_rational()) {
    // Irrational anchors: coverage by an interval strictly around x.
    for (const auto& iv : m_locus.intervals) {
      bool lo_ok = !iv.lo || compare(*iv.lo, x) < 0 || (side == Side::Right && compare(*iv.lo, x) == 0);
      bool hi_ok = !iv.hi || compare(*iv.hi, x) > 0 || (side == Side::Left && compare(*iv.hi, x) == 0);
      if (lo_ok && hi_ok) return Block{x, side, BlockKind::Full, {}};
    }
  }
  for (const auto& b : blocks)
    if (b.side == side && b.anchor == x) return b;
  if (!approachable(domain, x, side) || !m_locus.contains(x)) return std::nullopt;
  for (const auto& [y, s] : absent)
    if (s == side && y == x) return std::nullopt;
  return Block{x, side, BlockKind::Full, {}};
}

void ClosedSetDescriptor::normalize() {
  ClosedSetDescriptor probe;
  probe.domain = domain;
  probe.m_locus = m_locus;
  std::vector<Block> kept;
  for (const auto& b : blocks) {
    bool implicit = probe.block_at(b.anchor, b.side).has_value();
    if (implicit && b.kind == BlockKind::Full) continue;
    if (b.kind != BlockKind::Full && b.families.empty()) continue;
    kept.push_back(b);
  }
  std::sort(kept.begin(), kept.end(), block_less);
  blocks = std::move(kept);
  std::vector<std::pair<AlgebraicReal, Side>> keep_absent;
  for (const auto& [x, side] : absent)
    if (probe.block_at(x, side) && !(x.is_rational() && m_locus.covers_side(x.rational(), side)))
      keep_absent.emplace_back(x, side);
  std::sort(keep_absent.begin(), keep_absent.end(),
            [](const auto& p, const auto& q) { return position_less(p.first, p.second, q.first, q.second); });
  keep_absent.erase(std::unique(keep_absent.begin(), keep_absent.end()), keep_absent.end());
  absent = std::move(keep_absent);
}

std::string ClosedSetDescriptor::to_string() const {
  std::string s = "m-locus: " + m_locus.to_string();
  for (const auto& b : blocks) s += "; " + b.to_string();
  for (const auto& [x, side] : absent) s += "; no P(" + x.to_string() + ", " + specm::to_string(side) + ")";
  if (j_plus) s += "; J+";
  if (j_minus) s += "; J-";
  return s;
}

bool descriptor_subset(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b) {
  if ((a.j_plus && !b.j_plus) || (a.j_minus && !b.j_minus)) return false;
  if (!zs_subset(a.m_locus, b.m_locus)) return false;
  for (const auto& [x, side] : positions(a, b))
    if (!block_subset(a.block_at(x, side), b.block_at(x, side))) return false;
  return true;
}

bool descriptor_equal(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b) {
  if (a.j_plus != b.j_plus || a.j_minus != b.j_minus) return false;
  if (!zs_equal(a.m_locus, b.m_locus)) return false;
  for (const auto& [x, side] : positions(a, b))
    if (!block_equal(a.block_at(x, side), b.block_at(x, side))) return false;
  return true;
}

ClosedSetDescriptor descriptor_union(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b) {
  return combine(a, b, zs_union(a.m_locus, b.m_locus), block_union, a.j_plus || b.j_plus, a.j_minus || b.j_minus);
}

ClosedSetDescriptor descriptor_intersection(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b) {
  return combine(a, b, zs_intersect(a.m_locus, b.m_locus), block_intersection, a.j_plus && b.j_plus,
                 a.j_minus && b.j_minus);
}

// ---------------------------------------------------------------- classification

namespace {

void add_candidates(const PiecewiseFn& g, std::vector<AlgebraicReal>& out) {
  for (size_t i = 0; i < g.piece_count(); ++i) {
    const PieceExpr& e = g.pieces()[i];
    Span s = g.span(i);
    if (e.is_poly()) {
      const Poly& p = e.poly();
      if (p.is_zero() || !s.bounded()) {
        if (s.lo) out.emplace_back(*s.lo);
        if (s.hi) out.emplace_back(*s.hi);
        continue;
      }
      for (auto& r : isolate_real_roots(p, *s.lo, *s.hi)) out.push_back(r);
      continue;
    }
    const OscTerm& t = e.osc();
    if (touches_anchor(t, s)) {
      out.emplace_back(t.osc.anchor);
      continue;
    }
    for (const auto& p : zero_set_of_piece(e, s).points) out.push_back(p);
    if (s.lo && piece_value(e, *s.lo) == 0) out.emplace_back(*s.lo);
    if (s.hi && piece_value(e, *s.hi) == 0) out.emplace_back(*s.hi);
  }
}

struct Place {
  Rational anchor;
  Side side;
};

std::optional<Place> common_place(const IdealDesc& I, bool& conflict) {
  conflict = false;
  std::optional<Place> place;
  for (const auto& f : I.families) {
    if (place && (place->anchor != f.anchor || place->side != f.side)) conflict = true;
    if (!place) place = Place{f.anchor, f.side};
  }
  return place;
}

/// V(I) restricted to one anchor side.
std::optional<Block> compute_block(const IdealDesc& I, const AlgebraicReal& x, Side side) {
  std::optional<std::vector<AccumFamily>> constraint;
  auto restrict_by = [&](const std::vector<AccumFamily>& fs) {
    constraint = constraint ? family_union_intersection(*constraint, fs) : simplify_family_union(fs);
  };
  for (const auto& f : I.families) {
    if (!x.is_rational() || f.anchor != x.rational() || f.side != side) return std::nullopt;
    if (f.kind == SymbolicFamily::Kind::AccumTail) restrict_by({*f.family});
  }
  for (const auto& g : I.generators) {
    SideData sd = side_data(g, x, side);
    if (sd.kind == SideKind::BoundedAway || sd.kind == SideKind::OscilNoLimit) return std::nullopt;
    if (sd.kind == SideKind::Accum) restrict_by(sd.families);
  }
  if (!constraint) return Block{x, side, BlockKind::Full, {}};
  if (constraint->empty()) return std::nullopt;
  return Block{x, side, BlockKind::Constrained, *constraint};
}

ClosedSetDescriptor classify_core(const IdealDesc& I) {
  ClosedSetDescriptor V;
  V.domain = I.domain;
  V.source = I;
  bool conflict = false;
  auto place = common_place(I, conflict);
  if (conflict) return V;

  ZeroSet G = ZeroSet::whole(I.domain);
  for (const auto& g : I.generators) G = zs_intersect(G, zero_set(g));
  if (!place) V.m_locus = G;

  std::vector<AlgebraicReal> cand;
  const Domain& d = I.domain;
  if (d.lo) cand.emplace_back(*d.lo);
  if (d.hi) cand.emplace_back(*d.hi);
  if (place) cand.emplace_back(place->anchor);
  for (const auto& g : I.generators) {
    for (const auto& b : g.breakpoints()) cand.emplace_back(b);
    add_candidates(g, cand);
  }
  for (const auto& iv : G.intervals) {
    if (iv.lo) cand.push_back(*iv.lo);
    if (iv.hi) cand.push_back(*iv.hi);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  for (const auto& x : cand)
    for (Side side : {Side::Left, Side::Right}) {
      if (!approachable(d, x, side)) continue;
      if (x.is_rational() && V.m_locus.covers_side(x.rational(), side)) continue;
      if (auto b = compute_block(I, x, side))
        V.blocks.push_back(*b);
      else
        V.absent.emplace_back(x, side);
    }
  if (!place) {
    auto j = [&](int sign) {
      for (const auto& g : I.generators) {
        LimitResult l = limit_at_infinity(g, sign);
        if (l.kind != LimitKind::Value || l.value != 0) return false;
      }
      return true;
    };
    V.j_plus = !d.hi && j(1);
    V.j_minus = !d.lo && j(-1);
  }
  V.normalize();
  return V;
}

}  // namespace

ClosedSetDescriptor classify_or_empty(const IdealDesc& I) { return classify_core(I); }

ClosedSetDescriptor classify(const IdealDesc& I) {
  ClosedSetDescriptor V = classify_core(I);
  if (V.is_empty()) fail(ErrorCode::WholeRing, "the ideal is the whole ring");
  return V;
}

std::vector<size_t> n_set(const IdealDesc& I) {
  std::vector<size_t> out;
  for (size_t i = 0; i < I.generators.size(); ++i) {
    const auto& g = I.generators[i];
    if (zero_set(g).is_empty() && !is_unit(g).unit) out.push_back(i);
  }
  return out;
}

WholeRingResult is_whole_ring(const IdealDesc& I) {
  WholeRingResult res;
  if (!classify_core(I).is_empty()) return res;
  res.whole = true;
  // Greedily shrink to a sub-collection that still generates the ring.
  std::vector<size_t> gens(I.generators.size()), fams(I.families.size());
  for (size_t i = 0; i < gens.size(); ++i) gens[i] = i;
  for (size_t i = 0; i < fams.size(); ++i) fams[i] = i;
  auto build = [&](const std::vector<size_t>& gs, const std::vector<size_t>& fs) -> std::optional<IdealDesc> {
    if (gs.empty() && fs.empty()) return std::nullopt;
    IdealDesc J{I.domain, {}, {}};
    for (size_t i : gs) J.generators.push_back(I.generators[i]);
    for (size_t i : fs) J.families.push_back(I.families[i]);
    return J;
  };
  for (size_t k = gens.size(); k-- > 0;) {
    auto trial = gens;
    trial.erase(trial.begin() + static_cast<long>(k));
    auto J = build(trial, fams);
    if (J && classify_core(*J).is_empty()) gens = trial;
  }
  for (size_t k = fams.size(); k-- > 0;) {
    auto trial = fams;
    trial.erase(trial.begin() + static_cast<long>(k));
    auto J = build(gens, trial);
    if (J && classify_core(*J).is_empty()) fams = trial;
  }
  res.generators = gens;
  res.families = fams;
  if (fams.empty() && !gens.empty()) {
    bool poly = std::none_of(gens.begin(), gens.end(), [&](size_t i) { return I.generators[i].has_osc(); });
    if (poly) {
      PiecewiseFn s = PiecewiseFn::constant(I.domain, 0);
      for (size_t i : gens) s = add(s, mul(I.generators[i], I.generators[i]));
      UnitResult u = is_unit(s);
      if (u.unit) res.sum_of_squares_epsilon = u.epsilon;
    }
  }
  return res;
}

bool condition_A(const IdealDesc& I) {
  ZeroSet G = ZeroSet::whole(I.domain);
  for (const auto& g : I.generators) G = zs_intersect(G, zero_set(g));
  if (I.families.empty()) return !G.is_empty();
  bool conflict = false;
  auto place = common_place(I, conflict);
  if (conflict) return false;
  std::optional<std::vector<AccumFamily>> tails;
  for (const auto& f : I.families)
    if (f.kind == SymbolicFamily::Kind::AccumTail)
      tails = tails ? family_union_intersection(*tails, {*f.family}) : std::vector<AccumFamily>{*f.family};
  if (!tails) return G.accumulates_at(place->anchor, place->side);
  if (tails->empty()) return false;
  if (G.covers_side(place->anchor, place->side)) return true;
  std::vector<AccumFamily> here;
  for (const auto& f : G.families)
    if (f.anchor() == place->anchor && f.side() == place->side) here.push_back(f);
  return !family_union_intersection(*tails, here).empty();
}

bool condition_B(const IdealDesc& I, const Rational& x) {
  if (I.families.empty()) return false;
  for (const auto& f : I.families)
    if (f.anchor != x || f.side != I.families.front().side) return false;
  return condition_A(I);
}

}  // namespace specm
