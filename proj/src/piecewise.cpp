#include "specm/piecewise.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "specm/error.hpp"
#include "specm/zeroset.hpp"

namespace specm {

// ---------------------------------------------------------------- Domain

Domain Domain::make(std::optional<Rational> a, std::optional<Rational> b, bool lo_closed, bool hi_closed) {
  if (a && b && !(*a < *b)) fail(ErrorCode::MalformedPartition, "domain needs lo < hi");
  Domain d;
  d.lo = std::move(a);
  d.hi = std::move(b);
  d.lo_closed = d.lo.has_value() && lo_closed;
  d.hi_closed = d.hi.has_value() && hi_closed;
  return d;
}

bool Domain::contains(const Rational& x) const {
  if (lo && (lo_closed ? x < *lo : x <= *lo)) return false;
  if (hi && (hi_closed ? x > *hi : x >= *hi)) return false;
  return true;
}

bool Domain::contains(const AlgebraicReal& x) const {
  if (x.is_rational()) return contains(x.rational());
  // Irrational values never coincide with rational ends.
  if (lo && compare(x, *lo) < 0) return false;
  if (hi && compare(x, *hi) > 0) return false;
  return true;
}

bool Domain::approachable(const Rational& x, Side side) const {
  if (side == Side::Left) return (!lo || *lo < x) && (!hi || x <= *hi);
  return (!lo || *lo <= x) && (!hi || x < *hi);
}

std::string Domain::to_string() const {
  std::string s = lo_closed ? "[" : "(";
  s += lo ? specm::to_string(*lo) : "-inf";
  s += ",";
  s += hi ? specm::to_string(*hi) : "inf";
  s += hi_closed ? "]" : ")";
  return s;
}

bool operator==(const Domain& a, const Domain& b) {
  return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
}

// ---------------------------------------------------------------- Oscillators

OscPrimitive OscPrimitive::standard(const Rational& anchor, const Rational& c, const Rational& r,
                                    const Rational& amplitude, const Rational& anchor_value) {
  if (amplitude <= 0) fail(ErrorCode::InvalidArgument, "oscillator amplitude must be positive");
  OscPrimitive o;
  o.anchor = anchor;
  o.left = AccumFamily::make(anchor, Side::Left, c, r);
  o.right = AccumFamily::make(anchor, Side::Right, c, r);
  o.amplitude = amplitude;
  o.anchor_value = anchor_value;
  return o;
}

bool operator==(const OscPrimitive& a, const OscPrimitive& b) {
  return a.anchor == b.anchor && a.left.same_tail(b.left) && a.right.same_tail(b.right) &&
         a.amplitude == b.amplitude && a.anchor_value == b.anchor_value;
}

bool operator==(const OscTerm& a, const OscTerm& b) {
  return a.scale == b.scale && a.osc == b.osc && a.shift == b.shift && a.power == b.power;
}

Rational Span::interior_point() const {
  if (lo && hi) return (*lo + *hi) / 2;
  if (lo) return *lo + 1;
  if (hi) return *hi - 1;
  return 0;
}

namespace {

/// Period-2 triangle wave: tri(0)=0, tri(1/2)=1, tri(3/2)=-1.
Rational tri(const Rational& u) {
  Rational m = u - Rational(2 * floor_of(u / 2));
  if (m <= Rational(1, 2)) return 2 * m;
  if (m <= Rational(3, 2)) return 2 - 2 * m;
  return 2 * m - 4;
}

Rational rpow(const Rational& b, int p) { return p == 1 ? b : b * b; }

Side span_side(const OscTerm& t, const Span& s) {
  return (s.hi && *s.hi <= t.osc.anchor) ? Side::Left : Side::Right;
}

/// Range of tri over [u1, u2].
std::pair<Rational, Rational> tri_range(const Rational& u1, const Rational& u2) {
  if (u2 - u1 >= 2) return {-1, 1};
  Rational lo = std::min(tri(u1), tri(u2)), hi = std::max(tri(u1), tri(u2));
  Rational half(1, 2);
  for (Rational h = Rational(ceil_of(u1 - half)) + half; h <= u2; h += 1) {
    Rational t = tri(h);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return {lo, hi};
}

std::pair<Rational, Rational> osc_term_range(const OscTerm& t, const Rational& tl, const Rational& th) {
  Rational a = t.osc.amplitude * tl, b = t.osc.amplitude * th;
  Rational lo, hi;
  if (t.power == 1) {
    lo = a;
    hi = b;
  } else if (a <= 0 && b >= 0) {
    lo = 0;
    hi = std::max(a * a, b * b);
  } else {
    lo = std::min(a * a, b * b);
    hi = std::max(a * a, b * b);
  }
  Rational x = t.scale * lo, y = t.scale * hi;
  if (x > y) std::swap(x, y);
  return {x + t.shift, y + t.shift};
}

PieceExpr add_expr(const PieceExpr& a, const PieceExpr& b) {
  if (a.is_poly() && b.is_poly()) return a.poly() + b.poly();
  if (!a.is_poly() && !b.is_poly()) {
    const OscTerm &s = a.osc(), &t = b.osc();
    if (!(s.osc == t.osc) || s.power != t.power)
      fail(ErrorCode::OutsideFragment, "sum of oscillator terms with different primitives");
    Rational sc = s.scale + t.scale;
    if (sc == 0) return Poly::constant(s.shift + t.shift);
    return OscTerm{sc, s.osc, s.shift + t.shift, s.power};
  }
  const OscTerm& t = a.is_poly() ? b.osc() : a.osc();
  const Poly& p = a.is_poly() ? a.poly() : b.poly();
  if (!p.is_constant()) fail(ErrorCode::OutsideFragment, "oscillator plus a nonconstant polynomial");
  return OscTerm{t.scale, t.osc, t.shift + p.constant_value(), t.power};
}

PieceExpr mul_expr(const PieceExpr& a, const PieceExpr& b) {
  if (a.is_poly() && b.is_poly()) return a.poly() * b.poly();
  if (!a.is_poly() && !b.is_poly()) {
    const OscTerm &s = a.osc(), &t = b.osc();
    if (!(s.osc == t.osc) || s.shift != 0 || t.shift != 0 || s.power + t.power > 2)
      fail(ErrorCode::OutsideFragment, "product of oscillator terms outside the square pattern");
    return OscTerm{s.scale * t.scale, s.osc, 0, s.power + t.power};
  }
  const OscTerm& t = a.is_poly() ? b.osc() : a.osc();
  const Poly& p = a.is_poly() ? a.poly() : b.poly();
  if (!p.is_constant()) fail(ErrorCode::OutsideFragment, "oscillator times a nonconstant polynomial");
  Rational c = p.constant_value();
  if (c == 0) return Poly();
  return OscTerm{t.scale * c, t.osc, t.shift * c, t.power};
}

PieceExpr collapse(const PieceExpr& e) {
  if (!e.is_poly() && e.osc().scale == 0) return Poly::constant(e.osc().shift);
  return e;
}

/// Value of f at a rational x of its domain closure, oscillator model included.
Rational model_value(const PiecewiseFn& f, const Rational& x) {
  if (auto bi = f.breakpoint_index(x)) return f.point_values()[*bi];
  auto i = f.piece_toward(x, Side::Right);
  if (!i) i = f.piece_toward(x, Side::Left);
  if (!i) fail(ErrorCode::OutOfDomain, "point outside the domain");
  return piece_value(f.pieces()[*i], x);
}

template <class Op>
PiecewiseFn combine(const PiecewiseFn& f, const PiecewiseFn& g, Op op) {
  if (!(f.domain() == g.domain())) fail(ErrorCode::DomainMismatch, "operands live on different domains");
  std::vector<Rational> cuts;
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(), g.breakpoints().end(),
             std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<PieceExpr> exprs;
  std::vector<Rational> values;
  size_t fi = 0, gi = 0;
  for (size_t j = 0; j <= cuts.size(); ++j) {
    exprs.push_back(op(f.pieces()[fi], g.pieces()[gi]));
    if (j == cuts.size()) break;
    const Rational& c = cuts[j];
    Rational fv = model_value(f, c), gv = model_value(g, c);
    values.push_back(op(PieceExpr(Poly::constant(fv)), PieceExpr(Poly::constant(gv))).poly().constant_value());
    if (fi < f.breakpoints().size() && f.breakpoints()[fi] == c) ++fi;
    if (gi < g.breakpoints().size() && g.breakpoints()[gi] == c) ++gi;
  }
  return PiecewiseFn::build(f.domain(), cuts, exprs, values);
}

}  // namespace

// ---------------------------------------------------------------- PiecewiseFn

PiecewiseFn PiecewiseFn::build(Domain domain, std::vector<Rational> cuts, std::vector<PieceExpr> exprs,
                               std::vector<Rational> values) {
  domain = Domain::make(domain.lo, domain.hi, domain.lo_closed, domain.hi_closed);
  for (auto& c : cuts) c.canonicalize();
  for (auto& v : values) v.canonicalize();
  if (exprs.size() != cuts.size() + 1) fail(ErrorCode::MalformedPartition, "need one piece per subinterval");
  if (values.size() != cuts.size()) fail(ErrorCode::MalformedPartition, "need one value per breakpoint");
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (i > 0 && !(cuts[i - 1] < cuts[i])) fail(ErrorCode::MalformedPartition, "breakpoints must ascend strictly");
    if ((domain.lo && cuts[i] <= *domain.lo) || (domain.hi && cuts[i] >= *domain.hi))
      fail(ErrorCode::MalformedPartition, "breakpoint " + to_string(cuts[i]) + " is not interior to the domain");
  }
  PiecewiseFn f;
  f.domain_ = std::move(domain);
  f.cuts_ = std::move(cuts);
  f.exprs_ = std::move(exprs);
  f.values_ = std::move(values);
  for (size_t i = 0; i < f.exprs_.size(); ++i) {
    f.exprs_[i] = collapse(f.exprs_[i]);
    Span s = f.span(i);
    const PieceExpr& e = f.exprs_[i];
    if (e.is_poly()) {
      if (!s.bounded() && !e.poly().is_constant())
        fail(ErrorCode::UnboundedPiece, "nonconstant polynomial on an unbounded piece");
      continue;
    }
    const OscTerm& t = e.osc();
    if (t.power != 1 && t.power != 2) fail(ErrorCode::InvalidArgument, "oscillator power must be 1 or 2");
    if (t.osc.amplitude <= 0) fail(ErrorCode::InvalidArgument, "oscillator amplitude must be positive");
    const Rational& z = t.osc.anchor;
    bool left_of = s.hi && *s.hi <= z, right_of = s.lo && *s.lo >= z;
    if (!left_of && !right_of)
      fail(ErrorCode::MalformedPartition, "oscillator piece contains its anchor in its interior");
  }
  f.normalize();
  return f;
}

void PiecewiseFn::normalize() {
  size_t i = 0;
  while (i < cuts_.size()) {
    const PieceExpr &l = exprs_[i], &r = exprs_[i + 1];
    bool same = l == r && (l.is_poly() || l.osc().osc.anchor != cuts_[i]);
    if (same && values_[i] == piece_value(l, cuts_[i])) {
      cuts_.erase(cuts_.begin() + static_cast<long>(i));
      values_.erase(values_.begin() + static_cast<long>(i));
      exprs_.erase(exprs_.begin() + static_cast<long>(i) + 1);
    } else {
      ++i;
    }
  }
}

PiecewiseFn PiecewiseFn::polynomial(const Domain& d, const Poly& p) { return build(d, {}, {p}, {}); }
PiecewiseFn PiecewiseFn::constant(const Domain& d, const Rational& c) { return polynomial(d, Poly::constant(c)); }
PiecewiseFn PiecewiseFn::identity(const Domain& d) { return polynomial(d, Poly::x()); }

PiecewiseFn PiecewiseFn::oscillator(const Domain& d, const OscPrimitive& osc) {
  OscTerm t{1, osc, 0, 1};
  const Rational& z = osc.anchor;
  if ((!d.lo || *d.lo < z) && (!d.hi || z < *d.hi)) return build(d, {z}, {t, t}, {osc.anchor_value});
  return build(d, {}, {t}, {});
}

Span PiecewiseFn::span(size_t i) const {
  Span s;
  s.lo = i == 0 ? domain_.lo : std::optional<Rational>(cuts_[i - 1]);
  s.hi = i + 1 == exprs_.size() ? domain_.hi : std::optional<Rational>(cuts_[i]);
  return s;
}

bool PiecewiseFn::has_osc() const {
  return std::any_of(exprs_.begin(), exprs_.end(), [](const PieceExpr& e) { return !e.is_poly(); });
}

bool PiecewiseFn::is_zero() const {
  for (const auto& e : exprs_)
    if (!e.is_poly() || !e.poly().is_zero()) return false;
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

std::optional<size_t> PiecewiseFn::piece_containing(const Rational& x) const {
  if ((domain_.lo && x <= *domain_.lo) || (domain_.hi && x >= *domain_.hi)) return std::nullopt;
  auto it = std::lower_bound(cuts_.begin(), cuts_.end(), x);
  if (it != cuts_.end() && *it == x) return std::nullopt;
  return static_cast<size_t>(it - cuts_.begin());
}

std::optional<size_t> PiecewiseFn::piece_containing(const AlgebraicReal& x) const {
  if (x.is_rational()) return piece_containing(x.rational());
  if ((domain_.lo && compare(x, *domain_.lo) <= 0) || (domain_.hi && compare(x, *domain_.hi) >= 0))
    return std::nullopt;
  size_t i = 0;
  while (i < cuts_.size() && compare(x, cuts_[i]) > 0) ++i;
  return i;
}

std::optional<size_t> PiecewiseFn::breakpoint_index(const Rational& x) const {
  auto it = std::lower_bound(cuts_.begin(), cuts_.end(), x);
  if (it == cuts_.end() || *it != x) return std::nullopt;
  return static_cast<size_t>(it - cuts_.begin());
}

std::optional<size_t> PiecewiseFn::piece_toward(const Rational& x, Side side) const {
  if (!domain_.approachable(x, side)) return std::nullopt;
  if (side == Side::Left) return static_cast<size_t>(std::lower_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin());
  return static_cast<size_t>(std::upper_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin());
}

bool operator==(const PiecewiseFn& a, const PiecewiseFn& b) {
  return a.domain_ == b.domain_ && a.cuts_ == b.cuts_ && a.exprs_ == b.exprs_ && a.values_ == b.values_;
}

// ---------------------------------------------------------------- ring operations

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g) { return combine(f, g, add_expr); }
PiecewiseFn mul(const PiecewiseFn& f, const PiecewiseFn& g) { return combine(f, g, mul_expr); }
PiecewiseFn scale(const Rational& s, const PiecewiseFn& f) {
  return mul(PiecewiseFn::constant(f.domain(), s), f);
}
PiecewiseFn sub(const PiecewiseFn& f, const PiecewiseFn& g) { return add(f, scale(-1, g)); }
PiecewiseFn add_constant(const PiecewiseFn& f, const Rational& c) {
  return add(f, PiecewiseFn::constant(f.domain(), c));
}

// ---------------------------------------------------------------- evaluation

Rational piece_value(const PieceExpr& e, const Rational& x) {
  if (e.is_poly()) return e.poly().eval(x);
  const OscTerm& t = e.osc();
  const Rational& z = t.osc.anchor;
  if (x == z) return t.scale * rpow(t.osc.anchor_value, t.power) + t.shift;
  const AccumFamily& fam = t.osc.family(x < z ? Side::Left : Side::Right);
  Rational u = fam.c() / abs_of(x - z) - fam.r();
  return t.scale * rpow(t.osc.amplitude * tri(u), t.power) + t.shift;
}

bool touches_anchor(const OscTerm& t, const Span& s) {
  return (s.lo && *s.lo == t.osc.anchor) || (s.hi && *s.hi == t.osc.anchor);
}

std::pair<Rational, Rational> piece_range(const PieceExpr& e, const Span& s) {
  if (e.is_poly()) {
    const Poly& p = e.poly();
    if (p.is_constant()) return {p.constant_value(), p.constant_value()};
    return poly_range_bound(p, *s.lo, *s.hi);
  }
  const OscTerm& t = e.osc();
  if (touches_anchor(t, s)) return osc_term_range(t, -1, 1);
  Side side = span_side(t, s);
  const AccumFamily& fam = t.osc.family(side);
  const Rational& z = t.osc.anchor;
  Rational near = side == Side::Left ? z - *s.hi : *s.lo - z;
  std::optional<Rational> far;
  if (side == Side::Left && s.lo) far = z - *s.lo;
  if (side == Side::Right && s.hi) far = *s.hi - z;
  Rational u2 = fam.c() / near - fam.r();
  Rational u1 = far ? Rational(fam.c() / *far - fam.r()) : Rational(-fam.r());
  auto [tl, th] = tri_range(u1, u2);
  return osc_term_range(t, tl, th);
}

EvalResult eval(const PiecewiseFn& f, const Rational& x) {
  if (!f.domain().contains(x)) fail(ErrorCode::OutOfDomain, to_string(x) + " is outside " + f.domain().to_string());
  if (auto bi = f.breakpoint_index(x)) return {false, f.point_values()[*bi]};
  auto i = f.piece_toward(x, Side::Right);
  if (!i) i = f.piece_toward(x, Side::Left);
  const PieceExpr& e = f.pieces()[*i];
  Rational v = piece_value(e, x);
  if (e.is_poly() || x == e.osc().osc.anchor || v == 0) return {false, v};
  return {true, 0};
}

LimitResult side_limit(const PiecewiseFn& f, const Rational& x, Side side) {
  auto i = f.piece_toward(x, side);
  if (!i) fail(ErrorCode::OutOfDomain, to_string(x) + " cannot be approached from the " + to_string(side));
  const PieceExpr& e = f.pieces()[*i];
  if (!e.is_poly() && x == e.osc().osc.anchor) return {LimitKind::Oscillates, 0};
  return {LimitKind::Value, piece_value(e, x)};
}

LimitResult limit_at_infinity(const PiecewiseFn& f, int sign) {
  const auto& d = f.domain();
  if ((sign > 0 && d.hi) || (sign < 0 && d.lo)) fail(ErrorCode::OutOfDomain, "domain is bounded in that direction");
  const PieceExpr& e = sign > 0 ? f.pieces().back() : f.pieces().front();
  if (e.is_poly()) return {LimitKind::Value, abs_of(e.poly().constant_value())};
  const OscTerm& t = e.osc();
  const AccumFamily& fam = t.osc.family(sign > 0 ? Side::Right : Side::Left);
  Rational v = t.scale * rpow(t.osc.amplitude * tri(-fam.r()), t.power) + t.shift;
  return {LimitKind::Value, abs_of(v)};
}

// ---------------------------------------------------------------- derivative

PiecewiseFn derivative(const PiecewiseFn& f) {
  std::vector<PieceExpr> exprs;
  for (const auto& e : f.pieces()) {
    if (!e.is_poly()) fail(ErrorCode::NotDifferentiableFragment, "oscillator pieces have no derivative here");
    exprs.push_back(e.poly().derivative());
  }
  std::vector<Rational> values;
  for (size_t i = 0; i < f.breakpoints().size(); ++i) {
    const Rational& b = f.breakpoints()[i];
    values.push_back((exprs[i].poly().eval(b) + exprs[i + 1].poly().eval(b)) / 2);
  }
  return PiecewiseFn::build(f.domain(), f.breakpoints(), exprs, values);
}

// ---------------------------------------------------------------- units

std::string UnitWitness::to_string() const {
  switch (kind) {
    case UnitWitnessKind::ZeroAt: return "f = 0 at " + point.to_string();
    case UnitWitnessKind::SideLimitZero:
      return "f -> 0 approaching " + point.to_string() + " from the " + specm::to_string(side);
    case UnitWitnessKind::OscCrossing:
      return "oscillation through 0 approaching " + point.to_string() + " from the " + specm::to_string(side);
    case UnitWitnessKind::InfinityLimitZero: return std::string("|f| -> 0 toward ") + (side == Side::Right ? "+inf" : "-inf");
  }
  return "?";
}

namespace {

/// Lower bound on |p| over [a, b] for p without roots there.
Rational poly_min_abs(const Poly& p, const Rational& a, const Rational& b) {
  Rational lb = std::min(abs_of(p.eval(a)), abs_of(p.eval(b)));
  Poly d = p.derivative();
  if (d.is_zero()) return lb;
  for (const auto& c : isolate_real_roots(d, a, b)) {
    if (c.is_rational()) {
      lb = std::min(lb, abs_of(p.eval(c.rational())));
      continue;
    }
    AlgebraicReal x = c;
    while (true) {
      auto [l, h] = poly_range_bound(p, x.lo(), x.hi());
      Rational m = l > 0 ? l : -h;
      if (m > 0 && (h - l) <= m) {
        lb = std::min(lb, m);
        break;
      }
      x = x.bisected();
      if (x.is_rational()) {
        lb = std::min(lb, abs_of(p.eval(x.rational())));
        break;
      }
    }
  }
  return lb;
}

UnitWitness zero_at(const AlgebraicReal& x) { return {UnitWitnessKind::ZeroAt, x, Side::Left}; }

/// Witness for a zero of a piece at one of its span ends.
UnitWitness end_witness(const PiecewiseFn& f, const Rational& x, bool at_lo) {
  const Domain& d = f.domain();
  bool closed_end = at_lo ? (d.lo && *d.lo == x && d.lo_closed) : (d.hi && *d.hi == x && d.hi_closed);
  if (closed_end) return zero_at(x);
  return {UnitWitnessKind::SideLimitZero, x, at_lo ? Side::Right : Side::Left};
}

}  // namespace

UnitResult is_unit(const PiecewiseFn& f) {
  const Domain& d = f.domain();
  std::optional<Rational> eps;
  auto take = [&](const Rational& v) { eps = eps ? std::min(*eps, v) : v; };
  auto not_unit = [](UnitWitness w) { return UnitResult{false, 0, std::move(w)}; };

  for (size_t i = 0; i < f.breakpoints().size(); ++i) {
    if (f.point_values()[i] == 0) return not_unit(zero_at(f.breakpoints()[i]));
    take(abs_of(f.point_values()[i]));
  }
  for (size_t i = 0; i < f.piece_count(); ++i) {
    const PieceExpr& e = f.pieces()[i];
    Span s = f.span(i);
    if (e.is_poly()) {
      const Poly& p = e.poly();
      if (p.is_zero()) return not_unit(zero_at(s.interior_point()));
      if (p.is_constant()) {
        take(abs_of(p.constant_value()));
        continue;
      }
      const Rational &a = *s.lo, &b = *s.hi;
      auto roots = isolate_real_roots(p, a, b);
      for (const auto& r : roots)
        if (compare(r, a) > 0 && compare(r, b) < 0) return not_unit(zero_at(r));
      for (const auto& r : roots) return not_unit(end_witness(f, r.rational(), r == AlgebraicReal(a)));
      take(poly_min_abs(p, a, b));
      continue;
    }
    const OscTerm& t = e.osc();
    const Rational& z = t.osc.anchor;
    // Anchor sitting on a closed domain end is a point of D with the anchor value.
    if ((d.lo_closed && *d.lo == z && i == 0 && s.lo) || (d.hi_closed && d.hi && *d.hi == z && i + 1 == f.piece_count())) {
      Rational v = piece_value(e, z);
      if (v == 0) return not_unit(zero_at(z));
      take(abs_of(v));
    }
    auto [m, M] = piece_range(e, s);
    if (m > 0 || M < 0) {
      take(std::min(abs_of(m), abs_of(M)));
      continue;
    }
    if (touches_anchor(t, s)) return not_unit(UnitWitness{UnitWitnessKind::OscCrossing, z, span_side(t, s)});
    ZeroSet zs = zero_set_of_piece(e, s);
    if (!zs.points.empty()) return not_unit(zero_at(zs.points.front()));
    if (s.lo && piece_value(e, *s.lo) == 0) return not_unit(end_witness(f, *s.lo, true));
    if (s.hi && piece_value(e, *s.hi) == 0) return not_unit(end_witness(f, *s.hi, false));
    return not_unit(UnitWitness{UnitWitnessKind::InfinityLimitZero, Rational(0), s.hi ? Side::Left : Side::Right});
  }
  return {true, eps.value_or(Rational(0)), std::nullopt};
}

bool witness_holds(const PiecewiseFn& f, const UnitWitness& w) {
  switch (w.kind) {
    case UnitWitnessKind::ZeroAt: {
      if (!f.domain().contains(w.point)) return false;
      if (w.point.is_rational()) {
        EvalResult r = eval(f, w.point.rational());
        return !r.symbolic && r.value == 0;
      }
      auto i = f.piece_containing(w.point);
      return i && f.pieces()[*i].is_poly() && sign_at(f.pieces()[*i].poly(), w.point) == 0;
    }
    case UnitWitnessKind::SideLimitZero: {
      if (!w.point.is_rational()) return false;
      LimitResult l = side_limit(f, w.point.rational(), w.side);
      return l.kind == LimitKind::Value && l.value == 0;
    }
    case UnitWitnessKind::OscCrossing: {
      if (!w.point.is_rational()) return false;
      const Rational& x = w.point.rational();
      if (side_limit(f, x, w.side).kind != LimitKind::Oscillates) return false;
      size_t i = *f.piece_toward(x, w.side);
      auto [m, M] = piece_range(f.pieces()[i], f.span(i));
      return m <= 0 && M >= 0;
    }
    case UnitWitnessKind::InfinityLimitZero: {
      LimitResult l = limit_at_infinity(f, w.side == Side::Right ? 1 : -1);
      return l.kind == LimitKind::Value && l.value == 0;
    }
  }
  return false;
}

bool is_idempotent(const PiecewiseFn& f) {
  auto bit = [](const Rational& v) { return v == 0 || v == 1; };
  for (const auto& e : f.pieces())
    if (!e.is_poly() || !e.poly().is_constant() || !bit(e.poly().constant_value())) return false;
  return std::all_of(f.point_values().begin(), f.point_values().end(), bit);
}

// ---------------------------------------------------------------- clean decomposition

namespace {

int bit_for(const Rational& v) {
  if (v == 0) return 1;
  if (v == 1) return 0;
  return v < Rational(1, 2) ? 1 : 0;
}

/// Point of a piece where f is 0 or 1, or a span end (nullopt end = infinity).
struct Mark {
  std::optional<AlgebraicReal> x;
  int bit;
};

OscTerm shifted(const OscTerm& t, const Rational& d) { return OscTerm{t.scale, t.osc, t.shift + d, t.power}; }

/// Interior points of a non-anchor-touching piece where it equals 0 or 1.
std::vector<Mark> level_marks(const PieceExpr& e, const Span& s) {
  std::vector<Mark> out;
  if (e.is_poly()) {
    const Poly& p = e.poly();
    for (const auto& r : isolate_real_roots(p, *s.lo, *s.hi))
      if (compare(r, *s.lo) > 0 && compare(r, *s.hi) < 0) out.push_back({r, 1});
    for (const auto& r : isolate_real_roots(p - Poly::constant(1), *s.lo, *s.hi))
      if (compare(r, *s.lo) > 0 && compare(r, *s.hi) < 0) out.push_back({r, 0});
  } else {
    for (const auto& x : zero_set_of_piece(e, s).points) out.push_back({x, 1});
    for (const auto& x : zero_set_of_piece(shifted(e.osc(), -1), s).points) out.push_back({x, 0});
  }
  std::sort(out.begin(), out.end(), [](const Mark& a, const Mark& b) { return compare(*a.x, *b.x) < 0; });
  return out;
}

Rational end_value(const PieceExpr& e, const Span& s, bool at_lo) {
  const auto& end = at_lo ? s.lo : s.hi;
  if (end) return piece_value(e, *end);
  if (e.is_poly()) return e.poly().constant_value();
  const OscTerm& t = e.osc();
  const AccumFamily& fam = t.osc.family(at_lo ? Side::Left : Side::Right);
  return t.scale * rpow(t.osc.amplitude * tri(-fam.r()), t.power) + t.shift;
}

struct PiecePlan {
  std::vector<Rational> cuts;  // interior cuts of the piece
  std::vector<int> bits;       // one per part, cuts.size() + 1
};

std::optional<PiecePlan> plan_piece(const PieceExpr& e, const Span& s, CleanCertificate& cert) {
  if (e.is_poly() && e.poly().is_constant()) return PiecePlan{{}, {bit_for(e.poly().constant_value())}};
  if (!e.is_poly() && touches_anchor(e.osc(), s)) {
    auto range = piece_range(e, s);
    if (range.first > 0 || range.second < 0) return PiecePlan{{}, {0}};
    if (range.first > 1 || range.second < 1) return PiecePlan{{}, {1}};
    cert.reason = "oscillator takes the values 0 and 1 in every neighbourhood of its anchor";
    cert.anchor = e.osc().osc.anchor;
    cert.side = span_side(e.osc(), s);
    cert.range = range;
    return std::nullopt;
  }
  std::vector<Mark> marks;
  marks.push_back({s.lo ? std::optional<AlgebraicReal>(*s.lo) : std::nullopt, bit_for(end_value(e, s, true))});
  for (auto& m : level_marks(e, s)) marks.push_back(m);
  marks.push_back({s.hi ? std::optional<AlgebraicReal>(*s.hi) : std::nullopt, bit_for(end_value(e, s, false))});
  PiecePlan plan;
  for (size_t j = 0; j + 1 < marks.size(); ++j) {
    plan.bits.push_back(marks[j].bit);
    const auto &a = marks[j].x, &b = marks[j + 1].x;
    Rational q;
    if (a && b)
      q = rational_between(*a, *b);
    else if (a)
      q = (a->is_rational() ? a->rational() : a->hi()) + 1;
    else
      q = (b->is_rational() ? b->rational() : b->lo()) - 1;
    plan.cuts.push_back(q);
  }
  plan.bits.push_back(marks.back().bit);
  return plan;
}

}  // namespace

CleanResult clean_decompose(const PiecewiseFn& f, CleanMode mode) {
  CleanResult res;
  auto finish = [&](PiecewiseFn e) {
    PiecewiseFn u = sub(f, e);
    if (!is_idempotent(e) || !is_unit(u).unit || add(e, u) != f)
      throw std::logic_error("clean decomposition failed its own verification");
    res.clean = true;
    res.e = std::move(e);
    res.u = std::move(u);
    return res;
  };
  if (mode == CleanMode::Continuous) {
    UnitResult u0 = is_unit(f);
    if (u0.unit) return finish(PiecewiseFn::constant(f.domain(), 0));
    UnitResult u1 = is_unit(add_constant(f, -1));
    if (u1.unit) return finish(PiecewiseFn::constant(f.domain(), 1));
    res.certificate.reason = "only 0 and 1 are idempotent here, and neither f nor f - 1 is a unit";
    res.certificate.witnesses = {*u0.witness, *u1.witness};
    return res;
  }
  std::vector<Rational> cuts;
  std::vector<int> piece_bits, point_bits;
  for (size_t i = 0; i < f.piece_count(); ++i) {
    auto plan = plan_piece(f.pieces()[i], f.span(i), res.certificate);
    if (!plan) {
      UnitResult u0 = is_unit(f), u1 = is_unit(add_constant(f, -1));
      if (u0.witness) res.certificate.witnesses.push_back(*u0.witness);
      if (u1.witness) res.certificate.witnesses.push_back(*u1.witness);
      return res;
    }
    piece_bits.push_back(plan->bits[0]);
    for (size_t j = 0; j < plan->cuts.size(); ++j) {
      cuts.push_back(plan->cuts[j]);
      point_bits.push_back(plan->bits[j + 1]);
      piece_bits.push_back(plan->bits[j + 1]);
    }
    if (i < f.breakpoints().size()) {
      cuts.push_back(f.breakpoints()[i]);
      point_bits.push_back(bit_for(f.point_values()[i]));
    }
  }
  return finish(indicator(f.domain(), cuts, piece_bits, point_bits));
}

std::vector<Rational> clean_candidate_grid(const PiecewiseFn& f, int osc_members) {
  std::vector<AlgebraicReal> events;
  for (const auto& c : f.breakpoints()) events.emplace_back(c);
  for (size_t i = 0; i < f.piece_count(); ++i) {
    const PieceExpr& e = f.pieces()[i];
    Span s = f.span(i);
    if (s.lo) events.emplace_back(*s.lo);
    if (s.hi) events.emplace_back(*s.hi);
    if (e.is_poly() && e.poly().is_constant()) continue;
    if (e.is_poly() || !touches_anchor(e.osc(), s)) {
      for (auto& m : level_marks(e, s)) events.push_back(*m.x);
      continue;
    }
    for (const Rational& d : {Rational(0), Rational(-1)}) {
      ZeroSet zs = zero_set_of_piece(shifted(e.osc(), d), s);
      for (const auto& p : zs.points) events.push_back(p);
      for (const auto& fam : zs.families)
        for (const auto& m : fam.members_upto(fam.k_min() + osc_members - 1)) events.emplace_back(m);
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  std::vector<Rational> grid;
  for (size_t i = 0; i < events.size(); ++i) {
    if (events[i].is_rational()) grid.push_back(events[i].rational());
    if (i + 1 < events.size()) grid.push_back(rational_between(events[i], events[i + 1]));
  }
  const Domain& d = f.domain();
  std::vector<Rational> out;
  for (auto& q : grid)
    if ((!d.lo || *d.lo < q) && (!d.hi || q < *d.hi)) out.push_back(q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- F, restriction, indicators

bool in_F(const PiecewiseFn& f) {
  if (f.has_osc()) return false;
  PiecewiseFn g = f;
  while (true) {
    if (component_count(zero_set(g)).infinite) return false;
    if (g.is_zero()) return true;
    g = derivative(g);
  }
}

PiecewiseFn restrict_to(const PiecewiseFn& f, const Domain& sub) {
  const Domain& d = f.domain();
  bool lo_ok = !d.lo || (sub.lo && (*sub.lo > *d.lo || (*sub.lo == *d.lo && (d.lo_closed || !sub.lo_closed))));
  bool hi_ok = !d.hi || (sub.hi && (*sub.hi < *d.hi || (*sub.hi == *d.hi && (d.hi_closed || !sub.hi_closed))));
  if (!lo_ok || !hi_ok) fail(ErrorCode::OutOfDomain, sub.to_string() + " is not inside " + d.to_string());
  size_t i = sub.lo ? *f.piece_toward(*sub.lo, Side::Right) : 0;
  std::vector<Rational> cuts, values;
  std::vector<PieceExpr> exprs{f.pieces()[i]};
  for (size_t j = 0; j < f.breakpoints().size(); ++j) {
    const Rational& c = f.breakpoints()[j];
    if ((sub.lo && c <= *sub.lo) || (sub.hi && c >= *sub.hi)) continue;
    cuts.push_back(c);
    values.push_back(f.point_values()[j]);
    exprs.push_back(f.pieces()[j + 1]);
  }
  return PiecewiseFn::build(sub, cuts, exprs, values);
}

std::optional<PiecewiseFn> idempotent_search(const PiecewiseFn& f, const std::vector<Rational>& grid_in) {
  const Domain& d = f.domain();
  std::vector<Rational> grid;
  for (const auto& q : grid_in)
    if ((!d.lo || *d.lo < q) && (!d.hi || q < *d.hi)) grid.push_back(q);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  size_t cells = grid.size() + 1;

  // ok[j][b]: bit b is admissible on cell j (cells first, then grid points).
  std::vector<std::array<bool, 2>> ok(cells + grid.size());
  for (size_t j = 0; j < cells; ++j) {
    auto lo = j == 0 ? d.lo : std::optional<Rational>(grid[j - 1]);
    auto hi = j + 1 == cells ? d.hi : std::optional<Rational>(grid[j]);
    Domain cell = Domain::make(lo, hi, j == 0 && d.lo_closed, j + 1 == cells && d.hi_closed);
    PiecewiseFn g = restrict_to(f, cell);
    for (int b = 0; b < 2; ++b) ok[j][b] = is_unit(add_constant(g, -b)).unit;
  }
  for (size_t j = 0; j < grid.size(); ++j) {
    Rational v = model_value(f, grid[j]);
    for (int b = 0; b < 2; ++b) ok[cells + j][b] = v != b;
  }
  auto make = [&](const std::vector<int>& bits) {
    std::vector<int> pb(bits.begin(), bits.begin() + static_cast<long>(cells));
    std::vector<int> qb(bits.begin() + static_cast<long>(cells), bits.end());
    return indicator(d, grid, pb, qb);
  };
  size_t n = ok.size();
  if (n <= 12) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> bits(n);
      for (size_t j = 0; j < n; ++j) bits[j] = (mask >> j) & 1u;
      PiecewiseFn e = make(bits);
      if (is_unit(sub(f, e)).unit) return e;
    }
    return std::nullopt;
  }
  std::vector<int> bits(n);
  for (size_t j = 0; j < n; ++j) {
    if (!ok[j][0] && !ok[j][1]) return std::nullopt;
    bits[j] = ok[j][0] ? 0 : 1;
  }
  PiecewiseFn e = make(bits);
  if (!is_unit(sub(f, e)).unit) throw std::logic_error("per-cell idempotent choice is not a unit complement");
  return e;
}

PiecewiseFn indicator(const Domain& d, const std::vector<Rational>& cuts, const std::vector<int>& piece_bits,
                      const std::vector<int>& point_bits) {
  std::vector<PieceExpr> exprs;
  for (int b : piece_bits) exprs.emplace_back(Poly::constant(b));
  std::vector<Rational> values;
  for (int b : point_bits) values.emplace_back(b);
  return PiecewiseFn::build(d, cuts, exprs, values);
}

}  // namespace specm
