#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specm/algebraic.hpp"
#include "specm/family.hpp"
#include "specm/piecewise.hpp"

namespace specm {

/// Interval with algebraic or infinite (nullopt) endpoints.
struct ZInterval {
  std::optional<AlgebraicReal> lo, hi;
  bool lo_closed = true, hi_closed = true;
};

/// Finite union of intervals, isolated points and accumulating families.
/// Kept normalised: intervals disjoint, non-adjacent and sorted; points
/// sorted, outside intervals and not family members; families sorted with
/// redundant members absorbed.
class ZeroSet {
 public:
  std::vector<ZInterval> intervals;
  std::vector<AlgebraicReal> points;
  std::vector<AccumFamily> families;

  static ZeroSet empty() { return {}; }
  static ZeroSet whole(const Domain& d);
  static ZeroSet point(const AlgebraicReal& x);
  static ZeroSet interval(ZInterval iv);
  static ZeroSet family(const AccumFamily& f);

  bool is_empty() const { return intervals.empty() && points.empty() && families.empty(); }
  bool contains(const AlgebraicReal& x) const;
  bool contains(const Rational& x) const { return contains(AlgebraicReal(x)); }
  /// Points of the set in (x - d, x) (Left) or (x, x + d) for every d > 0.
  bool accumulates_at(const Rational& x, Side side) const;
  /// Some (x - d, x) resp. (x, x + d) lies inside the set.
  bool covers_side(const Rational& x, Side side) const;

  void normalize();
  std::string to_string() const;
};

struct ComponentCount {
  bool infinite = false;
  size_t count = 0;
};

/// Z(f). Throws OutsideFragment for oscillator shifts with no rational zero model.
ZeroSet zero_set(const PiecewiseFn& f);
/// Zeros of one piece expression inside its open span.
ZeroSet zero_set_of_piece(const PieceExpr& e, const Span& s);
ZeroSet zs_intersect(const ZeroSet& a, const ZeroSet& b);
ZeroSet zs_union(const ZeroSet& a, const ZeroSet& b);
ZeroSet zs_closure(const ZeroSet& a);
ZeroSet zs_iso(const ZeroSet& a);
ComponentCount component_count(const ZeroSet& a);
/// Set equality (the tangential flag is metadata and ignored).
bool zs_equal(const ZeroSet& a, const ZeroSet& b);
/// Set inclusion, decided exactly.
bool zs_subset(const ZeroSet& a, const ZeroSet& b);

/// Members of f inside iv: an infinite sub-family (when iv reaches the anchor
/// from f's side) plus finitely many explicit points.
ZeroSet family_within(const AccumFamily& f, const ZInterval& iv);

}  // namespace specm
