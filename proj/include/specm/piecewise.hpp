#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specm/algebraic.hpp"
#include "specm/family.hpp"
#include "specm/poly.hpp"
#include "specm/rational.hpp"

namespace specm {

/// Interval domain D with rational or infinite ends. Infinite ends are open.
struct Domain {
  std::optional<Rational> lo, hi;
  bool lo_closed = true, hi_closed = true;

  static Domain closed(const Rational& a, const Rational& b) { return Domain{a, b, true, true}; }
  static Domain make(std::optional<Rational> a, std::optional<Rational> b, bool lo_closed, bool hi_closed);

  bool bounded() const { return lo.has_value() && hi.has_value(); }
  bool contains(const Rational& x) const;
  bool contains(const AlgebraicReal& x) const;
  /// x can be approached from `side` by points of D.
  bool approachable(const Rational& x, Side side) const;
  std::string to_string() const;
  friend bool operator==(const Domain& a, const Domain& b);
};

/// Symbolic oscillator anchored at z: continuous on D \ {z}, bounded by
/// `amplitude`, zero exactly on its left and right families, no one-sided
/// limit at z, and value `anchor_value` at z.
///
/// Exact model: on side S the primitive equals amplitude * tri(c_S/|x-z| - r_S),
/// where tri is the period-2 triangle wave with tri(0)=0, tri(1/2)=1,
/// tri(3/2)=-1. Evaluation at generic points is never exposed; the model only
/// fixes zero families, ranges, and values at refined breakpoints.
struct OscPrimitive {
  Rational anchor;
  AccumFamily left, right;
  Rational amplitude = 1;
  Rational anchor_value = 1;

  /// Same (c, r) on both sides.
  static OscPrimitive standard(const Rational& anchor, const Rational& c, const Rational& r,
                               const Rational& amplitude = 1, const Rational& anchor_value = 1);
  const AccumFamily& family(Side s) const { return s == Side::Left ? left : right; }
  friend bool operator==(const OscPrimitive& a, const OscPrimitive& b);
};

/// scale * osc^power + shift on one side of the anchor; power is 1 or 2.
struct OscTerm {
  Rational scale;
  OscPrimitive osc;
  Rational shift;
  int power = 1;
  friend bool operator==(const OscTerm& a, const OscTerm& b);
};

class PieceExpr {
 public:
  PieceExpr() : v_(Poly()) {}
  PieceExpr(Poly p) : v_(std::move(p)) {}      // NOLINT(google-explicit-constructor)
  PieceExpr(OscTerm t) : v_(std::move(t)) {}   // NOLINT(google-explicit-constructor)

  bool is_poly() const { return std::holds_alternative<Poly>(v_); }
  const Poly& poly() const { return std::get<Poly>(v_); }
  const OscTerm& osc() const { return std::get<OscTerm>(v_); }
  friend bool operator==(const PieceExpr& a, const PieceExpr& b) { return a.v_ == b.v_; }

 private:
  std::variant<Poly, OscTerm> v_;
};

/// Open subinterval of the domain covered by one piece.
struct Span {
  std::optional<Rational> lo, hi;
  bool bounded() const { return lo.has_value() && hi.has_value(); }
  /// A rational strictly inside.
  Rational interior_point() const;
};

/// Bounded function on D with finitely many breakpoints. Piece i covers the
/// open span between consecutive breakpoints (domain ends included as limits);
/// breakpoint values are stored explicitly. Values are kept in a normal form:
/// removable breakpoints are merged and zero-scale oscillator terms collapse.
class PiecewiseFn {
 public:
  /// Throws MalformedPartition, UnboundedPiece.
  static PiecewiseFn build(Domain domain, std::vector<Rational> cuts, std::vector<PieceExpr> exprs,
                           std::vector<Rational> values);
  static PiecewiseFn polynomial(const Domain& d, const Poly& p);
  static PiecewiseFn constant(const Domain& d, const Rational& c);
  static PiecewiseFn identity(const Domain& d);
  /// The primitive itself (scale 1, shift 0), value anchor_value at the anchor.
  static PiecewiseFn oscillator(const Domain& d, const OscPrimitive& osc);

  const Domain& domain() const { return domain_; }
  const std::vector<Rational>& breakpoints() const { return cuts_; }
  const std::vector<PieceExpr>& pieces() const { return exprs_; }
  const std::vector<Rational>& point_values() const { return values_; }
  size_t piece_count() const { return exprs_.size(); }
  Span span(size_t piece) const;

  bool has_osc() const;
  bool is_zero() const;
  /// Index of the piece whose open span contains x, or nullopt when x is a
  /// breakpoint or outside the closure of the domain.
  std::optional<size_t> piece_containing(const Rational& x) const;
  std::optional<size_t> piece_containing(const AlgebraicReal& x) const;
  std::optional<size_t> breakpoint_index(const Rational& x) const;
  /// Piece adjacent to x on `side` (x may be a breakpoint or interior).
  std::optional<size_t> piece_toward(const Rational& x, Side side) const;

  friend bool operator==(const PiecewiseFn& a, const PiecewiseFn& b);
  friend bool operator!=(const PiecewiseFn& a, const PiecewiseFn& b) { return !(a == b); }

 private:
  void normalize();
  Domain domain_;
  std::vector<Rational> cuts_;
  std::vector<PieceExpr> exprs_;
  std::vector<Rational> values_;
};

// Ring operations. DomainMismatch, OutsideFragment.
PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn sub(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn mul(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn scale(const Rational& s, const PiecewiseFn& f);
PiecewiseFn add_constant(const PiecewiseFn& f, const Rational& c);

struct EvalResult {
  bool symbolic = false;  ///< SymbolicOsc: generic point inside an oscillator piece.
  Rational value;
};
EvalResult eval(const PiecewiseFn& f, const Rational& x);

enum class LimitKind { Value, Oscillates, Unbounded };
struct LimitResult {
  LimitKind kind = LimitKind::Value;
  Rational value;
};
LimitResult side_limit(const PiecewiseFn& f, const Rational& x, Side side);
/// lim |f| toward +inf (sign > 0) or -inf (sign < 0); domain must be unbounded there.
LimitResult limit_at_infinity(const PiecewiseFn& f, int sign);

/// Exact value of a piece expression at a point of its closed span other
/// than an oscillator anchor (oscillator terms use the triangle model).
Rational piece_value(const PieceExpr& e, const Rational& x);
/// Closed range of a piece expression over the closure of a span.
std::pair<Rational, Rational> piece_range(const PieceExpr& e, const Span& s);
/// True when an oscillator term's span touches its anchor.
bool touches_anchor(const OscTerm& t, const Span& s);

/// Per-piece formal derivative; breakpoint values average the one-sided
/// derivatives. Throws NotDifferentiableFragment on oscillator pieces.
PiecewiseFn derivative(const PiecewiseFn& f);

/// InfinityLimitZero: |f| tends to 0 toward +inf (side Right) or -inf (Left).
enum class UnitWitnessKind { ZeroAt, SideLimitZero, OscCrossing, InfinityLimitZero };
struct UnitWitness {
  UnitWitnessKind kind = UnitWitnessKind::ZeroAt;
  AlgebraicReal point;
  Side side = Side::Left;
  std::string to_string() const;
};
struct UnitResult {
  bool unit = false;
  Rational epsilon;                    ///< certified inf |f| lower bound when unit
  std::optional<UnitWitness> witness;  ///< when not a unit
};
UnitResult is_unit(const PiecewiseFn& f);
/// Exact check that a witness satisfies its claim.
bool witness_holds(const PiecewiseFn& f, const UnitWitness& w);

bool is_idempotent(const PiecewiseFn& f);

enum class CleanMode {
  Piecewise,   ///< idempotents may jump (the ring R)
  Continuous,  ///< idempotents restricted to 0 and 1 (connected D, no jumps)
};
struct CleanCertificate {
  std::string reason;
  std::optional<Rational> anchor;
  std::optional<Side> side;
  std::optional<std::pair<Rational, Rational>> range;
  std::vector<UnitWitness> witnesses;
};
struct CleanResult {
  bool clean = false;
  std::optional<PiecewiseFn> e, u;
  CleanCertificate certificate;
};
CleanResult clean_decompose(const PiecewiseFn& f, CleanMode mode = CleanMode::Piecewise);

/// Rational cut points of the clean-decomposition grid: breakpoints, points
/// between consecutive roots of f and f-1, and the roots themselves when
/// rational. Oscillator families contribute their first `osc_members` members.
std::vector<Rational> clean_candidate_grid(const PiecewiseFn& f, int osc_members = 3);

bool in_F(const PiecewiseFn& f);

/// f on the sub-domain `sub` (which must lie inside f's domain).
PiecewiseFn restrict_to(const PiecewiseFn& f, const Domain& sub);

/// Search over all idempotents constant on the cells of `grid` (open cells
/// between consecutive grid points, and the grid points themselves) for one
/// with f - e a unit. Enumerates every bit assignment when the cell count is
/// small, and otherwise uses the exact per-cell factorisation of the search.
std::optional<PiecewiseFn> idempotent_search(const PiecewiseFn& f, const std::vector<Rational>& grid);

/// Indicator helpers used by separators and decompositions.
PiecewiseFn indicator(const Domain& d, const std::vector<Rational>& cuts, const std::vector<int>& piece_bits,
                      const std::vector<int>& point_bits);

}  // namespace specm
