#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specm/piecewise.hpp"
#include "specm/zeroset.hpp"

namespace specm {

/// Infinite generator family attached to an ideal description.
struct SymbolicFamily {
  enum class Kind {
    ShrinkingInterval,  ///< {f_n : Z(f_n) = [x - 1/n, x)} or the mirrored right-hand version
    AccumTail,          ///< distinguished functions whose zeros are the tails of `family`
  };
  Kind kind = Kind::ShrinkingInterval;
  Rational anchor;
  Side side = Side::Left;
  std::optional<AccumFamily> family;

  static SymbolicFamily shrink(const Rational& anchor, Side side);
  static SymbolicFamily tail(const AccumFamily& f);
  /// The n-th generator of the family as a concrete function on d.
  PiecewiseFn member(const Domain& d, long n) const;
  std::string to_string() const;
  friend bool operator==(const SymbolicFamily& a, const SymbolicFamily& b);
};

/// Finitely many generators plus symbolic families, all over one domain.
struct IdealDesc {
  Domain domain;
  std::vector<PiecewiseFn> generators;
  std::vector<SymbolicFamily> families;

  /// Throws InvalidArgument (nothing given), DomainMismatch, OutOfDomain.
  static IdealDesc make(const Domain& d, std::vector<PiecewiseFn> gens, std::vector<SymbolicFamily> fams = {});
  /// <this, extra generators>.
  IdealDesc with(const std::vector<PiecewiseFn>& more) const;
};

enum class SideKind { VanishesOnNbhd, LimitZero, Accum, BoundedAway, OscilNoLimit };
std::string to_string(SideKind k);

/// Local behaviour of one function approaching `point` from `side`.
struct SideData {
  AlgebraicReal point;
  Side side = Side::Left;
  SideKind kind = SideKind::BoundedAway;
  std::vector<AccumFamily> families;  ///< Accum: the zero families accumulating there
  Rational epsilon;                   ///< BoundedAway, OscilNoLimit: |f| >= epsilon near the point
};

/// Throws OutOfDomain when the point cannot be approached from `side`.
SideData side_data(const PiecewiseFn& f, const AlgebraicReal& x, Side side);

/// Indices of generators without zeros that are still not units.
std::vector<size_t> n_set(const IdealDesc& I);

struct WholeRingResult {
  bool whole = false;
  /// When whole: a sub-collection of generators and families that already
  /// generates the ring.
  std::vector<size_t> generators;
  std::vector<size_t> families;
  /// When the witness generators are polynomial: inf of their sum of squares.
  std::optional<Rational> sum_of_squares_epsilon;
};
WholeRingResult is_whole_ring(const IdealDesc& I);

bool condition_A(const IdealDesc& I);
bool condition_B(const IdealDesc& I, const Rational& x);
bool is_distinguished(const PiecewiseFn& f, const Rational& x, Side side);

/// Non-absent part of a P-block at one anchor side. Absent blocks are not stored.
enum class BlockKind {
  Full,          ///< every maximal ideal of the block
  Constrained,   ///< the ideals containing a distinguished function vanishing on `families`
  FinitePoints,  ///< finitely many ideals, one per entry of `families`
};
std::string to_string(BlockKind k);

struct Block {
  AlgebraicReal anchor;
  Side side = Side::Left;
  BlockKind kind = BlockKind::Full;
  std::vector<AccumFamily> families;
  std::string to_string() const;
};

/// Closed subset of the maximal spectrum.
struct ClosedSetDescriptor {
  Domain domain;
  ZeroSet m_locus;
  /// Sorted by (anchor, side). Implicit blocks are Full and never stored:
  /// sides covered by an m_locus interval, and both sides of every m_locus
  /// point or family member unless listed in `absent`.
  std::vector<Block> blocks;
  /// Sides of m_locus points whose block is empty.
  std::vector<std::pair<AlgebraicReal, Side>> absent;
  bool j_plus = false, j_minus = false;
  std::optional<IdealDesc> source;

  bool is_empty() const;
  /// Effective block at (x, side), implicit blocks included; nullopt when absent.
  std::optional<Block> block_at(const AlgebraicReal& x, Side side) const;
  /// Drops implicit blocks and stale absent entries, and sorts.
  void normalize();
  std::string to_string() const;
};

/// Every maximal ideal containing I. Throws WholeRing when I is the ring.
ClosedSetDescriptor classify(const IdealDesc& I);
/// Same as classify, but returns the empty descriptor for the whole ring.
ClosedSetDescriptor classify_or_empty(const IdealDesc& I);

/// Set equality of descriptors (families compared as tail unions).
bool descriptor_equal(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b);
/// Blockwise union / intersection.
ClosedSetDescriptor descriptor_union(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b);
ClosedSetDescriptor descriptor_intersection(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b);
/// a contained in b.
bool descriptor_subset(const ClosedSetDescriptor& a, const ClosedSetDescriptor& b);

/// A distinguished function: zeros exactly the members of f (k >= f.k_min()),
/// constant 1 away from f's anchor side.
PiecewiseFn distinguished_function(const Domain& d, const AccumFamily& f);

}  // namespace specm
