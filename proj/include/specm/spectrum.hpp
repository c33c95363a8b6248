#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specm/ideals.hpp"

namespace specm {

/// One maximal ideal: m_x, a member of a P-block singled out by the
/// distinguished function of `family`, or an at-infinity block.
struct MaxIdealDescriptor {
  enum class Kind { M, PBlockMember, JPlus, JMinus };
  Kind kind = Kind::M;
  Rational x;
  Side side = Side::Left;
  std::optional<AccumFamily> family;

  static MaxIdealDescriptor m(const Rational& x);
  static MaxIdealDescriptor p_member(const AccumFamily& f);
  static MaxIdealDescriptor j_plus();
  static MaxIdealDescriptor j_minus();
  std::string to_string() const;
  /// Same maximal ideal (families compared by tail).
  friend bool same_ideal(const MaxIdealDescriptor& a, const MaxIdealDescriptor& b);
};

/// (Z_T, Z_K): the m-locus and the anchors of nonempty P-blocks.
std::pair<ZeroSet, ZeroSet> zt_zk(const ClosedSetDescriptor& V);

/// A class of connected components. Point-like classes over infinite sets
/// stand for infinitely many singleton components.
struct Component {
  enum class Kind {
    MPoint,        ///< {m_x}
    MInterval,     ///< every m_x and implicit P-block over an interval
    MFamily,       ///< every m_x for x in an accumulating family
    FullBlock,     ///< one connected P-block
    BlockMembers,  ///< the singletons of a constrained P-block
    BlockMember,   ///< one listed member of a finite P-block
    JPlus,
    JMinus,
  };
  Kind kind = Kind::MPoint;
  std::optional<AlgebraicReal> point;
  std::optional<ZInterval> interval;
  Side side = Side::Left;
  std::vector<AccumFamily> families;

  bool infinite() const { return kind == Kind::MInterval || kind == Kind::MFamily || kind == Kind::BlockMembers; }
  std::string to_string() const;
};
std::string to_string(Component::Kind k);

struct Components {
  std::vector<Component> classes;
  ComponentCount count;
};
Components connected_components(const ClosedSetDescriptor& V);

struct SplitResult {
  bool connected = true;
  std::optional<IdealDesc> first, second;
  std::optional<ClosedSetDescriptor> first_set, second_set;
  /// Name of the separator used.
  std::string separator;
};
/// Throws NotFromIdeal when V has no source ideal, and OutsideFragment when
/// a multi-family constrained block must be cut (not representable).
SplitResult split(const ClosedSetDescriptor& V);
/// Splits repeatedly until every piece is connected. Throws TooLarge when
/// more than max_pieces pieces appear (infinitely many components).
std::vector<ClosedSetDescriptor> split_fully(const ClosedSetDescriptor& V, size_t max_pieces = 64);

enum class SeparatorKind {
  BumpLeft,   ///< psi_{x,eps,-}: 1 on [x-eps, x], 0 elsewhere
  BumpRight,  ///< psi_{x,eps,+}: 1 on [x, x+eps], 0 elsewhere
  PointKiller,  ///< phi_x: 0 at x, 1 elsewhere
  Window,     ///< alpha_{x,eps}: 0 on (x-eps, x+eps), 1 elsewhere
  StepUp,     ///< psi_k: 0 left of x, 1 from x on
  StepDown,   ///< psi_{-k}: 1 left of x, 0 from x on
};
std::string to_string(SeparatorKind k);
/// Exact separator on d. Throws OutOfDomain, InvalidArgument (eps <= 0).
PiecewiseFn make_separator(const Domain& d, SeparatorKind kind, const Rational& x, const Rational& eps = 0);

struct SeparationWitness {
  PiecewiseFn c, d;
};
struct SeparationResult {
  bool separable = false;
  std::optional<SeparationWitness> witness;
};
/// Throws IdenticalDescriptors for p == q, and OutOfDomain when a descriptor
/// does not live on d.
SeparationResult separate(const Domain& d, const MaxIdealDescriptor& p, const MaxIdealDescriptor& q);
/// Finitely many elements of p used for exact non-membership checks; larger
/// depth shrinks their one-sided windows toward the anchor.
std::vector<PiecewiseFn> membership_data(const Domain& d, const MaxIdealDescriptor& p, int depth = 0);
/// Exact check that c is outside p: <c, membership_data(p)> is the whole ring.
bool provably_outside(const Domain& d, const PiecewiseFn& c, const MaxIdealDescriptor& p);
/// mul(c, d) == 0, c outside p and d outside q.
bool witness_valid(const Domain& d, const SeparationWitness& w, const MaxIdealDescriptor& p,
                   const MaxIdealDescriptor& q);

/// Bounded search for a separating pair among sums and products of
/// separators with at most `depth` leaves, parameters on an 8-anchor by
/// 3-epsilon grid. Depth defaults to SPECM_SEARCH_DEPTH or 3.
struct SearchReport {
  bool found = false;
  std::optional<SeparationWitness> witness;
  size_t leaves = 0;
  size_t distinct_functions = 0;  ///< distinct functions below the final depth
  size_t expressions = 0;         ///< all enumerated sums and products
  size_t pairs_checked = 0;
  size_t pairs_pruned = 0;  ///< pairs whose product is nonzero on a cell both must keep
  int depth = 0;
  std::vector<Rational> anchors, epsilons;
};
int default_search_depth();
SearchReport witness_search(const Domain& d, const MaxIdealDescriptor& p, const MaxIdealDescriptor& q,
                            std::optional<int> depth = std::nullopt);

enum class Fragment {
  PolyPieces,         ///< piecewise polynomials with jumps
  ContinuousPoly,     ///< continuous piecewise polynomials, idempotents 0 and 1 only
  PolyPiecesPlusOsc,  ///< with oscillator pieces
};
std::string to_string(Fragment f);

struct RingVerdict {
  Fragment fragment = Fragment::PolyPieces;
  std::vector<std::string> verdicts;
  size_t corpus_size = 0;
  size_t clean_successes = 0;
  std::optional<CleanCertificate> not_clean;
  bool certificate_confirmed = false;  ///< exhaustive idempotent search found nothing
  std::optional<std::pair<MaxIdealDescriptor, MaxIdealDescriptor>> non_separable;
  std::optional<SearchReport> search;
  size_t split_samples = 0;
  size_t split_successes = 0;
};
RingVerdict ring_verdict(Fragment fragment);

}  // namespace specm
