#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specm/algebraic.hpp"
#include "specm/rational.hpp"

namespace specm {

enum class Side { Left, Right };

std::string to_string(Side s);
inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

/// Accumulating sequence s_k = anchor - c/(k+r) (Left) or anchor + c/(k+r)
/// (Right) for k >= k_min. Stored canonically with r in (-1, 0] so that two
/// families describe the same tail exactly when c and r agree.
class AccumFamily {
 public:
  /// Any k_min is accepted; it is raised until k_min + r > 0 and then the
  /// representation is canonicalised. Requires c > 0.
  static AccumFamily make(const Rational& anchor, Side side, const Rational& c, const Rational& r,
                          const Integer& k_min = 1, bool tangential = false);

  const Rational& anchor() const { return anchor_; }
  Side side() const { return side_; }
  const Rational& c() const { return c_; }
  const Rational& r() const { return r_; }
  const Integer& k_min() const { return k_min_; }
  bool tangential() const { return tangential_; }

  Rational member(const Integer& k) const;
  Rational first() const { return member(k_min_); }
  /// Index k >= k_min with member(k) == x, if any.
  std::optional<Integer> index_of(const Rational& x) const;
  bool contains(const Rational& x) const { return index_of(x).has_value(); }
  /// Non-rational algebraic numbers are never members.
  bool contains(const AlgebraicReal& x) const;

  AccumFamily with_k_min(const Integer& k) const;
  AccumFamily with_tangential(bool t) const;

  /// Smallest k >= k_min whose member lies strictly past `bound` in the
  /// direction of the anchor (or at/past it when `strict` is false).
  /// nullopt when no member ever does.
  std::optional<Integer> first_index_past(const AlgebraicReal& bound, bool strict) const;

  /// Members with k_min <= k <= k_max.
  std::vector<Rational> members_upto(const Integer& k_max) const;

  /// Same tail as sets (ignores k_min and the tangential flag).
  bool same_tail(const AccumFamily& o) const;

  friend bool operator==(const AccumFamily& a, const AccumFamily& b);
  friend bool operator!=(const AccumFamily& a, const AccumFamily& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Rational anchor_;
  Side side_ = Side::Left;
  Rational c_, r_;
  Integer k_min_ = 1;
  bool tangential_ = false;
};

/// Total order used for deterministic sorting of family lists.
bool family_less(const AccumFamily& a, const AccumFamily& b);

/// True iff p and q share only finitely many members. Different anchors or
/// sides are trivially eventually disjoint.
bool families_eventually_disjoint(const AccumFamily& p, const AccumFamily& q);

/// Exact intersection for the same anchor and side: empty or an infinite
/// sub-family (the overlap of c(k'+r') = c'(k+r) is an arithmetic progression).
std::optional<AccumFamily> family_intersection(const AccumFamily& p, const AccumFamily& q);

/// Tail of g contained in tail of f (same anchor and side required).
bool family_tail_subset(const AccumFamily& g, const AccumFamily& f);

/// Tail of g contained in the union of the tails in fs.
bool family_tail_subset(const AccumFamily& g, const std::vector<AccumFamily>& fs);
/// Tail-level set inclusion / equality of finite unions of families.
bool family_union_subset(const std::vector<AccumFamily>& a, const std::vector<AccumFamily>& b);
bool family_union_equal(const std::vector<AccumFamily>& a, const std::vector<AccumFamily>& b);
/// Pairwise intersection of two unions, simplified.
std::vector<AccumFamily> family_union_intersection(const std::vector<AccumFamily>& a,
                                                   const std::vector<AccumFamily>& b);
/// Drops members whose tail is covered by another member, sorts.
std::vector<AccumFamily> simplify_family_union(std::vector<AccumFamily> fs);

/// Partition of f into `parts` disjoint sub-families by index residue.
std::vector<AccumFamily> split_family(const AccumFamily& f, int parts);

}  // namespace specm
