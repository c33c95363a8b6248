#pragma once

#include <string>
#include <vector>

#include "specm/poly.hpp"
#include "specm/rational.hpp"

namespace specm {

enum class Cmp { Less, Equal, Greater };

/// A real algebraic number: the unique root of a square-free polynomial in
/// an isolating interval. Rational values always use the point interval
/// [q, q] with defining polynomial x - q, so a non-degenerate interval
/// implies an irrational value.
class AlgebraicReal {
 public:
  AlgebraicReal() : AlgebraicReal(Rational(0)) {}
  /// Implicit on purpose: rationals embed into the algebraic reals.
  AlgebraicReal(const Rational& q);  // NOLINT(google-explicit-constructor)

  /// Trusted constructor: `sqfree` has exactly one root in the open
  /// interval (lo, hi) and none at the endpoints.
  static AlgebraicReal from_isolating(Poly sqfree, Rational lo, Rational hi);

  bool is_rational() const { return lo_ == hi_; }
  /// Requires is_rational().
  const Rational& rational() const { return lo_; }
  const Poly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  /// Copy whose isolating interval has width <= max_width.
  AlgebraicReal refined(const Rational& max_width) const;
  /// One bisection step.
  AlgebraicReal bisected() const;
  double approx() const;

  /// "1/2" for rationals, "root of x^2 - 2 in (1, 3/2)" otherwise.
  std::string to_string() const;

 private:
  Poly poly_;
  Rational lo_, hi_;
};

Cmp alg_compare(const AlgebraicReal& a, const AlgebraicReal& b);
/// -1, 0, +1.
int compare(const AlgebraicReal& a, const AlgebraicReal& b);

inline bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) == 0; }
inline bool operator!=(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) != 0; }
inline bool operator<(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) < 0; }
inline bool operator<=(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) <= 0; }
inline bool operator>(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) > 0; }
inline bool operator>=(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) >= 0; }

/// Sign of p at a.
int sign_at(const Poly& p, const AlgebraicReal& a);

/// All real roots of p in the closed window [lo, hi], ascending, with
/// pairwise disjoint isolating intervals. Throws ZeroPolynomial for p = 0.
std::vector<AlgebraicReal> isolate_real_roots(const Poly& p, const Rational& lo, const Rational& hi);

/// Upper bound on the absolute value of every real root (Cauchy).
Rational root_bound(const Poly& p);

/// A rational strictly between a and b; requires a < b.
Rational rational_between(const AlgebraicReal& a, const AlgebraicReal& b);

/// Interval with algebraic endpoints and explicit open/closed flags.
struct AlgInterval {
  AlgebraicReal lo, hi;
  bool lo_closed = true, hi_closed = true;
};

enum class SignKind { AllPositive, AllNegative, HasZero, MixedWithZeros };

struct SignSummary {
  SignKind kind = SignKind::AllPositive;
  /// Roots inside the interval, ascending.
  std::vector<AlgebraicReal> roots;
  /// Set for the zero polynomial (kind is HasZero, roots empty).
  bool identically_zero = false;
};

/// Sign behaviour of p on iv. HasZero means p has roots in iv but never
/// changes sign there; MixedWithZeros means it takes both signs.
SignSummary poly_sign_summary(const Poly& p, const AlgInterval& iv);

std::string to_string(SignKind k);

}  // namespace specm
