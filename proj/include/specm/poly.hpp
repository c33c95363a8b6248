#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specm/rational.hpp"

namespace specm {

/// Univariate polynomial over Q, coefficients in ascending degree.
/// The zero polynomial has an empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);

  static Poly constant(const Rational& c);
  static Poly x();
  static Poly monomial(const Rational& c, int degree);
  /// (x - r)
  static Poly linear_root(const Rational& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational lead() const;
  /// Constant term value (0 for the zero polynomial).
  Rational constant_value() const { return coeff(0); }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const;
  Poly derivative() const;
  Poly monic() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Canonical DSL text, descending degree: "x^2 - 1/4", "-x + 1", "0".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Euclidean division; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// p / gcd(p, p'), made monic. Zero for the zero polynomial.
Poly squarefree_part(const Poly& p);

/// Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
std::vector<Poly> sturm_sequence(const Poly& p);
/// Sign variations of the chain at x, zeros dropped.
int sign_variations(const std::vector<Poly>& chain, const Rational& x);

/// Enclosure of {p(y) : lo <= y <= hi} by interval Horner evaluation.
std::pair<Rational, Rational> poly_range_bound(const Poly& p, const Rational& lo, const Rational& hi);

}  // namespace specm
