#pragma once

// Deterministic random corpora shared by the unit and acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include "specm/piecewise.hpp"
#include "specm/rational.hpp"

namespace specm::testing {

inline Rational random_rational(std::mt19937_64& rng, long max_abs, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  long q = den(rng);
  std::uniform_int_distribution<long> num(-max_abs * q, max_abs * q);
  return make_rational(num(rng), q);
}

inline Poly random_poly(std::mt19937_64& rng, int max_degree, long max_abs = 10, long max_den = 8) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  int n = deg(rng);
  std::vector<Rational> c;
  for (int i = 0; i <= n; ++i) c.push_back(random_rational(rng, max_abs, max_den));
  if (c.back() == 0) c.back() = 1;
  return Poly(c);
}

/// Sorted distinct cuts strictly inside (0, 1) on a 1/16 grid.
inline std::vector<Rational> random_cuts(std::mt19937_64& rng, int count) {
  std::uniform_int_distribution<int> pos(1, 15);
  std::vector<int> ks;
  while (static_cast<int>(ks.size()) < count) {
    int k = pos(rng);
    if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  std::vector<Rational> cuts;
  for (int k : ks) cuts.push_back(make_rational(k, 16));
  return cuts;
}

enum class Jumps { Any, None };

/// Piecewise polynomial on [0, 1]: at most 5 pieces of degree at most 4.
/// Jumps::None makes every breakpoint continuous.
inline PiecewiseFn random_piecewise(std::mt19937_64& rng, Jumps jumps = Jumps::Any, int max_pieces = 5,
                                    int max_degree = 4) {
  Domain d = Domain::closed(0, 1);
  std::uniform_int_distribution<int> pieces(1, max_pieces), coin(0, 2);
  int n = pieces(rng);
  auto cuts = random_cuts(rng, n - 1);
  std::vector<PieceExpr> exprs;
  std::vector<Rational> values;
  Poly prev;
  for (int i = 0; i < n; ++i) {
    Poly p = random_poly(rng, max_degree, 3, 4);
    if (i > 0) {
      const Rational& b = cuts[static_cast<size_t>(i - 1)];
      if (jumps == Jumps::None) p = p + Poly::constant(prev.eval(b) - p.eval(b));
      int c = coin(rng);
      // Value from the left, from the right, or an isolated value.
      Rational v = c == 0 ? prev.eval(b) : c == 1 ? p.eval(b) : random_rational(rng, 3, 4);
      values.push_back(jumps == Jumps::None ? prev.eval(b) : v);
    }
    exprs.emplace_back(p);
    prev = p;
  }
  return PiecewiseFn::build(d, cuts, exprs, values);
}

/// Oscillator-bearing function: a piecewise polynomial with an oscillator
/// term on both pieces adjacent to a grid anchor.
inline PiecewiseFn random_with_osc(std::mt19937_64& rng) {
  Domain d = Domain::closed(0, 1);
  std::uniform_int_distribution<int> pos(2, 14), small(1, 3), pw(1, 2);
  Rational z = make_rational(pos(rng), 16);
  OscPrimitive o = OscPrimitive::standard(z, make_rational(small(rng), 2), make_rational(-small(rng), 4),
                                          make_rational(small(rng), 1), make_rational(small(rng) - 2, 1));
  OscTerm t{random_rational(rng, 3, 4), o, random_rational(rng, 3, 4), pw(rng)};
  if (t.scale == 0) t.scale = 1;
  Rational a = z - make_rational(1, 16), b = z + make_rational(1, 16);
  std::vector<PieceExpr> exprs = {random_poly(rng, 3, 3, 4), t, t, random_poly(rng, 3, 3, 4)};
  std::vector<Rational> values = {random_rational(rng, 3, 4), random_rational(rng, 3, 4), random_rational(rng, 3, 4)};
  return PiecewiseFn::build(d, {a, z, b}, exprs, values);
}

/// Rational points of [0, 1]: all breakpoints plus random grid points.
inline std::vector<Rational> sample_points(std::mt19937_64& rng, const PiecewiseFn& f, size_t n) {
  std::vector<Rational> xs(f.breakpoints());
  xs.push_back(0);
  xs.push_back(1);
  std::uniform_int_distribution<long> k(0, 1 << 16);
  while (xs.size() < n) xs.push_back(make_rational(k(rng), 1 << 16));
  return xs;
}

}  // namespace specm::testing
