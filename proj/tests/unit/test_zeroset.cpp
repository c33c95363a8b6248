#include <random>

#include "doctest.h"
#include "corpus.hpp"
#include "oracles/family_members.hpp"
#include "specm/zeroset.hpp"

using namespace specm;

namespace {

const Domain D01 = Domain::closed(0, 1);
Rational q(long a, long b = 1) { return make_rational(a, b); }

ZInterval iv(const Rational& a, const Rational& b, bool lc, bool hc) {
  return ZInterval{AlgebraicReal(a), AlgebraicReal(b), lc, hc};
}

PiecewiseFn step_zero_on(const Rational& a, const Rational& b) {
  // 1 on [0,a), 0 on [a,b), 1 on [b,1]
  return PiecewiseFn::build(D01, {a, b}, {Poly::constant(1), Poly(), Poly::constant(1)}, {0, 1});
}

/// Probe points: a 1/64 grid plus the first members of every family.
std::vector<Rational> probes(const std::vector<const ZeroSet*>& sets) {
  std::vector<Rational> xs;
  for (int k = 0; k <= 64; ++k) xs.push_back(q(k, 64));
  for (const auto* z : sets)
    for (const auto& f : z->families)
      for (const auto& m : f.members_upto(f.k_min() + 30)) xs.push_back(m);
  return xs;
}

}  // namespace

TEST_CASE("zero_set examples") {
  auto z = zero_set(PiecewiseFn::polynomial(D01, Poly::x() * Poly::x() - Poly::constant(q(1, 4))));
  CHECK(z.intervals.empty());
  REQUIRE(z.points.size() == 1);
  CHECK(z.points[0] == AlgebraicReal(q(1, 2)));

  auto fn = zero_set(step_zero_on(q(1, 4), q(1, 2)));
  REQUIRE(fn.intervals.size() == 1);
  CHECK(*fn.intervals[0].lo == AlgebraicReal(q(1, 4)));
  CHECK(fn.intervals[0].lo_closed);
  CHECK_FALSE(fn.intervals[0].hi_closed);

  auto g = add_constant(PiecewiseFn::oscillator(D01, OscPrimitive::standard(q(1, 2), 1, 0)), 2);
  CHECK(zero_set(g).is_empty());

  auto o = zero_set(PiecewiseFn::oscillator(D01, OscPrimitive::standard(q(1, 2), 1, 0)));
  CHECK(o.families.size() == 2);
  CHECK(component_count(o).infinite);
}

TEST_CASE("intersection and union") {
  Rational x = q(1, 2);
  auto a = ZeroSet::interval(iv(x - q(1, 3), x, true, false));
  auto b = ZeroSet::interval(iv(x - q(1, 5), x, true, false));
  CHECK(zs_equal(zs_intersect(a, b), b));
  CHECK(zs_equal(zs_union(a, b), a));

  auto f1 = AccumFamily::make(x, Side::Left, 1, 0, 3);
  auto f2 = AccumFamily::make(x, Side::Left, 2, 0, 5);
  auto both = zs_intersect(ZeroSet::family(f1), ZeroSet::family(f2));
  REQUIRE(both.families.size() == 1);
  // Oracle: first 50 members of each, intersected by value.
  auto m1 = oracle::members(x, Side::Left, 1, 0, 3, 53);
  auto m2 = oracle::members(x, Side::Left, 2, 0, 5, 120);
  for (const auto& m : m1) CHECK(both.contains(m) == (std::find(m2.begin(), m2.end(), m) != m2.end()));

  auto f3 = AccumFamily::make(x, Side::Left, 1, q(1, 2), 3);
  auto none = zs_intersect(ZeroSet::family(f1), ZeroSet::family(f3));
  CHECK(none.families.empty());
  CHECK(oracle::common_count(m1, oracle::members(x, Side::Left, 1, q(1, 2), 3, 53)) == none.points.size());
}

TEST_CASE("closure, isolated points and component counts") {
  Rational x = q(1, 2);
  auto a = ZeroSet::interval(iv(x - q(1, 4), x, true, false));
  auto ca = zs_closure(a);
  REQUIRE(ca.intervals.size() == 1);
  CHECK(ca.intervals[0].hi_closed);
  CHECK(zs_equal(zs_closure(ca), ca));

  auto fam = ZeroSet::family(AccumFamily::make(x, Side::Left, 1, 0, 3));
  auto cf = zs_closure(fam);
  CHECK(cf.contains(x));
  CHECK(zs_subset(fam, cf));
  CHECK(zs_equal(zs_iso(cf), fam));
  CHECK(zs_equal(zs_iso(fam), fam));

  ZeroSet pts;
  pts.points = {AlgebraicReal(q(1, 4)), AlgebraicReal(q(3, 4))};
  pts.normalize();
  CHECK(zs_equal(zs_closure(pts), pts));

  auto mixed = zs_union(ZeroSet::interval(iv(0, q(1, 4), true, true)), ZeroSet::point(q(1, 2)));
  CHECK(zs_equal(zs_iso(mixed), ZeroSet::point(q(1, 2))));
  auto three = zs_union(mixed, ZeroSet::point(q(3, 4)));
  CHECK(component_count(three).count == 3);
  CHECK_FALSE(component_count(three).infinite);
  CHECK(component_count(fam).infinite);
  CHECK(component_count(ZeroSet::empty()).count == 0);
}

TEST_CASE("families_eventually_disjoint") {
  Rational x = q(1, 2);
  auto f = AccumFamily::make(x, Side::Left, 1, 0);
  CHECK(families_eventually_disjoint(f, AccumFamily::make(x, Side::Left, 1, q(1, 2))));
  CHECK_FALSE(families_eventually_disjoint(f, AccumFamily::make(x, Side::Left, 2, 0)));
  CHECK_FALSE(families_eventually_disjoint(f, f));
  CHECK(families_eventually_disjoint(f, AccumFamily::make(x, Side::Right, 1, 0)));
}

TEST_CASE("lattice laws by membership probing") {
  std::mt19937_64 rng(5);
  std::vector<ZeroSet> pool;
  for (int i = 0; i < 12; ++i) pool.push_back(zero_set(testing::random_piecewise(rng)));
  pool.push_back(ZeroSet::family(AccumFamily::make(q(1, 2), Side::Left, 1, 0, 3)));
  pool.push_back(ZeroSet::family(AccumFamily::make(q(1, 2), Side::Left, 2, 0, 5)));
  for (const auto& a : pool)
    for (const auto& b : pool) {
      auto i = zs_intersect(a, b), u = zs_union(a, b);
      CHECK(zs_equal(i, zs_intersect(b, a)));
      CHECK(zs_equal(u, zs_union(b, a)));
      CHECK(zs_equal(zs_union(a, zs_intersect(a, b)), a));
      CHECK(zs_equal(zs_intersect(a, zs_union(a, b)), a));
      for (const auto& x : probes({&a, &b})) {
        CHECK(i.contains(x) == (a.contains(x) && b.contains(x)));
        CHECK(u.contains(x) == (a.contains(x) || b.contains(x)));
      }
    }
  for (const auto& a : pool) CHECK(zs_equal(zs_intersect(a, a), a));
}

TEST_CASE("zero sets of products and sums of squares") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    auto f = testing::random_piecewise(rng), g = testing::random_piecewise(rng);
    auto zf = zero_set(f), zg = zero_set(g);
    CHECK(zs_equal(zero_set(mul(f, g)), zs_union(zf, zg)));
    CHECK(zs_equal(zero_set(add(mul(f, f), mul(g, g))), zs_intersect(zf, zg)));
  }
}

TEST_CASE("membership agrees with evaluation") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    auto f = testing::random_piecewise(rng);
    auto z = zero_set(f);
    for (const auto& x : testing::sample_points(rng, f, 100)) CHECK(z.contains(x) == (eval(f, x).value == 0));
  }
}
