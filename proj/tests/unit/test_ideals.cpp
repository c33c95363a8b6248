#include <random>

#include "doctest.h"
#include "corpus.hpp"
#include "specm/error.hpp"
#include "specm/ideals.hpp"

using namespace specm;

namespace {

const Domain D01 = Domain::closed(0, 1);
Rational q(long a, long b = 1) { return make_rational(a, b); }
const Rational half = make_rational(1, 2);

PiecewiseFn cst(const Rational& c) { return PiecewiseFn::constant(D01, c); }
PiecewiseFn id() { return PiecewiseFn::identity(D01); }
PiecewiseFn step() { return PiecewiseFn::build(D01, {half}, {Poly(), Poly::constant(1)}, {1}); }
PiecewiseFn phi(const Rational& x) { return PiecewiseFn::build(D01, {x}, {Poly(), Poly()}, {1}); }
PiecewiseFn osc(const Rational& c = 1, const Rational& r = 0) {
  return PiecewiseFn::oscillator(D01, OscPrimitive::standard(half, c, r));
}
PiecewiseFn shrink_member(long n) { return SymbolicFamily::shrink(half, Side::Left).member(D01, n); }
Poly around(const Rational& z) { return (Poly::x() - Poly::constant(z)) * (Poly::x() - Poly::constant(z)); }

}  // namespace

TEST_CASE("side_data examples") {
  CHECK(side_data(shrink_member(4), half, Side::Left).kind == SideKind::VanishesOnNbhd);
  CHECK(side_data(PiecewiseFn::polynomial(D01, around(half)), half, Side::Left).kind == SideKind::LimitZero);
  auto acc = side_data(osc(), half, Side::Left);
  CHECK(acc.kind == SideKind::Accum);
  REQUIRE(acc.families.size() == 1);
  CHECK(acc.families[0].same_tail(AccumFamily::make(half, Side::Left, 1, 0)));
  auto away = side_data(cst(3), half, Side::Right);
  CHECK(away.kind == SideKind::BoundedAway);
  CHECK(away.epsilon > 0);
  CHECK_THROWS_AS(side_data(id(), AlgebraicReal(Rational(0)), Side::Left), Error);
}

TEST_CASE("n_set examples") {
  CHECK(n_set(IdealDesc::make(D01, {cst(2)})).empty());
  // (x - 1/2)^2 off 1/2 with value 1 there: no zeros, not a unit.
  auto f = PiecewiseFn::build(D01, {half}, {around(half), around(half)}, {1});
  CHECK(zero_set(f).is_empty());
  CHECK(n_set(IdealDesc::make(D01, {f})) == std::vector<size_t>{0});
  CHECK(n_set(IdealDesc::make(D01, {id()})).empty());
}

TEST_CASE("is_whole_ring examples") {
  auto w = is_whole_ring(IdealDesc::make(D01, {id(), sub(cst(1), id())}));
  CHECK(w.whole);
  // Oracle: the explicit combination x*x + (1-x)*(1-x) is a unit.
  CHECK(is_unit(add(mul(id(), id()), mul(sub(cst(1), id()), sub(cst(1), id())))).unit);
  CHECK_FALSE(is_whole_ring(IdealDesc::make(D01, {phi(q(1, 4)), phi(q(1, 3)), phi(q(2, 3))})).whole);
  CHECK_FALSE(is_whole_ring(IdealDesc::make(D01, {step()})).whole);
  CHECK(is_whole_ring(IdealDesc::make(D01, {osc(), osc(1, q(-1, 2))})).whole);
}

TEST_CASE("conditions A and B") {
  auto shrink = IdealDesc::make(D01, {}, {SymbolicFamily::shrink(half, Side::Left)});
  CHECK(condition_A(shrink));
  CHECK(condition_B(shrink, half));
  auto single = IdealDesc::make(D01, {id()});
  CHECK(condition_A(single));
  CHECK_FALSE(condition_B(single, 0));
  auto disjoint = IdealDesc::make(D01, {id(), sub(cst(1), id())});
  CHECK_FALSE(condition_A(disjoint));
}

TEST_CASE("is_distinguished") {
  CHECK(is_distinguished(osc(), half, Side::Left));
  CHECK_FALSE(is_distinguished(shrink_member(4), half, Side::Left));
  CHECK_FALSE(is_distinguished(PiecewiseFn::polynomial(D01, Poly::x() * Poly::x()), 0, Side::Right));
  auto f = AccumFamily::make(half, Side::Right, 1, q(-1, 3), 2);
  auto d = distinguished_function(D01, f);
  CHECK(is_distinguished(d, half, Side::Right));
  for (const auto& m : f.members_upto(20))
    if (D01.contains(m)) CHECK(eval(d, m).value == 0);
}

TEST_CASE("classify examples") {
  auto V = classify(IdealDesc::make(D01, {step()}));
  REQUIRE(V.m_locus.intervals.size() == 1);
  CHECK(*V.m_locus.intervals[0].hi == AlgebraicReal(half));
  CHECK_FALSE(V.m_locus.intervals[0].hi_closed);
  auto left = V.block_at(half, Side::Left);
  REQUIRE(left);
  CHECK(left->kind == BlockKind::Full);
  CHECK_FALSE(V.block_at(half, Side::Right));

  auto O = classify(IdealDesc::make(D01, {osc()}));
  CHECK(O.m_locus.families.size() == 2);
  for (Side s : {Side::Left, Side::Right}) {
    auto b = O.block_at(half, s);
    REQUIRE(b);
    CHECK(b->kind == BlockKind::Constrained);
    REQUIRE(b->families.size() == 1);
    CHECK(b->families[0].side() == s);
  }

  // Eventually disjoint families: finitely many common zeros, no block at z.
  auto E = classify_or_empty(IdealDesc::make(D01, {osc(1, 0), osc(2, q(-1, 2))}));
  CHECK(E.m_locus.families.empty());
  CHECK_FALSE(E.block_at(half, Side::Left));
  CHECK_FALSE(E.block_at(half, Side::Right));
  CHECK_THROWS_AS(classify(IdealDesc::make(D01, {cst(1)})), Error);
}

TEST_CASE("classify properties on the corpus") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    std::vector<PiecewiseFn> gens;
    std::uniform_int_distribution<int> n(1, 3);
    int k = n(rng);
    for (int j = 0; j < k; ++j) gens.push_back(testing::random_piecewise(rng));
    IdealDesc I = IdealDesc::make(D01, gens);
    ZeroSet meet = zero_set(gens[0]);
    for (size_t j = 1; j < gens.size(); ++j) meet = zs_intersect(meet, zero_set(gens[j]));
    auto V = classify_or_empty(I);
    if (is_whole_ring(I).whole) {
      CHECK(V.is_empty());
    } else {
      CHECK(zs_equal(V.m_locus, meet));
    }
    if (!condition_A(I)) CHECK(is_whole_ring(I).whole);
    for (const auto& x : {q(0), q(1, 4), half, q(3, 4), q(1)}) CHECK_FALSE(condition_B(I, x));
    // Sum of squares generates an ideal with the same closed set.
    PiecewiseFn s = mul(gens[0], gens[0]);
    for (size_t j = 1; j < gens.size(); ++j) s = add(s, mul(gens[j], gens[j]));
    CHECK(descriptor_equal(classify_or_empty(IdealDesc::make(D01, {s})), V));
    // Monotone: one more generator never enlarges the set.
    auto W = classify_or_empty(I.with({testing::random_piecewise(rng)}));
    CHECK(descriptor_subset(W, V));
  }
}

TEST_CASE("descriptor lattice") {
  auto A = classify(IdealDesc::make(D01, {step()}));
  auto B = classify(IdealDesc::make(D01, {sub(cst(1), step())}));
  CHECK(descriptor_intersection(A, B).is_empty());
  auto U = descriptor_union(A, B);
  CHECK(descriptor_subset(A, U));
  CHECK(descriptor_subset(B, U));
  CHECK(descriptor_equal(descriptor_union(A, A), A));
}
