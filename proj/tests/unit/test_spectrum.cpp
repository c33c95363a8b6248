#include <algorithm>

#include "doctest.h"
#include "specm/error.hpp"
#include "specm/spectrum.hpp"

using namespace specm;

namespace {

const Domain D01 = Domain::closed(0, 1);
Rational q(long a, long b = 1) { return make_rational(a, b); }
const Rational half = make_rational(1, 2);

PiecewiseFn cst(const Rational& c) { return PiecewiseFn::constant(D01, c); }
PiecewiseFn step() { return PiecewiseFn::build(D01, {half}, {Poly(), Poly::constant(1)}, {1}); }
PiecewiseFn phi(const Rational& x) { return PiecewiseFn::build(D01, {x}, {Poly(), Poly()}, {1}); }
PiecewiseFn osc() { return PiecewiseFn::oscillator(D01, OscPrimitive::standard(half, 1, 0)); }
PiecewiseFn roots(std::initializer_list<Rational> rs) {
  Poly p = Poly::constant(1);
  for (const auto& r : rs) p = p * Poly::linear_root(r);
  return PiecewiseFn::polynomial(D01, p);
}
/// Zero exactly at the listed points, 1 elsewhere, with jumps: no P-blocks.
PiecewiseFn point_killer(std::initializer_list<Rational> rs) {
  PiecewiseFn f = cst(1);
  for (const auto& r : rs) f = sub(f, phi(r));
  return f;
}
MaxIdealDescriptor P(const Rational& z, Side s, const Rational& c, const Rational& r) {
  return MaxIdealDescriptor::p_member(AccumFamily::make(z, s, c, r));
}

}  // namespace

TEST_CASE("zt_zk") {
  auto V = classify(IdealDesc::make(D01, {step()}));
  auto [zt, zk] = zt_zk(V);
  CHECK(zs_equal(zt, V.m_locus));
  CHECK(zk.contains(half));
  CHECK_FALSE(zt.contains(half));
  auto O = classify(IdealDesc::make(D01, {osc()}));
  auto [ot, ok] = zt_zk(O);
  CHECK(ot.families.size() == 2);
  CHECK(ok.contains(half));
  auto [et, ek] = zt_zk(ClosedSetDescriptor{D01, {}, {}, {}, false, false, std::nullopt});
  CHECK(et.is_empty());
  CHECK(ek.is_empty());
}

TEST_CASE("connected components") {
  auto shrink = classify(IdealDesc::make(D01, {}, {SymbolicFamily::shrink(half, Side::Left)}));
  auto c1 = connected_components(shrink);
  CHECK(c1.count.count == 1);
  CHECK(c1.classes.at(0).kind == Component::Kind::FullBlock);

  auto three = connected_components(classify(IdealDesc::make(D01, {point_killer({q(1, 4), half, q(3, 4)})})));
  CHECK(three.count.count == 3);
  for (const auto& c : three.classes) CHECK(c.kind == Component::Kind::MPoint);

  auto poly = connected_components(classify(IdealDesc::make(D01, {roots({q(1, 4), q(3, 4)})})));
  CHECK(poly.count.count == 6);

  auto o = connected_components(classify(IdealDesc::make(D01, {osc()})));
  CHECK(o.count.infinite);
  CHECK(std::any_of(o.classes.begin(), o.classes.end(),
                    [](const Component& c) { return c.kind == Component::Kind::BlockMembers; }));
}

TEST_CASE("separators") {
  auto b = make_separator(D01, SeparatorKind::BumpLeft, half, q(1, 8));
  CHECK(eval(b, q(3, 8)).value == 1);
  CHECK(eval(b, q(7, 16)).value == 1);
  CHECK(eval(b, half).value == 1);
  CHECK(eval(b, q(1, 4)).value == 0);
  CHECK(eval(b, q(5, 8)).value == 0);
  auto p = make_separator(D01, SeparatorKind::PointKiller, half);
  CHECK(eval(p, half).value == 0);
  CHECK(eval(p, q(1, 3)).value == 1);
  auto s = make_separator(D01, SeparatorKind::StepUp, half);
  CHECK(eval(s, q(1, 4)).value == 0);
  CHECK(eval(s, half).value == 1);
  auto w = make_separator(D01, SeparatorKind::Window, half, q(1, 8));
  CHECK(eval(w, half).value == 0);
  CHECK(eval(w, q(1, 4)).value == 1);
  CHECK_THROWS_AS(make_separator(D01, SeparatorKind::StepUp, q(2)), Error);
  CHECK_THROWS_AS(make_separator(D01, SeparatorKind::BumpLeft, half, 0), Error);
}

TEST_CASE("split") {
  auto V = classify(IdealDesc::make(D01, {point_killer({q(1, 4), q(3, 4)})}));
  auto s = split(V);
  REQUIRE_FALSE(s.connected);
  CHECK(descriptor_equal(descriptor_union(*s.first_set, *s.second_set), V));
  CHECK(descriptor_intersection(*s.first_set, *s.second_set).is_empty());
  CHECK_FALSE(s.first_set->is_empty());
  CHECK_FALSE(s.second_set->is_empty());

  // An interval of m-points is cut in two at an interior point.
  auto H = classify(IdealDesc::make(D01, {step()}));
  auto sh = split(H);
  REQUIRE_FALSE(sh.connected);
  CHECK(descriptor_equal(descriptor_union(*sh.first_set, *sh.second_set), H));

  auto shrink = classify(IdealDesc::make(D01, {}, {SymbolicFamily::shrink(half, Side::Left)}));
  CHECK(split(shrink).connected);

  ClosedSetDescriptor bare = V;
  bare.source.reset();
  CHECK_THROWS_AS(split(bare), Error);

  auto pieces = split_fully(classify(IdealDesc::make(D01, {roots({q(1, 4), q(3, 4)})})));
  CHECK(pieces.size() == 6);
  for (const auto& piece : pieces) CHECK(connected_components(piece).count.count == 1);
}

TEST_CASE("separate") {
  auto mm = separate(D01, MaxIdealDescriptor::m(q(1, 4)), MaxIdealDescriptor::m(q(3, 4)));
  REQUIRE(mm.separable);
  CHECK(mul(mm.witness->c, mm.witness->d).is_zero());
  CHECK(witness_valid(D01, *mm.witness, MaxIdealDescriptor::m(q(1, 4)), MaxIdealDescriptor::m(q(3, 4))));

  auto same = separate(D01, P(half, Side::Left, 1, 0), P(half, Side::Left, 1, q(-1, 2)));
  CHECK_FALSE(same.separable);

  auto mp = separate(D01, MaxIdealDescriptor::m(half), P(half, Side::Left, 1, 0));
  REQUIRE(mp.separable);
  CHECK(witness_valid(D01, *mp.witness, MaxIdealDescriptor::m(half), P(half, Side::Left, 1, 0)));
  // 1 - phi joins the P-side data to a unit.
  CHECK(provably_outside(D01, mp.witness->d, P(half, Side::Left, 1, 0)));

  auto lr = separate(D01, P(half, Side::Left, 1, 0), P(half, Side::Right, 1, 0));
  REQUIRE(lr.separable);
  CHECK(mul(lr.witness->c, lr.witness->d).is_zero());

  CHECK_THROWS_AS(separate(D01, MaxIdealDescriptor::m(half), MaxIdealDescriptor::m(half)), Error);
}

TEST_CASE("bounded witness search") {
  auto p = P(half, Side::Left, 1, 0), p2 = P(half, Side::Left, 1, q(-1, 2));
  auto none = witness_search(D01, p, p2, 2);
  CHECK_FALSE(none.found);
  CHECK(none.expressions > 0);
  auto found = witness_search(D01, MaxIdealDescriptor::m(q(1, 4)), p, 2);
  REQUIRE(found.found);
  CHECK(witness_valid(D01, *found.witness, MaxIdealDescriptor::m(q(1, 4)), p));
}

TEST_CASE("ring verdicts") {
  auto osc_v = ring_verdict(Fragment::PolyPiecesPlusOsc);
  CHECK(osc_v.verdicts ==
        std::vector<std::string>{"NotClean", "NotGelfand", "NonHausdorff", "TotallyDisconnected(sampled)"});
  CHECK(osc_v.certificate_confirmed);
  REQUIRE(osc_v.search);
  CHECK_FALSE(osc_v.search->found);
  CHECK(osc_v.split_successes == osc_v.split_samples);
  auto cont = ring_verdict(Fragment::ContinuousPoly);
  CHECK(cont.verdicts == std::vector<std::string>{"NotClean"});
  auto jumps = ring_verdict(Fragment::PolyPieces);
  CHECK(jumps.verdicts.at(0) == "Clean");
  CHECK(jumps.clean_successes == jumps.corpus_size);
}
