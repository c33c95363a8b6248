// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes. Corpora are seeded and deterministic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "corpus.hpp"
#include "oracles/descartes_roots.hpp"
#include "specm/dsl.hpp"
#include "specm/error.hpp"
#include "specm/ideals.hpp"
#include "specm/spectrum.hpp"
#include "specm/ultrafilter.hpp"
#include "specm/zeroset.hpp"

using namespace specm;
using specm::testing::Jumps;

namespace {

const Domain D01 = Domain::closed(0, 1);
Rational q(long a, long b = 1) { return make_rational(a, b); }

struct Outcome {
  size_t checked = 0;
  size_t failures = 0;
  std::string note;
  void expect(bool ok) {
    ++checked;
    if (!ok) ++failures;
  }
};

int run_criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.failures = o.checked + 1;
    o.note = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = o.failures == 0 && s < limit_s;
  std::printf("[%s] %2d %-28s checks=%zu failures=%zu time=%.2fs limit=%.0fs%s%s\n", pass ? "PASS" : "FAIL", id, name,
              o.checked, o.failures, s, limit_s, o.note.empty() ? "" : "  ", o.note.c_str());
  std::fflush(stdout);
  return pass ? 0 : 1;
}

PiecewiseFn phi(const Rational& x) { return PiecewiseFn::build(D01, {x}, {Poly(), Poly()}, {1}); }

// ---- 1

Outcome root_isolation() {
  Outcome o;
  std::mt19937_64 rng(101);
  const Rational res = q(1, 1000000000);
  std::uniform_int_distribution<int> deg(1, 6);
  while (o.checked < 500) {
    int n = deg(rng);
    std::vector<Rational> c;
    for (int i = 0; i <= n; ++i) c.push_back(testing::random_rational(rng, 10, 16));
    if (c.back() == 0) c.back() = 1;
    Poly p(c);
    oracle::Coeffs oc(p.coeffs().begin(), p.coeffs().end());
    Rational B = oracle::cauchy_bound(oc);
    auto mine = isolate_real_roots(p, -B, B);
    auto ref = oracle::isolate(oc, -B, B, res);
    bool ok = mine.size() == ref.size();
    for (size_t k = 0; ok && k < ref.size(); ++k) {
      auto fine = mine[k].refined(res);
      ok = fine.lo() <= ref[k].second && ref[k].first <= fine.hi();
    }
    o.expect(ok);
  }
  return o;
}

// ---- 2 and 3

Outcome zero_sets() {
  Outcome o;
  std::mt19937_64 rng(202);
  for (int i = 0; i < 200; ++i) {
    auto f = testing::random_piecewise(rng);
    auto z = zero_set(f);
    for (const auto& x : testing::sample_points(rng, f, 1000)) o.expect(z.contains(x) == (eval(f, x).value == 0));
  }
  return o;
}

Outcome unit_certificates() {
  Outcome o;
  std::mt19937_64 rng(202);
  for (int i = 0; i < 200; ++i) {
    auto f = testing::random_piecewise(rng);
    auto pts = testing::sample_points(rng, f, 1000);
    auto u = is_unit(f);
    if (u.unit) {
      bool ok = u.epsilon > 0;
      for (const auto& x : pts) ok = ok && abs(Rational(eval(f, x).value)) >= u.epsilon;
      o.expect(ok);
    } else {
      o.expect(u.witness && witness_holds(f, *u.witness));
    }
  }
  return o;
}

// ---- 4

bool has_jump(const PiecewiseFn& f) {
  for (size_t i = 0; i < f.breakpoints().size(); ++i) {
    const Rational& b = f.breakpoints()[i];
    auto l = side_limit(f, b, Side::Left), r = side_limit(f, b, Side::Right);
    if (l.value != f.point_values()[i] || r.value != f.point_values()[i]) return true;
  }
  return false;
}

Outcome clean_decompositions() {
  Outcome o;
  std::mt19937_64 rng(404);
  size_t jumps = 0, continuous = 0;
  for (int i = 0; i < 200; ++i) {
    auto f = testing::random_piecewise(rng);
    if (!has_jump(f)) continue;
    ++jumps;
    auto r = clean_decompose(f);
    o.expect(r.clean && r.e && r.u && is_idempotent(*r.e) && is_unit(*r.u).unit && add(*r.e, *r.u) == f);
  }
  // Continuous non-units through 0 and 1: shift a continuous corpus element
  // so that it crosses both levels.
  while (continuous < 100) {
    auto g = testing::random_piecewise(rng, Jumps::None);
    auto lo = eval(g, 0).value, hi = eval(g, 1).value;
    if (lo == hi) continue;
    // Affine rescaling sends g(0) to -1 and g(1) to 2.
    PiecewiseFn f = add_constant(scale(Rational(3 / (hi - lo)), add_constant(g, Rational(-lo))), -1);
    if (is_unit(f).unit || zero_set(f).is_empty() || zero_set(add_constant(f, -1)).is_empty()) continue;
    ++continuous;
    o.expect(!clean_decompose(f, CleanMode::Continuous).clean);
  }
  for (int k = 1; k <= 15; ++k) {
    for (const auto& [c, r] : std::vector<std::pair<Rational, Rational>>{{1, 0}, {q(1, 2), q(-1, 4)}, {2, q(-1, 2)}}) {
      auto f = PiecewiseFn::oscillator(D01, OscPrimitive::standard(q(k, 16), c, r));
      auto res = clean_decompose(f);
      o.expect(!res.clean && !idempotent_search(f, clean_candidate_grid(f)).has_value());
    }
  }
  o.note = "jump=" + std::to_string(jumps) + " continuous=" + std::to_string(continuous) + " osc=45";
  return o;
}

// ---- 5

Outcome real_ideals() {
  Outcome o;
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> n(1, 4);
  for (int i = 0; i < 100; ++i) {
    std::vector<PiecewiseFn> gens;
    int k = n(rng);
    for (int j = 0; j < k; ++j) gens.push_back(testing::random_piecewise(rng));
    PiecewiseFn s = mul(gens[0], gens[0]);
    for (size_t j = 1; j < gens.size(); ++j) s = add(s, mul(gens[j], gens[j]));
    auto V = classify_or_empty(IdealDesc::make(D01, gens));
    auto W = classify_or_empty(IdealDesc::make(D01, {s}));
    o.expect(descriptor_equal(V, W));
  }
  return o;
}

// ---- 6

ClosedSetDescriptor random_multi_component(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2), count(1, 3);
  auto pts = testing::random_cuts(rng, count(rng) + 1);
  switch (kind(rng)) {
    case 0: {
      PiecewiseFn f = PiecewiseFn::constant(D01, 1);
      for (const auto& x : pts) f = sub(f, phi(x));
      return classify(IdealDesc::make(D01, {f}));
    }
    case 1: {
      Poly p = Poly::constant(1);
      for (const auto& x : pts) p = p * Poly::linear_root(x);
      return classify(IdealDesc::make(D01, {PiecewiseFn::polynomial(D01, p)}));
    }
    default: {
      // Point killers at all but the last point z, times a factor that is
      // x - z on one side of z and 1 on the other: one P-block survives at z.
      PiecewiseFn f = PiecewiseFn::constant(D01, 1);
      for (size_t i = 0; i + 1 < pts.size(); ++i) f = sub(f, phi(pts[i]));
      const Rational& z = pts.back();
      Poly lin = Poly::linear_root(z), one = Poly::constant(1);
      bool left = kind(rng) % 2 == 0;
      f = mul(f, PiecewiseFn::build(D01, {z}, {left ? lin : one, left ? one : lin}, {0}));
      return classify(IdealDesc::make(D01, {f}));
    }
  }
}

Outcome splitting() {
  Outcome o;
  std::mt19937_64 rng(606);
  size_t pieces = 0;
  for (int i = 0; i < 100; ++i) {
    auto V = random_multi_component(rng);
    auto cc = connected_components(V);
    if (cc.count.infinite || cc.count.count < 2) {
      o.expect(false);
      continue;
    }
    auto s = split(V);
    bool ok = !s.connected && s.first_set && s.second_set && !s.first_set->is_empty() && !s.second_set->is_empty() &&
              descriptor_equal(descriptor_union(*s.first_set, *s.second_set), V) &&
              descriptor_intersection(*s.first_set, *s.second_set).is_empty();
    auto parts = split_fully(V);
    ok = ok && parts.size() == cc.count.count;
    for (const auto& part : parts) {
      auto pc = connected_components(part);
      ok = ok && !pc.count.infinite && pc.count.count == 1 && pc.classes.size() == 1 &&
           (pc.classes[0].kind == Component::Kind::MPoint || pc.classes[0].kind == Component::Kind::FullBlock);
    }
    pieces += parts.size();
    o.expect(ok);
  }
  o.note = "terminal_pieces=" + std::to_string(pieces);
  return o;
}

// ---- 7

MaxIdealDescriptor P(const Rational& z, Side s, const Rational& c, const Rational& r) {
  return MaxIdealDescriptor::p_member(AccumFamily::make(z, s, c, r));
}

Outcome non_hausdorff() {
  Outcome o;
  const std::vector<std::pair<Rational, Rational>> fams = {{1, 0}, {1, q(-1, 2)}, {2, 0}, {q(1, 2), q(-1, 4)}};
  const std::vector<Rational> anchors = {q(1, 4), q(1, 2), q(3, 4)};
  int pairs = 0;
  for (size_t a = 0; a < anchors.size() && pairs < 10; ++a)
    for (Side side : {Side::Left, Side::Right})
      for (size_t i = 0; i + 1 < fams.size() && pairs < 10; i += 2) {
        auto p = P(anchors[a], side, fams[i].first, fams[i].second);
        auto p2 = P(anchors[a], side, fams[i + 1].first, fams[i + 1].second);
        auto r = witness_search(D01, p, p2);
        o.expect(!r.found && !separate(D01, p, p2).separable);
        ++pairs;
      }
  std::vector<std::pair<MaxIdealDescriptor, MaxIdealDescriptor>> cross;
  for (int k = 1; k <= 10; ++k) {
    Rational x = q(k, 12), y = q(k + 1, 12);
    cross.push_back({MaxIdealDescriptor::m(x), MaxIdealDescriptor::m(y)});
    cross.push_back({MaxIdealDescriptor::m(x), P(x, Side::Left, 1, 0)});
    cross.push_back({P(y, Side::Left, 1, 0), P(y, Side::Right, 2, q(-1, 2))});
    cross.push_back({P(x, Side::Right, 1, 0), P(y, Side::Left, 1, q(-1, 4))});
  }
  for (const auto& [p, p2] : cross) {
    auto r = separate(D01, p, p2);
    o.expect(r.separable && r.witness && mul(r.witness->c, r.witness->d).is_zero() &&
             witness_valid(D01, *r.witness, p, p2));
  }
  o.note = "same_side=" + std::to_string(pairs) + " cross=" + std::to_string(cross.size());
  return o;
}

// ---- 8

Outcome f_closure() {
  Outcome o;
  std::mt19937_64 rng(808);
  for (int i = 0; i < 300; ++i) {
    auto f = testing::random_piecewise(rng), g = testing::random_piecewise(rng);
    o.expect(in_F(add(f, g)) && in_F(mul(f, g)));
  }
  for (int i = 0; i < 50; ++i) o.expect(!in_F(testing::random_with_osc(rng)));
  // g = osc + 2 and g' = osc' - 2 built on different root families.
  const Rational z = q(1, 2);
  auto g = add_constant(PiecewiseFn::oscillator(D01, OscPrimitive::standard(z, 1, 0)), 2);
  auto g2 = add_constant(PiecewiseFn::oscillator(D01, OscPrimitive::standard(z, 2, 0)), -2);
  bool outside = false;
  try {
    add(g, g2);
  } catch (const Error& e) {
    outside = e.code() == ErrorCode::OutsideFragment;
  }
  o.expect(outside);
  return o;
}

// ---- 9

std::vector<SigmaFn> all_sigmas() {
  const int primes[] = {2, 3, 5};
  std::vector<SigmaFn> out;
  for (size_t n = 1; n <= 3; ++n) {
    size_t total = size_t(1) << (3 * n);
    for (size_t code = 1; code < total; ++code) {
      std::vector<std::string> labels;
      std::vector<std::vector<int>> vals(n);
      for (size_t i = 0; i < n; ++i) {
        labels.push_back("i" + std::to_string(i + 1));
        for (int b = 0; b < 3; ++b)
          if (code >> (3 * i + b) & 1) vals[i].push_back(primes[b]);
      }
      out.push_back(SigmaFn::primes(labels, vals));
    }
  }
  return out;
}

/// Oracle filter: every element of J has a nonempty rho over sigma.
bool lies_over(const FiniteIdeal& j, const SigmaFn& sigma) {
  for (uint32_t c : j.elements) {
    bool hit = false;
    uint32_t rest = c;
    for (size_t i = 0; i < sigma.values.size() && !hit; ++i, rest /= static_cast<uint32_t>(j.modulus)) {
      int ai = static_cast<int>(rest % static_cast<uint32_t>(j.modulus));
      for (int p : sigma.values[i]) hit = hit || ai % p == 0;
    }
    if (!hit) return false;
  }
  return true;
}

Outcome ultrafilters() {
  Outcome o;
  const int m = 30;
  std::vector<std::vector<FiniteIdeal>> brute(4);
  for (size_t n = 1; n <= 3; ++n) brute[n] = brute_force_maximal_ideals(m, n);
  size_t sigmas = 0;
  for (const auto& sigma : all_sigmas()) {
    ++sigmas;
    std::vector<std::vector<uint32_t>> image;
    for (const auto& f : enumerate_ultrafilters(sigma)) {
      auto j = uf_to_ideal(f, m);
      o.expect(is_ultrafilter(f) && ideal_to_uf(j, sigma).members == f.members);
      image.push_back(j.elements);
    }
    std::vector<std::vector<uint32_t>> expected;
    for (const auto& j : brute[sigma.labels.size()])
      if (lies_over(j, sigma)) expected.push_back(j.elements);
    std::sort(image.begin(), image.end());
    std::sort(expected.begin(), expected.end());
    o.expect(image == expected);
  }
  o.note = "sigmas=" + std::to_string(sigmas);
  return o;
}

// ---- 10

Outcome derivatives() {
  Outcome o;
  std::mt19937_64 rng(1010);
  const Rational h = q(1, 10000000);
  for (int i = 0; i < 100; ++i) {
    auto f = testing::random_piecewise(rng);
    auto df = derivative(f);
    // Interior points at least 1/64 from every breakpoint.
    std::vector<Rational> pts;
    std::uniform_int_distribution<long> k(1, (1 << 16) - 1);
    while (pts.size() < 100) {
      Rational x = q(k(rng), 1 << 16);
      bool near = x < q(1, 64) || x > 1 - q(1, 64);
      for (const auto& b : f.breakpoints()) near = near || abs(Rational(x - b)) < q(1, 64);
      if (!near) pts.push_back(x);
    }
    for (const auto& x : pts) {
      double fd = Rational((eval(f, x + h).value - eval(f, x - h).value) / (2 * h)).get_d();
      double d = eval(df, x).value.get_d();
      o.expect(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)));
    }
    // Averaged convention at breakpoints.
    for (const auto& b : f.breakpoints()) {
      auto l = side_limit(df, b, Side::Left).value, r = side_limit(df, b, Side::Right).value;
      o.expect(eval(df, b).value == (l + r) / 2);
    }
    auto g = testing::random_piecewise(rng);
    Rational a = testing::random_rational(rng, 3, 4), c = testing::random_rational(rng, 3, 4);
    o.expect(derivative(add(scale(a, f), scale(c, g))) == add(scale(a, df), scale(c, derivative(g))));
  }
  return o;
}

// ---- 11

Outcome cli_round_trip() {
  Outcome o;
  std::mt19937_64 rng(1111);
  for (int i = 0; i < 500; ++i) {
    auto f = i % 5 == 4 ? testing::random_with_osc(rng) : testing::random_piecewise(rng);
    o.expect(parse_function(print(f), D01) == f);
  }
  const char* script =
      "domain [0,1]\n"
      "let h = piecewise { [0,1/2): 0; [1/2,1]: 1 }\n"
      "let f = osc(1/2, 1, 0)\n"
      "ideal I = < h ; shrink(1/2, left) >\n"
      "zeros h\nunit h\nidem h\nderive x^3 - x\ninf h\nclean f\nclassify I\n"
      "components < (x - 1/4)*(x - 3/4) >\nsplit < (x - 1/4)*(x - 3/4) >\n"
      "separate P(1/2, left, 1, 0) P(1/2, left, 1, -1/2)\nseparate M(1/4) M(3/4)\n"
      "uf {a: {2,3}, b: {5}}\n";
  auto first = run_text(script, ReportFormat::Json, D01, 7);
  o.expect(first.exit_code == 0);
  for (int run = 0; run < 2; ++run) o.expect(run_text(script, ReportFormat::Json, D01, 7).output == first.output);
  return o;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  int failed = 0;
  failed += run_criterion(1, "root isolation oracle", 5, root_isolation);
  failed += run_criterion(2, "zero-set soundness", 10, zero_sets);
  failed += run_criterion(3, "unit certificates", 10, unit_certificates);
  failed += run_criterion(4, "clean decomposition", 20, clean_decompositions);
  failed += run_criterion(5, "real-ideal invariant", 10, real_ideals);
  failed += run_criterion(6, "splitting", 30, splitting);
  failed += run_criterion(7, "non-Hausdorff certificate", 30, non_hausdorff);
  failed += run_criterion(8, "F-closure", 10, f_closure);
  failed += run_criterion(9, "ultrafilter round trip", 10, ultrafilters);
  failed += run_criterion(10, "derivative checks", 10, derivatives);
  failed += run_criterion(11, "CLI round trip", 10, cli_round_trip);
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 11 criteria failed, total %.2fs (limit 120s)\n", failed, total);
  return failed == 0 && total < 120 ? 0 : 1;
}
