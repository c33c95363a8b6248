#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "json.hpp"
#include "specm/dsl.hpp"

using namespace specm;

namespace {

const Domain D01 = Domain::closed(0, 1);
const Rational half = make_rational(1, 2);

}  // namespace

TEST_CASE("print examples") {
  auto h = PiecewiseFn::build(D01, {half}, {Poly(), Poly::constant(1)}, {1});
  CHECK(print(h) == "piecewise { [0,1/2): 0; [1/2,1]: 1 }");
  CHECK(print(PiecewiseFn::constant(D01, 2)) == "2");
  auto phi = PiecewiseFn::build(D01, {half}, {Poly(), Poly()}, {1});
  CHECK(print(phi) == "piecewise { [0,1/2): 0; (1/2,1]: 0 } @ {1/2: 1}");
  CHECK(parse_function(print(h), D01) == h);
  CHECK(parse_function(print(phi), D01) == phi);
}

TEST_CASE("parse statements") {
  auto s = parse(
      "let h = piecewise { [0,1/2): 0; [1/2,1]: 1 }\n"
      "ideal I = < h ; shrink(1/2,left) >\n"
      "let f = osc(1/2, 1, 0) + 2\n");
  REQUIRE(s.functions.size() == 2);
  CHECK(s.functions[0].second == PiecewiseFn::build(D01, {half}, {Poly(), Poly::constant(1)}, {1}));
  REQUIRE(s.ideals.size() == 1);
  CHECK(print(s.ideals[0].second) == "<piecewise { [0,1/2): 0; [1/2,1]: 1 } ; shrink(1/2, left)>");
  const auto& g = s.functions[1].second;
  CHECK(eval(g, half).value == 3);
  const Rational fifth = make_rational(1, 5);
  auto o = PiecewiseFn::oscillator(D01, OscPrimitive::standard(half, 1, 0));
  CHECK(piece_value(g.pieces().at(0), fifth) == 2 + piece_value(o.pieces().at(0), fifth));
  CHECK(parse("domain [-1,2]\nlet p = x").domain == Domain::closed(-1, 2));
  CHECK(parse("let p = x", Domain::closed(0, 3)).domain == Domain::closed(0, 3));
}

TEST_CASE("parse errors carry position and expectations") {
  try {
    parse("let h = x\nlet g = piecewise { [0,1/2) 0; [1/2,1]: 1 }");
    FAIL("expected a parse failure");
  } catch (const ParseFailure& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 2);
    CHECK(e.column() == 29);
    CHECK(e.expected().count("':'") == 1);
  }
  CHECK_THROWS_AS(parse("zeros undefined_name"), ParseFailure);
  CHECK_THROWS_AS(parse("let x = 1"), ParseFailure);
  CHECK_THROWS_AS(parse("let a = 1\nlet a = 2"), ParseFailure);
  try {
    parse("let g = piecewise { [0,1/2): 0; [1/4,1]: 1 }");
    FAIL("expected a partition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedPartition);
  }
}

TEST_CASE("round trip on the corpus") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    auto f = testing::random_piecewise(rng);
    CHECK(parse_function(print(f), D01) == f);
    auto o = testing::random_with_osc(rng);
    CHECK(parse_function(print(o), D01) == o);
  }
}

TEST_CASE("json reports") {
  const char* text =
      "let h = piecewise { [0,1/2): 0; [1/2,1]: 1 }\n"
      "zeros h\n"
      "clean osc(1/2, 1, 0)\n"
      "separate P(1/2,left,1,0) P(1/2,left,1,-1/2)\n";
  auto r = run_text(text, ReportFormat::Json);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::ordered_json::parse(r.output);
  REQUIRE(j.size() == 3);
  std::vector<std::string> keys;
  for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "inputs", "verdict", "witnesses", "certificates"});
  CHECK(j[0]["verdict"] == "NonEmpty");
  CHECK(j[0]["witnesses"]["intervals"][0] == nlohmann::ordered_json::parse(R"(["0/1","1/2",true,false])"));
  CHECK(j[1]["verdict"] == "NotClean");
  CHECK(j[2]["verdict"] == "NonSeparable");
  CHECK(run_text(text, ReportFormat::Json).output == r.output);
}

TEST_CASE("exit codes") {
  CHECK(run_text("let h = x\nunit h", ReportFormat::Text).exit_code == 0);
  CHECK(run_text("split < x^2 - 1/2 >", ReportFormat::Text).exit_code == 2);
  CHECK(run_text("let h = (", ReportFormat::Text).exit_code == 3);
  auto e = run_text("separate M(1/2) M(1/2)", ReportFormat::Json);
  CHECK(e.exit_code == 1);
  auto j = nlohmann::ordered_json::parse(e.output);
  CHECK(j[0]["verdict"] == "Error");
  CHECK(j[0]["certificates"]["name"] == "IdenticalDescriptors");
}
