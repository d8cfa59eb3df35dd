#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "structobs/io.hpp"
#include "structobs/placement.hpp"
#include "support/examples.hpp"
#include "support/generators.hpp"

using namespace structobs;
using namespace structobs::testing;

using Idx = std::vector<std::size_t>;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t c = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1))
    ++c;
  return c;
}

}  // namespace

TEST(ParseSystem, Fixtures) {
  const SystemDocument doc = parse_system_document(read_fixture("example1.json"));
  EXPECT_EQ(doc.system, example1());
  EXPECT_EQ(doc.system.m(), 2u);
  EXPECT_EQ(doc.metadata.at("name"), "example1");
  EXPECT_EQ(parse_system(read_fixture("example2.json")), example2());
  EXPECT_EQ(parse_system(read_fixture("example3.json")), example3());
}

TEST(ParseSystem, ZeroStates) {
  try {
    parse_system(R"({"n": 0, "p": 0, "m": 1, "modes": [{"A": []}]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationKind::NonPositiveDimension);
  }
}

TEST(ParseSystem, OutOfRangeCoordinate) {
  try {
    parse_system(R"({"n": 5, "p": 0, "m": 2, "modes": [{"A": []}, {"A": [[6, 1]]}]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationKind::OutOfRange);
    EXPECT_EQ(e.mode(), 2u);
  }
}

TEST(ParseSystem, SyntaxErrorPosition) {
  const std::string text = "{\n  \"n\": 5,\n  oops\n}\n";
  try {
    parse_system(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(ParseSystem, StructuralErrors) {
  EXPECT_THROW(parse_system(R"({"p": 0, "modes": [{}]})"), ParseError);
  EXPECT_THROW(parse_system(R"({"n": 2, "p": 0, "m": 2, "modes": [{}]})"), ValidationError);
  EXPECT_THROW(parse_system(R"({"n": 2, "modes": [{"A": [[1]]}]})"), ParseError);
  EXPECT_THROW(parse_system(R"({"n": 2, "p": 1, "modes": [{"A": []}]})"), ValidationError);
  EXPECT_NO_THROW(parse_system(R"({"n": 2, "p": 1, "modes": [{"A": []}]})", true));
  EXPECT_THROW(parse_system("[1, 2]"), ParseError);
}

TEST(WriteSystem, RoundTrip) {
  Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    const SmallShape s = small_shape(rng);
    const SwitchedSystem sys = random_general(rng, s.n, s.p, s.m, s.density);
    EXPECT_EQ(parse_system(write_system(sys)), sys) << "trial " << t;
  }
  const SystemDocument doc = parse_system_document(read_fixture("ieee5bus.json"));
  const SystemDocument again = parse_system_document(write_system(doc.system, doc.metadata));
  EXPECT_EQ(again.system, doc.system);
  EXPECT_EQ(again.metadata, doc.metadata);
}

TEST(Placement, ExampleOneDocument) {
  const SensorPlacement pl = place(example1());
  const std::string text = write_placement(pl);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.at("J"), nlohmann::json({5, 6}));
  EXPECT_EQ(j.at("J_x_states"), nlohmann::json({4, 5}));
  EXPECT_EQ(j.at("J_d"), nlohmann::json::array());
  EXPECT_EQ(j.at("cardinality"), 2);
  EXPECT_EQ(j.at("provenance").at("5"), "Jprime");
  EXPECT_EQ(j.at("algorithm"), "general");
  EXPECT_EQ(parse_placement(text), pl);
  EXPECT_EQ(parse_placement(text, 1), pl);
}

TEST(Placement, EmptyRoundTrip) {
  const SensorPlacement empty;
  EXPECT_EQ(parse_placement(write_placement(empty)), empty);
}

TEST(Placement, RandomRoundTrip) {
  Rng rng(72);
  const Provenance tags[] = {Provenance::Jprime, Provenance::Jdoubleprime,
                             Provenance::Jtripleprime, Provenance::ClassSpecific};
  for (int t = 0; t < 200; ++t) {
    const std::size_t p = uniform(rng, 0, 5);
    const std::size_t n = uniform(rng, 1, 10);
    std::vector<std::pair<std::size_t, Provenance>> s;
    for (std::size_t v = 1; v <= n + p; ++v)
      if (coin(rng, 0.3)) s.emplace_back(v, tags[uniform(rng, 0, 3)]);
    SensorPlacement pl = make_placement(s, p, "general");
    if (coin(rng, 0.2)) pl.warnings.push_back("note " + std::to_string(t));
    const std::string text = write_placement(pl);
    EXPECT_EQ(parse_placement(text, p), pl) << "trial " << t;
    const SensorPlacement back = parse_placement(text, p);
    EXPECT_EQ(back.warnings, pl.warnings);
    EXPECT_EQ(back.J_x, pl.J_x);
    EXPECT_EQ(write_placement(back), text);
  }
}

TEST(Placement, SplitFromInputCount) {
  const SensorPlacement pl = parse_placement(R"({"J": [3, 1]})", 1);
  EXPECT_EQ(pl.J, (Idx{1, 3}));
  EXPECT_EQ(pl.J_d, (Idx{1}));
  EXPECT_EQ(pl.J_x_states, (Idx{2}));
  EXPECT_THROW(parse_placement(R"({"J": [3, 1]})"), ParseError);
}

TEST(Placement, InconsistentDocuments) {
  EXPECT_THROW(parse_placement(R"({"J": [5, 6], "J_d": [], "J_x_states": [4, 5], "cardinality": 3})"),
               ParseError);
  EXPECT_THROW(parse_placement(R"({"J": [5, 6], "J_d": [5], "J_x_states": [4, 5]})"), ParseError);
  EXPECT_THROW(parse_placement(R"({"J": [5, 5]})", 1), ParseError);
  EXPECT_THROW(parse_placement(R"({"J": [5], "provenance": {"6": "Jprime"}})", 1), ParseError);
  EXPECT_THROW(parse_placement(R"({"J": [5], "provenance": {"5": "Jfourth"}})", 1), ParseError);
  EXPECT_THROW(parse_placement(R"({"J": [5], "J_d": [], "J_x_states": [3]})", 1), ParseError);
  EXPECT_THROW(parse_placement("{\"J\": [5,"), ParseError);
}

TEST(Dot, ExampleOneWithPlacement) {
  const SwitchedSystem sys = example1();
  const SensorPlacement pl = make_placement({5, 6}, 1);
  const std::string dot = export_dot(sys, &pl);
  EXPECT_EQ(count(dot, "[label=\""), 6u);
  EXPECT_EQ(count(dot, "shape=square"), 2u);
  EXPECT_EQ(count(dot, "color=blue"), 2u);
  EXPECT_EQ(count(dot, "subgraph cluster_"), 6u);
  EXPECT_NE(dot.find("v1 [label=\"d1\"]"), std::string::npos);
  EXPECT_NE(dot.find("v6 [label=\"x5\"]"), std::string::npos);
  EXPECT_NE(dot.find("v5 -> y1;"), std::string::npos);
  EXPECT_EQ(dot, export_dot(sys, &pl));
  EXPECT_EQ(dot, read_fixture("example1.dot"));
}

TEST(Dot, Edgeless) {
  const SwitchedSystem sys = parse_system(read_fixture("edgeless.json"));
  const std::string dot = export_dot(sys);
  EXPECT_EQ(count(dot, "->"), 0u);
  EXPECT_EQ(count(dot, "[label=\""), 3u);
}

TEST(Dot, ExampleThreeSelfLoops) {
  const SensorPlacement pl = make_placement({2, 3}, 1);
  const std::string dot = export_dot(example3(), &pl);
  for (const char* loop : {"v1 -> v1;", "v2 -> v2;", "v3 -> v3;"})
    EXPECT_NE(dot.find(loop), std::string::npos) << loop;
  EXPECT_EQ(count(dot, "shape=square"), 2u);
}
