#include <gtest/gtest.h>

#include <string>

#include "seqplan/domain_gen.hpp"
#include "seqplan/errors.hpp"
#include "seqplan/fixtures.hpp"
#include "seqplan/plan_library.hpp"

namespace seqplan {
namespace {

constexpr std::string_view kMinimal = R"({
  "basic": ["a"], "complex": ["g"], "goals": ["g"],
  "methods": [{"id": "g-a", "head": "g", "children": ["a"]}]
})";

std::string validation_message(std::string_view text) {
  try {
    parse_library(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(PlanLibrary, ParsesChemistryFixture) {
  const PlanLibrary lib = parse_library(kChemistryLibraryJson);
  for (const char* b : {"mix_AB", "mix_AC", "mix_AD", "mix_BC", "mix_BD", "mix_CD", "mix_ABCD"})
    EXPECT_TRUE(lib.is_basic(lib.action(b))) << b;
  EXPECT_EQ(lib.basic_actions().size(), 7u);
  EXPECT_TRUE(lib.is_complex(lib.action("Pairwise")));
  EXPECT_TRUE(lib.is_complex(lib.action("FourWay")));
}

TEST(PlanLibrary, MinimalGrammar) {
  const PlanLibrary lib = parse_library(kMinimal);
  const ActionId g = lib.action("g");
  ASSERT_EQ(lib.methods_for(g).size(), 1u);
  EXPECT_EQ(lib.method(lib.methods_for(g)[0]).id, "g-a");
  EXPECT_TRUE(lib.is_goal(g));
  EXPECT_DOUBLE_EQ(lib.goal_prior(g), 1.0);
}

TEST(PlanLibrary, ChemistryGoalHasTwoStrategies) {
  const PlanLibrary lib = parse_library(kChemistryLibraryJson);
  const auto ms = lib.methods_for(lib.action("InvestigateReaction"));
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(lib.method(ms[0]).id, "investigate-pairwise");
  EXPECT_EQ(lib.method(ms[1]).id, "investigate-fourway");
}

TEST(PlanLibrary, GeneratedBranchingBound) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenParams p;
    p.seed = seed;
    p.branching = 3;
    const PlanLibrary lib = gen_library(p);
    for (ActionId c : lib.complex_actions()) EXPECT_LE(lib.methods_for(c).size(), 3u);
  }
}

TEST(PlanLibrary, CyclicOrderRejected) {
  EXPECT_NE(validation_message(R"({
    "basic": ["a", "b"], "complex": ["g"], "goals": ["g"],
    "methods": [{"id": "m", "head": "g", "children": ["a", "b"], "order": [[0, 1], [1, 0]]}]
  })")
                .find("cyclic ordering constraint"),
            std::string::npos);
}

TEST(PlanLibrary, SemanticErrorsNameTheInvariant) {
  EXPECT_NE(validation_message(R"({"basic": ["a", "a"], "complex": ["g"], "goals": ["g"],
    "methods": [{"id": "m", "head": "g", "children": ["a"]}]})")
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"basic": ["a"], "complex": ["g"], "goals": ["g"],
    "methods": [{"id": "m", "head": "g", "children": ["zz"]}]})")
                .find("undeclared"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"basic": ["a"], "complex": ["g"], "goals": [],
    "methods": [{"id": "m", "head": "g", "children": ["a"]}]})")
                .find("goal"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"basic": ["a"], "complex": ["g", "h"], "goals": ["g"],
    "methods": [{"id": "m", "head": "g", "children": ["h"]},
                {"id": "n", "head": "h", "children": ["g"]}]})")
                .find("cyclic grammar"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"basic": ["a"], "complex": ["g", "h"], "goals": ["g"],
    "methods": [{"id": "m", "head": "g", "children": ["h"]}]})")
                .find("no refinement method"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"basic": ["a"], "complex": ["g"], "goals": ["g"],
    "methods": [{"id": "m", "head": "g", "children": ["a"], "order": [[0, 3]]}]})")
                .find("out of range"),
            std::string::npos);
}

TEST(PlanLibrary, SyntaxErrorCarriesPosition) {
  try {
    parse_library("{\n  \"basic\": [\"a\",,]\n}");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(PlanLibrary, PriorsMustSumToOne) {
  EXPECT_THROW(parse_library(R"({"basic": ["a"], "complex": ["g", "h"], "goals": ["g", "h"],
    "goal_priors": {"g": 0.5, "h": 0.4},
    "methods": [{"id": "m", "head": "g", "children": ["a"]},
                {"id": "n", "head": "h", "children": ["a"]}]})"),
               ValidationError);
  const PlanLibrary lib = parse_library(R"({"basic": ["a"], "complex": ["g", "h"],
    "goals": ["g", "h"], "goal_priors": {"g": 0.25, "h": 0.75},
    "methods": [{"id": "m", "head": "g", "children": ["a"]},
                {"id": "n", "head": "h", "children": ["a"]}]})");
  EXPECT_DOUBLE_EQ(lib.goal_prior(lib.action("h")), 0.75);
}

TEST(PlanLibrary, RoundTripsThroughText) {
  const PlanLibrary lib = parse_library(kChemistryLibraryJson);
  const PlanLibrary again = parse_library(serialize_library(lib));
  EXPECT_EQ(serialize_library(again), serialize_library(lib));
  EXPECT_NE(again.identity(), lib.identity());
}

TEST(PlanLibrary, OrderClosureAndMinimalConstituents) {
  const PlanLibrary lib = parse_library(R"({"basic": ["a", "b", "c"], "complex": ["g"],
    "goals": ["g"],
    "methods": [{"id": "m", "head": "g", "children": ["a", "b", "c"], "order": [[0, 1], [1, 2]]}]})");
  const MethodId m = lib.method_id("m");
  const auto p2 = lib.predecessors(m, 2);
  EXPECT_EQ(std::vector<std::size_t>(p2.begin(), p2.end()), (std::vector<std::size_t>{0, 1}));
  const auto mins = lib.minimal_constituents(m);
  EXPECT_EQ(std::vector<std::size_t>(mins.begin(), mins.end()), (std::vector<std::size_t>{0}));
}

TEST(PlanLibrary, MethodsForBasicActionThrows) {
  const PlanLibrary lib = parse_library(kMinimal);
  EXPECT_THROW(lib.methods_for(lib.action("a")), Error);
}

TEST(PlanLibrary, CountsCompletePlans) {
  const PlanLibrary lib = parse_library(kChemistryLibraryJson);
  EXPECT_EQ(count_complete_plans(lib, lib.action("InvestigateReaction")), 3u);
  const PlanLibrary f2 = parse_library(kFig2LibraryJson);
  EXPECT_EQ(count_complete_plans(f2, f2.action("G")), 4u);
  EXPECT_EQ(count_complete_plans(f2, f2.action("G"), 3), 3u);
}

}  // namespace
}  // namespace seqplan
