#include "seqplan/fixtures.hpp"

#include "seqplan/io.hpp"

namespace seqplan {

const std::string_view kChemistryLibraryJson = R"({
  "basic": ["mix_AB", "mix_AC", "mix_AD", "mix_BC", "mix_BD", "mix_CD", "mix_ABCD"],
  "complex": ["InvestigateReaction", "Pairwise", "FourWay"],
  "goals": ["InvestigateReaction"],
  "methods": [
    {"id": "investigate-pairwise", "head": "InvestigateReaction", "children": ["Pairwise"], "order": []},
    {"id": "investigate-fourway", "head": "InvestigateReaction", "children": ["FourWay"], "order": []},
    {"id": "pairwise-all", "head": "Pairwise",
     "children": ["mix_AB", "mix_AC", "mix_AD", "mix_BC", "mix_BD", "mix_CD"], "order": []},
    {"id": "fourway-direct", "head": "FourWay", "children": ["mix_ABCD"], "order": []},
    {"id": "fourway-staged", "head": "FourWay", "children": ["mix_AB", "mix_CD", "mix_ABCD"],
     "order": [[0, 2], [1, 2]]}
  ]
}
)";

const std::string_view kFig2LibraryJson = R"({
  "basic": ["a", "c", "w"],
  "complex": ["G", "X", "Y", "Z", "K"],
  "goals": ["G", "K"],
  "methods": [
    {"id": "g-main", "head": "G", "children": ["X", "Y", "Z"], "order": []},
    {"id": "x-first", "head": "X", "children": ["a"], "order": []},
    {"id": "x-alt", "head": "X", "children": ["a"], "order": []},
    {"id": "y-c", "head": "Y", "children": ["c"], "order": []},
    {"id": "z-c", "head": "Z", "children": ["c"], "order": []},
    {"id": "z-w", "head": "Z", "children": ["w"], "order": []},
    {"id": "k-short", "head": "K", "children": ["w"], "order": []},
    {"id": "k-long", "head": "K", "children": ["c", "w"], "order": [[0, 1]]}
  ]
}
)";

namespace {

Instance scripted(const std::shared_ptr<const PlanLibrary>& lib, std::string_view execution,
                  std::string_view schedule, std::size_t observed) {
  Instance inst;
  inst.library = lib;
  inst.execution.plans.push_back(plan_from_json(*lib, execution));
  inst.schedule = parse_observations(*lib, schedule);
  return restrict_to_prefix(inst, observed);
}

}  // namespace

ChemistryCatalog builtin_chemistry() {
  ChemistryCatalog cat;
  cat.library = std::make_shared<const PlanLibrary>(parse_library(kChemistryLibraryJson));

  cat.instances.emplace(
      "pairwise",
      scripted(cat.library,
               R"({"label": "InvestigateReaction", "method": "investigate-pairwise", "children": [
                    {"label": "Pairwise", "method": "pairwise-all", "children": [
                      {"label": "mix_AB", "observed": 0}, {"label": "mix_AC", "observed": 1},
                      {"label": "mix_AD", "observed": 2}, {"label": "mix_BC", "observed": 3},
                      {"label": "mix_BD", "observed": 4}, {"label": "mix_CD", "observed": 5}]}]})",
               "mix_AB\nmix_AC\nmix_AD\nmix_BC\nmix_BD\nmix_CD\n", 2));
  cat.instances.emplace(
      "fourway-staged",
      scripted(cat.library,
               R"({"label": "InvestigateReaction", "method": "investigate-fourway", "children": [
                    {"label": "FourWay", "method": "fourway-staged", "children": [
                      {"label": "mix_AB", "observed": 0}, {"label": "mix_CD", "observed": 1},
                      {"label": "mix_ABCD", "observed": 2}]}]})",
               "mix_AB\nmix_CD\nmix_ABCD\n", 2));
  cat.instances.emplace(
      "fourway-direct",
      scripted(cat.library,
               R"({"label": "InvestigateReaction", "method": "investigate-fourway", "children": [
                    {"label": "FourWay", "method": "fourway-direct", "children": [
                      {"label": "mix_ABCD", "observed": 0}]}]})",
               "mix_ABCD\n", 1));
  return cat;
}

Fig2Fixture builtin_fig2() {
  auto lib = std::make_shared<const PlanLibrary>(parse_library(kFig2LibraryJson));
  auto plan = [&](std::string_view text) { return plan_from_json(*lib, text); };

  Fig2Fixture f{
      lib,
      {},
      plan(R"({"label": "G", "method": "g-main", "children": [
                {"label": "X", "method": "x-first", "children": [{"label": "a", "observed": 0}]},
                {"label": "Y", "method": "y-c", "children": [{"label": "c", "observed": 1}]},
                {"label": "Z"}]})"),
      plan(R"({"label": "G", "method": "g-main", "children": [
                {"label": "X", "method": "x-first", "children": [{"label": "a", "observed": 0}]},
                {"label": "Y"}, {"label": "Z"}]})"),
      plan(R"({"label": "G", "method": "g-main", "children": [
                {"label": "X", "method": "x-first", "children": [{"label": "a", "observed": 0}]},
                {"label": "Y"},
                {"label": "Z", "method": "z-c", "children": [{"label": "c", "observed": 1}]}]})"),
      plan(R"({"label": "G", "method": "g-main", "children": [
                {"label": "X", "method": "x-alt", "children": [{"label": "a", "observed": 0}]},
                {"label": "Y"}, {"label": "Z"}]})"),
      plan(R"({"label": "K", "method": "k-short", "children": [{"label": "w", "observed": 2}]})"),
      plan(R"({"label": "K", "method": "k-long", "children": [
                {"label": "c", "observed": 1}, {"label": "w", "observed": 2}]})"),
      plan(R"({"label": "K", "method": "k-short", "children": [{"label": "w", "observed": 2}]})"),
      plan(R"({"label": "K", "method": "k-long", "children": [
                {"label": "c", "observed": 1}, {"label": "w", "observed": 2}]})"),
      plan(R"({"label": "G", "method": "g-main", "children": [
                {"label": "X", "method": "x-first", "children": [{"label": "a"}]},
                {"label": "Y", "method": "y-c", "children": [{"label": "c"}]},
                {"label": "Z", "method": "z-c", "children": [{"label": "c"}]}]})"),
      {},
      parse_observations(*lib, "a\nc\nw\n"),
  };

  f.hypotheses.observations = 3;
  f.hypotheses.hypotheses = {
      Hypothesis{{f.p1, f.p1_prime}, 0.25},
      Hypothesis{{f.p2, f.p2_prime}, 0.25},
      Hypothesis{{f.p3, f.p3_prime}, 0.25},
      Hypothesis{{f.p4, f.p4_prime}, 0.25},
  };
  f.truth.plans = {
      plan(R"({"label": "G", "method": "g-main", "children": [
                {"label": "X", "method": "x-first", "children": [{"label": "a", "observed": 0}]},
                {"label": "Y", "method": "y-c", "children": [{"label": "c", "observed": 1}]},
                {"label": "Z", "method": "z-c", "children": [{"label": "c"}]}]})"),
      f.p1_prime,
  };
  return f;
}

}  // namespace seqplan
