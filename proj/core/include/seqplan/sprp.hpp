#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "seqplan/plan_pool.hpp"
#include "seqplan/plan_tree.hpp"
#include "seqplan/recognizer.hpp"

namespace seqplan {

/// Answers queries on behalf of the observed agent, whose intended
/// hypothesis is `truth`.
struct QueryOracle {
  Hypothesis truth;
  RelationOptions relations{};
};

/// True iff some plan of the truth can be refined from `p`.
bool query_answer(const QueryOracle& oracle, const Plan& p);

/// The update rule without the emptiness check. answer = true keeps the
/// hypotheses with a plan matching `p`; answer = false drops every hypothesis
/// containing a refinement of `p`. Survivor weights are renormalized.
IndexedSet filter_hypotheses(PlanPool& pool, const IndexedSet& set, PlanRef p, bool answer);

/// filter_hypotheses that throws InconsistentOracle on an empty result.
IndexedSet update(PlanPool& pool, const IndexedSet& set, PlanRef p, bool answer);

HypothesisSet update(const HypothesisSet& set, const Plan& p, bool answer,
                     RelationOptions relations = {});

/// Picks the next plan to query. `step` is the 0-based iteration number.
using Selector =
    std::function<PlanRef(PlanPool&, const IndexedSet&, const ClosedSet&, std::size_t step)>;

struct SprpStep {
  PlanKey key;
  std::string plan;  // JSON
  bool answer = false;
  std::size_t size_after = 0;
};

struct SprpTrace {
  std::vector<SprpStep> steps;
  std::size_t initial_size = 0;
  std::size_t final_size = 0;

  std::size_t queries() const noexcept { return steps.size(); }
  /// |H_i| / |H_0| for i = 0..queries(); starts at 1.
  std::vector<double> remaining_fraction() const;
};

struct SprpResult {
  HypothesisSet final_set;
  SprpTrace trace;
  /// Number of distinct plans in H0 (the termination bound).
  std::size_t distinct_plans = 0;
};

/// Query-and-prune loop: while more than one hypothesis remains and some
/// plan of the current set is unqueried, query the selector's choice and
/// apply the update rule. Throws PolicyContractViolation when the selector
/// returns a closed or absent plan, InconsistentOracle when an update empties
/// the set, and ValidationError for truncated input.
SprpResult run_sprp(const PlanLibrary& lib, const HypothesisSet& initial,
                    const QueryOracle& oracle, const Selector& select,
                    RelationOptions relations = {});

}  // namespace seqplan
