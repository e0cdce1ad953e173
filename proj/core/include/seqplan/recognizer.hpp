#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "seqplan/plan_library.hpp"
#include "seqplan/plan_tree.hpp"

namespace seqplan {

/// Weighted hypotheses explaining the first `observations` observations.
/// Weights sum to 1. `truncated` is set when a cap dropped hypotheses, in
/// which case the set is no longer complete.
struct HypothesisSet {
  std::vector<Hypothesis> hypotheses;
  std::size_t observations = 0;
  bool truncated = false;

  /// The state before any observation: one hypothesis with no plans.
  static HypothesisSet seed();

  std::size_t size() const noexcept { return hypotheses.size(); }
  bool empty() const noexcept { return hypotheses.empty(); }
};

struct RecognizerConfig {
  std::optional<std::size_t> max_hypotheses;
  bool new_plan_allowed = true;
};

/// Open nodes of `p` that may explain the next observation: every
/// order-predecessor at every ancestor level roots a fully observed subtree.
std::vector<NodePath> enabled_expansion_targets(const PlanLibrary& lib, const Plan& p);

/// Π goal priors × Π over expanded nodes 1/|methods_for(label)|.
double hypothesis_weight(const PlanLibrary& lib, const Hypothesis& h);

struct ExplainStats {
  std::size_t dead = 0;  // input hypotheses with no way to explain the observation
};

/// Extends every hypothesis of `current` with observation `o` at index
/// `current.observations`, deduplicates and normalizes. Throws
/// UnexplainableObservation if nothing explains `o`.
HypothesisSet explain_step(const PlanLibrary& lib, const HypothesisSet& current, ActionId o,
                           const RecognizerConfig& cfg = {}, ExplainStats* stats = nullptr);

/// Left fold of explain_step over `obs`, starting from HypothesisSet::seed().
HypothesisSet recognize(const PlanLibrary& lib, std::span<const ActionId> obs,
                        const RecognizerConfig& cfg = {});

/// Rescales weights to sum to 1 (uniform if they sum to 0).
void normalize_weights(std::vector<Hypothesis>& hypotheses);

}  // namespace seqplan
