#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

#include "seqplan/plan_library.hpp"
#include "seqplan/plan_tree.hpp"

namespace seqplan {

/// Knobs of the synthetic domain generator. The first group mirrors the
/// simulated-domain configuration (five goals, branching factor 3); the rest
/// shape the grammar and were calibrated so that recognition at 3..7
/// observations yields hypothesis sets in the tens.
struct GenParams {
  std::size_t num_goals = 5;
  std::size_t branching = 3;  // max methods per complex action
  std::size_t depth = 2;      // complex strata above the basic actions
  std::size_t num_basic = 70;
  std::size_t obs_len = 7;
  std::uint64_t seed = 1;

  std::size_t complex_per_level = 6;  // non-goal complex actions per stratum
  std::size_t min_constituents = 2;
  std::size_t max_constituents = 3;
  double order_probability = 1.0;  // chance each adjacent constituent pair is ordered
  std::size_t max_truth_goals = 2;
};

/// Throws ValidationError for parameters that admit no valid library.
void validate_params(const GenParams& params);

/// One experimental unit: a library, the agent's intended (complete) plans,
/// and what was observed of them.
struct Instance {
  std::shared_ptr<const PlanLibrary> library;
  /// Complete plans; observed leaves carry their observation index. Plans
  /// with no observed leaf are left out.
  Hypothesis truth;
  ObservationSequence observations;

  /// Every leaf of every intended plan annotated with its execution index,
  /// and the corresponding full execution order. Prefixes of `schedule` give
  /// instances for shorter observation sequences.
  Hypothesis execution;
  ObservationSequence schedule;
};

/// Random stratified acyclic library plus a sampled truth and a linear
/// extension of its leaves, truncated to params.obs_len. Deterministic in
/// params.seed.
Instance gen_instance(const GenParams& params);

/// The same instance observed for only the first `length` actions of its
/// schedule. Throws ValidationError if the schedule is shorter.
Instance restrict_to_prefix(const Instance& inst, std::size_t length);

/// Library only, as gen_instance would build it for these parameters.
PlanLibrary gen_library(const GenParams& params);

}  // namespace seqplan
