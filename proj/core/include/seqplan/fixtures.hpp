#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "seqplan/domain_gen.hpp"
#include "seqplan/plan_library.hpp"
#include "seqplan/plan_tree.hpp"
#include "seqplan/recognizer.hpp"

namespace seqplan {

/// Library text of the chemistry-lab domain: one goal, InvestigateReaction,
/// refined either by the pairwise strategy (six pair mixes, any order) or the
/// four-way strategy (everything in one flask, directly or staged through the
/// A+B and C+D mixes).
extern const std::string_view kChemistryLibraryJson;

/// The chemistry library with a few scripted students. Keys: "pairwise",
/// "fourway-staged", "fourway-direct".
struct ChemistryCatalog {
  std::shared_ptr<const PlanLibrary> library;
  std::map<std::string, Instance> instances;
};

ChemistryCatalog builtin_chemistry();

/// Four two-plan hypotheses over observations [a, c, w] with the relations
/// of the worked pruning example, and the complete plan Q refining P1, P2
/// and P3.
///
///   P1 = G(X[x-first](a@0), Y[y-c](c@1), Z)    P1' = K[k-short](w@2)
///   P2 = G(X[x-first](a@0), Y, Z)              P2' = K[k-long](c@1, w@2)
///   P3 = G(X[x-first](a@0), Y, Z[z-c](c@1))    P3' = P1'
///   P4 = G(X[x-alt](a@0), Y, Z)                P4' = P2'
struct Fig2Fixture {
  std::shared_ptr<const PlanLibrary> library;
  HypothesisSet hypotheses;  // H1..H4, uniform weights
  Plan p1, p2, p3, p4;
  Plan p1_prime, p2_prime, p3_prime, p4_prime;
  Plan q;  // complete, no observation marks
  /// {Q with a@0 and Y's c@1, P1'}: the agent pursues Q and the short K plan.
  Hypothesis truth;
  ObservationSequence observations;
};

extern const std::string_view kFig2LibraryJson;

Fig2Fixture builtin_fig2();

}  // namespace seqplan
