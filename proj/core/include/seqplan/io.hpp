#pragma once

#include <string>
#include <string_view>

#include "seqplan/plan_library.hpp"
#include "seqplan/plan_tree.hpp"
#include "seqplan/recognizer.hpp"

namespace seqplan {

// Plans serialize as nested records
//   {"label": name, "method": id?, "observed": index?, "children": [..]?}
// Hypotheses as {"weight": w, "plans": [..]}; a bare list of plans is also
// accepted on input. Hypothesis sets as
//   {"observations": n, "truncated": b, "hypotheses": [..]}.
// Parsers validate against the library and throw ValidationError.

std::string plan_to_json(const PlanLibrary& lib, const Plan& p, int indent = -1);
Plan plan_from_json(const PlanLibrary& lib, std::string_view text);

std::string hypothesis_to_json(const PlanLibrary& lib, const Hypothesis& h, int indent = -1);
Hypothesis hypothesis_from_json(const PlanLibrary& lib, std::string_view text);

std::string hypothesis_set_to_json(const PlanLibrary& lib, const HypothesisSet& s,
                                   int indent = 2);
HypothesisSet hypothesis_set_from_json(const PlanLibrary& lib, std::string_view text);

/// One basic-action name per line (blank lines and `#` comments skipped), or
/// a JSON list of names when the text starts with '['. Names that are not
/// basic actions raise UnexplainableObservation carrying their index.
ObservationSequence parse_observations(const PlanLibrary& lib, std::string_view text);
std::string serialize_observations(const PlanLibrary& lib, std::span<const ActionId> obs);

/// Human-readable one-line rendering, e.g. `G[m](X[m1](a@0), Y)`.
std::string plan_to_string(const PlanLibrary& lib, const Plan& p);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace seqplan
