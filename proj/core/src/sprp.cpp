#include "seqplan/sprp.hpp"

#include <algorithm>

#include "seqplan/errors.hpp"
#include "seqplan/io.hpp"

namespace seqplan {

bool query_answer(const QueryOracle& oracle, const Plan& p) {
  return std::any_of(oracle.truth.plans.begin(), oracle.truth.plans.end(),
                     [&](const Plan& t) { return is_refinement(p, t, oracle.relations); });
}

IndexedSet filter_hypotheses(PlanPool& pool, const IndexedSet& set, PlanRef p, bool answer) {
  IndexedSet out;
  double total = 0.0;
  for (const auto& h : set) {
    bool hit = false;
    for (PlanRef q : h.plans) {
      if (answer ? pool.matches(q, p) : pool.refines(p, q)) {
        hit = true;
        break;
      }
    }
    if (hit == answer) {
      out.push_back(h);
      total += h.weight;
    }
  }
  if (!out.empty()) {
    if (total > 0.0) {
      for (auto& h : out) h.weight /= total;
    } else {
      for (auto& h : out) h.weight = 1.0 / out.size();
    }
  }
  return out;
}

IndexedSet update(PlanPool& pool, const IndexedSet& set, PlanRef p, bool answer) {
  IndexedSet out = filter_hypotheses(pool, set, p, answer);
  if (out.empty()) throw InconsistentOracle();
  return out;
}

HypothesisSet update(const HypothesisSet& set, const Plan& p, bool answer,
                     RelationOptions relations) {
  PlanPool pool(relations);
  IndexedSet indexed = index_hypotheses(pool, set);
  const PlanRef r = pool.intern(p);
  return materialize(set, update(pool, indexed, r, answer));
}

std::vector<double> SprpTrace::remaining_fraction() const {
  std::vector<double> out;
  out.reserve(steps.size() + 1);
  const double base = initial_size ? static_cast<double>(initial_size) : 1.0;
  out.push_back(initial_size ? 1.0 : 0.0);
  for (const auto& s : steps) out.push_back(static_cast<double>(s.size_after) / base);
  return out;
}

SprpResult run_sprp(const PlanLibrary& lib, const HypothesisSet& initial,
                    const QueryOracle& oracle, const Selector& select,
                    RelationOptions relations) {
  if (initial.truncated)
    throw ValidationError("SPRP requires a complete (untruncated) hypothesis set");
  if (initial.empty()) throw ValidationError("SPRP requires a non-empty hypothesis set");

  PlanPool pool(relations);
  IndexedSet current = index_hypotheses(pool, initial);

  SprpResult result;
  result.distinct_plans = pool.size();
  result.trace.initial_size = current.size();

  ClosedSet closed;
  for (std::size_t step = 0; current.size() > 1; ++step) {
    const std::vector<PlanRef> candidates = candidate_plans(pool, current, closed);
    if (candidates.empty()) break;
    const PlanRef p = select(pool, current, closed, step);
    if (std::find(candidates.begin(), candidates.end(), p) == candidates.end())
      throw PolicyContractViolation("policy selected a closed or absent plan");

    const bool answer = query_answer(oracle, pool.plan(p));
    current = update(pool, current, p, answer);
    closed.insert(pool.key(p));
    result.trace.steps.push_back(
        SprpStep{pool.key(p), plan_to_json(lib, pool.plan(p)), answer, current.size()});
  }

  result.trace.final_size = current.size();
  result.final_set = materialize(initial, current);
  return result;
}

}  // namespace seqplan
