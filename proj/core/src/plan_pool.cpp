#include "seqplan/plan_pool.hpp"

#include <utility>

#include "seqplan/errors.hpp"

namespace seqplan {

PlanRef PlanPool::intern(const Plan& p) {
  PlanKey k = canonical_key(p);
  if (auto it = index_.find(k); it != index_.end()) return it->second;
  if (!plans_.empty() && plans_.front().library() != p.library()) throw LibraryMismatch();
  const auto r = static_cast<PlanRef>(plans_.size());
  plans_.push_back(p);
  keys_.push_back(k);
  index_.emplace(std::move(k), r);
  return r;
}

std::optional<PlanRef> PlanPool::find(const PlanKey& key) const {
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  return std::nullopt;
}

PlanPool::Cached& PlanPool::slot(std::vector<std::vector<Cached>>& table, PlanRef a, PlanRef b) {
  if (table.size() < plans_.size()) table.resize(plans_.size());
  auto& row = table[a];
  if (row.size() < plans_.size()) row.resize(plans_.size(), Cached::unknown);
  return row[b];
}

bool PlanPool::refines(PlanRef from, PlanRef to) {
  Cached& c = slot(refines_, from, to);
  if (c == Cached::unknown)
    c = is_refinement(plans_.at(from), plans_.at(to), opts_) ? Cached::yes : Cached::no;
  return c == Cached::yes;
}

bool PlanPool::matches(PlanRef a, PlanRef b) {
  if (a > b) std::swap(a, b);
  Cached& c = slot(matches_, a, b);
  if (c == Cached::unknown)
    c = seqplan::matches(plans_.at(a), plans_.at(b), opts_) ? Cached::yes : Cached::no;
  return c == Cached::yes;
}

IndexedSet index_hypotheses(PlanPool& pool, const HypothesisSet& set) {
  IndexedSet out;
  out.reserve(set.hypotheses.size());
  for (std::size_t i = 0; i < set.hypotheses.size(); ++i) {
    IndexedHypothesis ih;
    ih.weight = set.hypotheses[i].weight;
    ih.origin = i;
    for (const auto& p : set.hypotheses[i].plans) ih.plans.push_back(pool.intern(p));
    out.push_back(std::move(ih));
  }
  return out;
}

HypothesisSet materialize(const HypothesisSet& origin, const IndexedSet& survivors) {
  HypothesisSet out;
  out.observations = origin.observations;
  out.truncated = origin.truncated;
  out.hypotheses.reserve(survivors.size());
  for (const auto& ih : survivors) {
    Hypothesis h = origin.hypotheses.at(ih.origin);
    h.weight = ih.weight;
    out.hypotheses.push_back(std::move(h));
  }
  return out;
}

std::vector<PlanRef> candidate_plans(const PlanPool& pool, const IndexedSet& set,
                                     const ClosedSet& closed) {
  std::vector<PlanRef> out;
  std::vector<bool> seen(pool.size(), false);
  for (const auto& h : set)
    for (PlanRef r : h.plans) {
      if (seen[r]) continue;
      seen[r] = true;
      if (!closed.contains(pool.key(r))) out.push_back(r);
    }
  return out;
}

}  // namespace seqplan
