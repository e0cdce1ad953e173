#include "seqplan/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "seqplan/errors.hpp"
#include "seqplan/seeding.hpp"

namespace seqplan {

namespace {

constexpr double kTieTolerance = 1e-12;

bool ties(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

template <typename T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
  return items[dist(rng)];
}

/// Uniform choice among the candidates whose score is best under `better`.
template <typename Better>
PlanRef best_of(const std::vector<PlanRef>& candidates, const std::vector<double>& score,
                std::uint64_t seed, Better better) {
  double best = score[0];
  for (double s : score)
    if (better(s, best)) best = s;
  std::vector<PlanRef> tied;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (ties(score[i], best)) tied.push_back(candidates[i]);
  std::mt19937_64 rng(seed);
  return pick(tied, rng);
}

std::vector<PlanRef> require_candidates(const PlanPool& pool, const IndexedSet& set,
                                        const ClosedSet& closed) {
  auto c = candidate_plans(pool, set, closed);
  if (c.empty()) throw NoCandidates();
  return c;
}

double total_weight(const IndexedSet& set) {
  double t = 0.0;
  for (const auto& h : set) t += h.weight;
  return t;
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::random: return "random";
    case PolicyKind::mph: return "mph";
    case PolicyKind::mpp: return "mpp";
    case PolicyKind::entropy: return "entropy";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (PolicyKind k : kAllPolicies)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

double entropy(std::span<const double> weights) {
  if (weights.size() <= 1) return 0.0;
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double w : weights) {
    const double p = w / total;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

double entropy(const IndexedSet& set) {
  std::vector<double> w;
  w.reserve(set.size());
  for (const auto& h : set) w.push_back(h.weight);
  return entropy(w);
}

double entropy(const HypothesisSet& set) {
  std::vector<double> w;
  w.reserve(set.size());
  for (const auto& h : set.hypotheses) w.push_back(h.weight);
  return entropy(w);
}

double cumulative_plan_prob(PlanPool& pool, const IndexedSet& set, PlanRef t) {
  double sum = 0.0;
  for (const auto& h : set)
    if (std::any_of(h.plans.begin(), h.plans.end(), [&](PlanRef p) { return pool.refines(t, p); }))
      sum += h.weight;
  return sum;
}

double cumulative_plan_prob(const HypothesisSet& set, const Plan& t, RelationOptions rel) {
  PlanPool pool(rel);
  IndexedSet indexed = index_hypotheses(pool, set);
  return cumulative_plan_prob(pool, indexed, pool.intern(t));
}

double expected_entropy(PlanPool& pool, const IndexedSet& set, PlanRef t) {
  const double total = total_weight(set);
  const double p = total > 0.0 ? cumulative_plan_prob(pool, set, t) / total : 0.0;
  const double on_true = entropy(filter_hypotheses(pool, set, t, true));
  const double on_false = entropy(filter_hypotheses(pool, set, t, false));
  return p * on_true + (1.0 - p) * on_false;
}

PlanRef select_random(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                      std::uint64_t seed) {
  const auto candidates = require_candidates(pool, set, closed);
  std::mt19937_64 rng(seed);
  return pick(candidates, rng);
}

PlanRef select_mph(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                   std::uint64_t seed) {
  require_candidates(pool, set, closed);
  std::mt19937_64 rng(seed);

  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return set[a].weight > set[b].weight; });
  // Shuffle runs of equal weight so ties do not favour recognizer order.
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && ties(set[order[j]].weight, set[order[i]].weight)) ++j;
    std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(i),
                 order.begin() + static_cast<std::ptrdiff_t>(j), rng);
    i = j;
  }

  for (std::size_t idx : order) {
    std::vector<PlanRef> open;
    for (PlanRef r : set[idx].plans)
      if (!closed.contains(pool.key(r)) && std::find(open.begin(), open.end(), r) == open.end())
        open.push_back(r);
    if (!open.empty()) return pick(open, rng);
  }
  throw NoCandidates();
}

PlanRef select_mpp(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                   std::uint64_t seed) {
  const auto candidates = require_candidates(pool, set, closed);
  std::vector<double> score;
  score.reserve(candidates.size());
  for (PlanRef t : candidates) score.push_back(cumulative_plan_prob(pool, set, t));
  return best_of(candidates, score, seed, [](double a, double b) { return a > b; });
}

PlanRef select_min_entropy(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                           std::uint64_t seed) {
  const auto candidates = require_candidates(pool, set, closed);
  std::vector<double> score;
  score.reserve(candidates.size());
  for (PlanRef t : candidates) score.push_back(expected_entropy(pool, set, t));
  return best_of(candidates, score, seed, [](double a, double b) { return a < b; });
}

PlanRef select(PolicyKind kind, PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
               std::uint64_t seed) {
  switch (kind) {
    case PolicyKind::random: return select_random(pool, set, closed, seed);
    case PolicyKind::mph: return select_mph(pool, set, closed, seed);
    case PolicyKind::mpp: return select_mpp(pool, set, closed, seed);
    case PolicyKind::entropy: return select_min_entropy(pool, set, closed, seed);
  }
  throw Error("unknown policy kind");
}

PlanRef Policy::operator()(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                           std::size_t step) const {
  return select(kind_, pool, set, closed, derive_seed(seed_, {step}));
}

std::vector<Plan> candidate_plans(const HypothesisSet& set, const ClosedSet& closed) {
  PlanPool pool;
  IndexedSet indexed = index_hypotheses(pool, set);
  std::vector<Plan> out;
  for (PlanRef r : candidate_plans(pool, indexed, closed)) out.push_back(pool.plan(r));
  return out;
}

Plan select(PolicyKind kind, const HypothesisSet& set, const ClosedSet& closed,
            std::uint64_t seed, RelationOptions rel) {
  PlanPool pool(rel);
  IndexedSet indexed = index_hypotheses(pool, set);
  return pool.plan(select(kind, pool, indexed, closed, seed));
}

}  // namespace seqplan
