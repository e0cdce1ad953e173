#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqplan/domain_gen.hpp"
#include "seqplan/policies.hpp"
#include "seqplan/recognizer.hpp"
#include "seqplan/sprp.hpp"

namespace seqplan {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitUnexplainable = 2,
  kExitInconsistentOracle = 3,
};

/// {h ∈ H0 : hypothesis_refines(h, truth)} with weights renormalized. The
/// fixpoint that a complete query-and-prune run must reach.
HypothesisSet brute_force_final_set(const HypothesisSet& initial, const Hypothesis& truth,
                                    RelationOptions relations = {});

/// True iff both sets hold the same hypotheses (compared by hypothesis_key).
bool same_hypotheses(const HypothesisSet& a, const HypothesisSet& b);

struct ExperimentSpec {
  GenParams generator;             // seed is replaced per instance
  std::size_t instances = 100;
  std::vector<PolicyKind> policies{std::begin(kAllPolicies), std::end(kAllPolicies)};
  std::vector<std::size_t> obs_lengths{3, 4, 5, 6, 7};
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  RecognizerConfig recognizer{};
  RelationOptions relations{};
  std::size_t jobs = 1;
};

struct ExperimentRow {
  std::size_t instance = 0;
  PolicyKind policy = PolicyKind::random;
  std::size_t obs_len = 0;
  std::size_t repetition = 0;
  std::size_t h0_size = 0;
  std::size_t queries = 0;
  std::size_t final_size = 0;
  std::vector<double> remaining;  // starts at 1.0, non-increasing
};

/// Per instance and observation length: hypothesis count after each
/// observation, and whether some hypothesis had no successor at that step.
struct RecognitionRecord {
  std::size_t instance = 0;
  std::vector<std::size_t> counts;   // counts[i] = |H| after i+1 observations
  std::vector<bool> deaths;          // deaths[i]: a hypothesis died at step i
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // sorted by (instance, policy, obs_len, repetition)
  std::vector<RecognitionRecord> recognition;
  std::vector<std::string> failures;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

struct SummaryRow {
  PolicyKind policy;
  std::size_t obs_len;
  std::size_t runs;
  double mean_queries;
  double sd_queries;
  double mean_h0;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRow>& rows);

/// Mean remaining fraction per query index for one policy and length. Runs
/// that converged earlier contribute their final fraction to later indices.
std::vector<double> mean_remaining_curve(const std::vector<ExperimentRow>& rows,
                                         PolicyKind policy, std::size_t obs_len);

/// Fraction of paired runs (same instance, length, repetition) in which
/// `a` needed strictly fewer queries than `b`.
double win_rate(const std::vector<ExperimentRow>& rows, PolicyKind a, PolicyKind b,
                std::size_t obs_len);

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
void write_curves_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_winrates_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// Parsed command-line options shared by the subcommands.
struct CliOptions {
  std::string library;
  std::string obs;
  std::string truth;
  std::string hypotheses;  // optional H0 file for `sprp`
  std::string first_query; // optional plan file `sprp` queries before consulting the policy
  std::string out;
  std::string fixture;     // `gen`: chemistry | fig2
  std::vector<std::string> policies;
  std::uint64_t seed = 1;
  bool verify = false;
  bool strict_observations = false;
  bool json = false;
  std::optional<std::size_t> max_hypotheses;
  std::size_t reps = 1;
  std::vector<std::size_t> obs_lengths;
  std::size_t instances = 100;
  std::size_t jobs = 1;
  GenParams gen;
};

int cmd_recognize(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sprp(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gen(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_experiment(const CliOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace seqplan
