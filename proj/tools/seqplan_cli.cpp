#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "seqplan/harness.hpp"

using seqplan::CliOptions;

namespace {

void add_generator_flags(CLI::App* cmd, seqplan::GenParams& g) {
  cmd->add_option("--goals", g.num_goals, "Number of top-level goals")->capture_default_str();
  cmd->add_option("--branching", g.branching, "Maximum methods per complex action")
      ->capture_default_str();
  cmd->add_option("--depth", g.depth, "Complex strata above the basic actions")
      ->capture_default_str();
  cmd->add_option("--basic", g.num_basic, "Number of basic actions")->capture_default_str();
  cmd->add_option("--complex-per-level", g.complex_per_level,
                  "Non-goal complex actions per stratum")
      ->capture_default_str();
  cmd->add_option("--order-prob", g.order_probability,
                  "Probability that adjacent constituents are ordered")
      ->capture_default_str();
  cmd->add_option("--truth-goals", g.max_truth_goals, "Maximum goals pursued by the agent")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan recognition with sequential oracle queries"};
  app.require_subcommand(1);
  CliOptions opts;

  auto* rec = app.add_subcommand("recognize", "Print the hypotheses explaining an observation file");
  rec->add_option("--library", opts.library, "Plan library (JSON)")->required();
  rec->add_option("--obs", opts.obs, "Observations, one action per line")->required();
  rec->add_option("--max-hypotheses", opts.max_hypotheses, "Keep at most this many hypotheses");
  rec->add_flag("--json", opts.json, "Print the hypothesis set as JSON");

  auto* sprp = app.add_subcommand("sprp", "Query and prune until the hypotheses agree");
  sprp->add_option("--library", opts.library, "Plan library (JSON)")->required();
  sprp->add_option("--obs", opts.obs, "Observations, one action per line");
  sprp->add_option("--truth", opts.truth, "The agent's actual hypothesis (JSON)")->required();
  sprp->add_option("--hypotheses", opts.hypotheses, "Initial hypothesis set instead of --obs");
  sprp->add_option("--first-query", opts.first_query, "Plan (JSON) to query first");
  sprp->add_option("--policy", opts.policies, "random | mph | mpp | entropy")
      ->expected(1)
      ->check(CLI::IsMember({"random", "mph", "mpp", "entropy"}));
  sprp->add_option("--seed", opts.seed, "Tie-breaking seed")->capture_default_str();
  sprp->add_option("--max-hypotheses", opts.max_hypotheses, "Recognition cap");
  sprp->add_flag("--verify", opts.verify, "Check the final set against a brute-force filter");
  sprp->add_flag("--strict-observations", opts.strict_observations,
                 "Treat observation indices as part of plan identity in relations");
  sprp->add_flag("--json", opts.json, "Print the trace as JSON");

  auto* gen = app.add_subcommand("gen", "Write a library, observations and truth to a directory");
  gen->add_option("--out", opts.out, "Output directory")->required();
  gen->add_option("--seed", opts.seed, "Generator seed")->capture_default_str();
  gen->add_option("--obs-len", opts.gen.obs_len, "Observations to emit")->capture_default_str();
  gen->add_option("--fixture", opts.fixture, "Write a built-in example instead")
      ->check(CLI::IsMember({"chemistry", "fig2"}));
  add_generator_flags(gen, opts.gen);

  auto* exp = app.add_subcommand("experiment", "Compare policies on generated instances");
  exp->add_option("--out", opts.out, "Output directory for the CSV files")->required();
  exp->add_option("--policy", opts.policies, "Policies to compare (default: all)")
      ->check(CLI::IsMember({"random", "mph", "mpp", "entropy"}));
  exp->add_option("--obs-len", opts.obs_lengths, "Observation lengths (default: 3 4 5 6 7)");
  exp->add_option("--instances", opts.instances, "Generated instances")->capture_default_str();
  exp->add_option("--reps", opts.reps, "Policy runs per instance and length")
      ->capture_default_str();
  exp->add_option("--seed", opts.seed, "Experiment seed")->capture_default_str();
  exp->add_option("--jobs", opts.jobs, "Worker threads")->capture_default_str();
  exp->add_option("--max-hypotheses", opts.max_hypotheses, "Recognition cap");
  exp->add_flag("--strict-observations", opts.strict_observations,
                "Treat observation indices as part of plan identity in relations");
  add_generator_flags(exp, opts.gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : seqplan::kExitInputError;
  }

  if (rec->parsed()) return seqplan::cmd_recognize(opts, std::cout, std::cerr);
  if (sprp->parsed()) return seqplan::cmd_sprp(opts, std::cout, std::cerr);
  if (gen->parsed()) return seqplan::cmd_gen(opts, std::cout, std::cerr);
  return seqplan::cmd_experiment(opts, std::cout, std::cerr);
}
