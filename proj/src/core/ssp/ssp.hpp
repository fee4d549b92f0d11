#pragma once

#include "core/ppddl/ground.hpp"

namespace asnets::ssp {

using ppddl::GroundAction;
using ppddl::GroundProblem;
using State = Bitset;

struct FsspudeConfig {
  double dead_end_penalty = 500.0;
  int rollout_step_limit = 300;
};

struct TransitionDistribution {
  std::vector<std::pair<State, double>> entries;  // deduplicated, probs sum to 1
};

bool action_applicable(const GroundAction& a, const State& s);

// Ascending action-index order.
std::vector<int> applicable_actions(const GroundProblem& gp, const State& s);

// Conditions evaluate against the pre-state; deletes apply before adds.
State apply_outcome(const GroundProblem& gp, const State& s, int action, int outcome);

TransitionDistribution successor_distribution(const GroundProblem& gp, const State& s, int action);

State sample_successor(const GroundProblem& gp, const State& s, int action, Rng& rng);

// One deterministic action per distinct non-no-op outcome; pure no-op
// outcomes are dropped. Each action keeps a back-pointer to its source.
GroundProblem all_outcomes_determinise(const GroundProblem& gp);

// Delete lists emptied, negative preconditions/conditions dropped, and each
// conditional branch split into its own unconditional achiever
// (precondition = pre + positive condition). Requires a deterministic input.
GroundProblem delete_relax(const GroundProblem& gp_det);

std::string state_json(const GroundProblem& gp, const State& s);
State state_from_names(const GroundProblem& gp, const std::vector<std::string>& names);

}  // namespace asnets::ssp
