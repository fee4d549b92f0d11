#pragma once

#include "core/train/trainer.hpp"

namespace asnets::eval {

using net::ParameterStore;
using ppddl::GroundProblem;
using ssp::State;
using train::ExecutionMode;
using train::ProblemContext;

struct EvalConfig {
  int rollouts_per_problem = 30;
  ExecutionMode mode = ExecutionMode::argmax_lex;
  uint64_t seed = 0;
  int step_limit = 300;
  int jobs = 1;
};

struct ProblemCoverage {
  std::string name;
  int successes = 0;
  int attempts = 0;
  double mean_cost = 0.0;  // over successful rollouts
  double ci_half = 0.0;    // 1.96 * sd / sqrt(n)
};

struct CoverageReport {
  std::vector<ProblemCoverage> problems;
  double cumulative = 0.0;  // sum of per-problem success fractions
};

CoverageReport evaluate(const ParameterStore& store, std::vector<ProblemContext>& problems,
                        const EvalConfig& cfg);

// The arithmetic alone, for synthetic reports.
double cumulative_coverage(const std::vector<std::pair<int, int>>& successes_attempts);

std::string coverage_json(const CoverageReport& report);
std::string coverage_table(const CoverageReport& report);

struct ReceptiveFieldConfig {
  std::vector<int> L_values{1, 2, 3, 4};
  std::vector<int> K_values{1, 2, 3, 4, 5};
  int rollouts = 30;
  uint64_t seed = 0;
  double wall_per_L = 480.0;
  int max_epochs = 60;
  int d_h = 16;
  int t_train = 700;
  int n_traj = 70;
};

struct ReceptiveFieldResult {
  std::vector<int> L_values, K_values;
  std::vector<std::vector<int>> successes;  // [L][K] out of cfg.rollouts
  int rollouts = 30;
};

// Trains one no-heuristic, no-skip network per L on the chain family
// (decision depth K = 1..max, goal sides alternating) and measures coverage
// with random tie-breaking; blind cells coin-flip by symmetry.
ReceptiveFieldResult receptive_field_experiment(const ReceptiveFieldConfig& cfg);

std::string receptive_field_json(const ReceptiveFieldResult& r);
std::string receptive_field_table(const ReceptiveFieldResult& r);

}  // namespace asnets::eval
