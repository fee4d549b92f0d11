#pragma once

#include <functional>

#include "core/train/memory.hpp"

namespace asnets::train {

using net::ParameterStore;

enum class ExecutionMode { sample, argmax_lex, argmax_random_tie };

struct RolloutRecord {
  std::vector<State> states;
  std::vector<int> actions;
  std::vector<std::vector<int>> counts;  // per visited state, counts at visit time
  bool reached_goal = false;
  bool dead_end = false;
  bool truncated = false;
  double cost = 0.0;
};

// One policy execution. Sampling draws a ~ pi; argmax_lex breaks exact ties
// by action name order (= index order); argmax_random_tie picks uniformly
// among logit ties, which is what lets structurally blind policies coin-flip.
RolloutRecord run_policy(const ParameterStore& store, ProblemContext& ctx, const State& s0,
                         Rng& rng, int step_limit, ExecutionMode mode);

struct TrainConfig {
  int L = 2;
  int d_h = 16;
  int n_traj = 70;      // exploration trajectories per epoch, across problems
  int t_train = 700;    // optimisation batches per epoch
  int batch_size = 64;
  double lr = 1e-3;
  double lambda_l2 = 2e-4;
  double gamma_l1 = 0.0;
  double dropout = 0.1;
  int t_stop = 20;
  double p_solved = 1.0;
  double max_wall_seconds = 1800.0;
  int max_epochs = 100000;
  int exploration_step_limit = 300;
  teach::TeacherConfig teacher;
  rel::Flags flags;
  uint64_t seed = 0;
  std::vector<std::pair<int, double>> lr_schedule;  // (first epoch, lr), ascending
  std::string checkpoint_dir;  // empty: no periodic checkpoints
  int checkpoint_every = 0;

  double lr_at(int epoch) const {
    double out = lr;
    for (const auto& [e, v] : lr_schedule)
      if (epoch >= e) out = v;
    return out;
  }
};

// gamma = 1e-2, no l2/dropout, decayed lr, hard-threshold pruning afterwards
TrainConfig sparse_train_config(TrainConfig base);

struct EpochReport {
  int epoch = 0;
  std::vector<uint8_t> problem_success;  // one flag per exploration rollout
  std::vector<int> rollout_problem;      // problem index per rollout
  double success_rate = 0.0;
  size_t memory_size = 0;
  double mean_loss = 0.0;
  double wall_seconds = 0.0;
};

std::string epoch_report_json(const EpochReport& r);

struct TrainResult {
  ParameterStore store;
  std::vector<EpochReport> log;
  bool early_stopped = false;
  int epochs = 0;
};

struct TrainHooks {
  std::function<void(const EpochReport&)> on_epoch;
};

class Trainer {
 public:
  Trainer(std::vector<ProblemContext>& problems, TrainConfig cfg);

  EpochReport train_epoch(bool first_epoch);
  TrainResult train(const TrainHooks& hooks = {});

  const ParameterStore& store() const { return store_; }
  ParameterStore& store() { return store_; }
  long long teacher_calls() const;
  size_t memory_size() const;

 private:
  void record_visit(int pi, const State& s, const std::vector<int>& counts);
  void teacher_rollout_from(int pi, const State& s, const std::vector<int>& counts);
  std::vector<net::BatchSample> sample_batch();

  std::vector<ProblemContext>& problems_;
  TrainConfig cfg_;
  ParameterStore store_;
  net::AdamState adam_;
  std::vector<std::unique_ptr<teach::Teacher>> teachers_;
  std::vector<StateMemory> memory_;
  Rng rng_;
  int epoch_ = 0;
  StopWatch wall_;
};

// Convenience wrappers matching the pipeline surface.
TrainResult train(std::vector<ProblemContext>& problems, const TrainConfig& cfg,
                  const TrainHooks& hooks = {});
TrainResult sparse_train(std::vector<ProblemContext>& problems, const TrainConfig& base,
                         double prune_tau = 1e-2, const TrainHooks& hooks = {});

}  // namespace asnets::train
