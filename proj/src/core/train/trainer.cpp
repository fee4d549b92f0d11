#include "core/train/trainer.hpp"

#include "core/net/checkpoint.hpp"

#include <cmath>
#include <sstream>

namespace asnets::train {

RolloutRecord run_policy(const ParameterStore& store, ProblemContext& ctx, const State& s0,
                         Rng& rng, int step_limit, ExecutionMode mode) {
  const GroundProblem& gp = *ctx.gp;
  RolloutRecord rec;
  std::vector<int> counts(gp.actions.size(), 0);
  State cur = s0;
  for (int step = 0;; ++step) {
    rec.states.push_back(cur);
    rec.counts.push_back(counts);
    if (gp.is_goal(cur)) {
      rec.reached_goal = true;
      return rec;
    }
    if (step >= step_limit) {
      rec.truncated = true;
      return rec;
    }
    std::vector<uint8_t> enabled = ctx.enabled_mask(cur);
    bool any = false;
    for (uint8_t e : enabled) any |= e;
    if (!any) {
      rec.dead_end = true;
      return rec;
    }
    net::ForwardOptions opts;
    if (ctx.topo.flags.landmarks) opts.landmarks = &ctx.landmarks(cur);
    if (ctx.topo.flags.history) opts.counts = &counts;
    net::Tape tape;
    std::vector<double> pi = net::forward(store, ctx.topo, cur, enabled, opts, &tape);

    int chosen = -1;
    if (mode == ExecutionMode::sample) {
      double u = uniform01(rng);
      double acc = 0.0;
      for (size_t ai = 0; ai < pi.size(); ++ai) {
        if (!enabled[ai]) continue;
        acc += pi[ai];
        chosen = static_cast<int>(ai);
        if (u < acc) break;
      }
    } else {
      double best = -1.0;
      for (size_t ai = 0; ai < pi.size(); ++ai)
        if (enabled[ai] && pi[ai] > best) best = pi[ai];
      if (mode == ExecutionMode::argmax_lex) {
        for (size_t ai = 0; ai < pi.size(); ++ai)
          if (enabled[ai] && pi[ai] >= best - 1e-12) {
            chosen = static_cast<int>(ai);
            break;
          }
      } else {
        std::vector<int> ties;
        for (size_t ai = 0; ai < pi.size(); ++ai)
          if (enabled[ai] && pi[ai] >= best - 1e-12) ties.push_back(static_cast<int>(ai));
        chosen = ties[std::uniform_int_distribution<size_t>(0, ties.size() - 1)(rng)];
      }
    }
    rec.actions.push_back(chosen);
    rec.cost += gp.actions[chosen].cost;
    ++counts[chosen];
    cur = ssp::sample_successor(gp, cur, chosen, rng);
  }
}

TrainConfig sparse_train_config(TrainConfig base) {
  base.gamma_l1 = 1e-2;
  base.lambda_l2 = 0.0;
  base.dropout = 0.0;
  base.lr = 1e-2;
  base.lr_schedule = {{0, 1e-2}, {30, 1e-3}, {40, 1e-4}};
  return base;
}

Trainer::Trainer(std::vector<ProblemContext>& problems, TrainConfig cfg)
    : problems_(problems), cfg_(cfg), rng_(mix_seed(cfg.seed, 0x7261696e)) {
  if (problems_.empty()) fail(ErrKind::invalid_argument, "no training problems");
  Rng init_rng(mix_seed(cfg_.seed, 0x696e6974));
  store_ = net::init_params(problems_[0].topo.sig, cfg_.L, cfg_.d_h, cfg_.flags, init_rng);
  adam_ = net::AdamState::zeros_like(store_);
  for (auto& ctx : problems_) {
    if (!(ctx.topo.sig == store_.sig))
      fail(ErrKind::shape_mismatch, "training problems come from different domains");
    teach::TeacherConfig tc = cfg_.teacher;
    tc.seed = cfg_.seed;
    teachers_.push_back(std::make_unique<teach::Teacher>(*ctx.gp, tc));
  }
  memory_.resize(problems_.size());
}

long long Trainer::teacher_calls() const {
  long long total = 0;
  for (const auto& t : teachers_) total += t->planner_calls();
  return total;
}

size_t Trainer::memory_size() const {
  size_t total = 0;
  for (const auto& m : memory_) total += m.size();
  return total;
}

void Trainer::record_visit(int pi, const State& s, const std::vector<int>& counts) {
  const GroundProblem& gp = *problems_[pi].gp;
  if (gp.is_goal(s)) return;
  if (ssp::applicable_actions(gp, s).empty()) return;  // dead end: no labels exist
  teach::TeacherVerdict v = teachers_[pi]->q_values(s);
  memory_[pi].add(s, counts, v, static_cast<int>(gp.actions.size()));
}

void Trainer::teacher_rollout_from(int pi, const State& s, const std::vector<int>& counts) {
  const GroundProblem& gp = *problems_[pi].gp;
  State cur = s;
  std::vector<int> cnt = counts;
  for (int step = 0; step < cfg_.exploration_step_limit; ++step) {
    if (gp.is_goal(cur)) return;
    teach::TeacherVerdict v = teachers_[pi]->q_values(cur);
    if (v.status != teach::TeacherVerdict::ok) return;  // timeout/dead end truncates
    memory_[pi].add(cur, cnt, v, static_cast<int>(gp.actions.size()));
    int chosen = -1;
    for (size_t i = 0; i < v.enabled.size(); ++i)
      if (v.label[i]) {
        chosen = v.enabled[i];
        break;
      }
    if (chosen < 0) return;
    ++cnt[chosen];
    cur = ssp::sample_successor(gp, cur, chosen, rng_);
  }
}

std::vector<net::BatchSample> Trainer::sample_batch() {
  std::vector<int> nonempty;
  for (size_t pi = 0; pi < problems_.size(); ++pi)
    if (memory_[pi].size() > 0) nonempty.push_back(static_cast<int>(pi));
  if (nonempty.empty()) fail(ErrKind::teacher_unavailable, "state memory is empty");
  const int n = static_cast<int>(nonempty.size());
  const int base = cfg_.batch_size / n;
  const int rem = cfg_.batch_size % n;
  std::vector<net::BatchSample> batch;
  batch.reserve(cfg_.batch_size);
  for (int i = 0; i < n; ++i) {
    const int pi = nonempty[i];
    const auto& entries = memory_[pi].entries();
    const int want = base + (i < rem ? 1 : 0);  // earlier problems take the remainder
    for (int k = 0; k < want; ++k) {
      const MemoryEntry& e =
          entries[std::uniform_int_distribution<size_t>(0, entries.size() - 1)(rng_)];
      net::BatchSample sample;
      sample.topo = &problems_[pi].topo;
      sample.state = e.state;
      sample.enabled = e.enabled;
      sample.y = e.y;
      if (cfg_.flags.landmarks) sample.landmarks = problems_[pi].landmarks(e.state);
      sample.counts = e.counts;
      batch.push_back(std::move(sample));
    }
  }
  return batch;
}

EpochReport Trainer::train_epoch(bool first_epoch) {
  StopWatch epoch_watch;
  EpochReport report;
  report.epoch = epoch_;

  // exploration phase
  if (first_epoch) {
    for (size_t pi = 0; pi < problems_.size(); ++pi) {
      teach::TeacherRollout tr =
          teachers_[pi]->rollout(problems_[pi].gp->s0, rng_, cfg_.exploration_step_limit);
      std::vector<int> counts(problems_[pi].gp->actions.size(), 0);
      for (size_t i = 0; i < tr.states.size(); ++i) {
        record_visit(static_cast<int>(pi), tr.states[i], counts);
        if (i < tr.actions.size()) ++counts[tr.actions[i]];
      }
      report.problem_success.push_back(tr.reached_goal ? 1 : 0);
      report.rollout_problem.push_back(static_cast<int>(pi));
    }
  } else {
    const int n = static_cast<int>(problems_.size());
    const int t_explore = (cfg_.n_traj + n - 1) / n;
    int total = 0;
    for (int round = 0; round < t_explore; ++round) {
      for (int pi = 0; pi < n; ++pi) {
        // every problem gets at least one trajectory; the global budget
        // cuts off the later rounds
        if (round > 0 && total >= cfg_.n_traj) continue;
        RolloutRecord rec = run_policy(store_, problems_[pi], problems_[pi].gp->s0, rng_,
                                       cfg_.exploration_step_limit, ExecutionMode::sample);
        ++total;
        report.problem_success.push_back(rec.reached_goal ? 1 : 0);
        report.rollout_problem.push_back(pi);
        for (size_t i = 0; i < rec.states.size(); ++i) {
          record_visit(pi, rec.states[i], rec.counts[i]);
          teacher_rollout_from(pi, rec.states[i], rec.counts[i]);
        }
      }
    }
  }
  int succ = 0;
  for (uint8_t s : report.problem_success) succ += s;
  report.success_rate = report.problem_success.empty()
                            ? 0.0
                            : static_cast<double>(succ) / report.problem_success.size();
  report.memory_size = memory_size();

  // training phase
  bool have_data = false;
  for (const auto& m : memory_)
    if (m.size()) have_data = true;
  if (!have_data)
    fail(ErrKind::teacher_unavailable, "every training state timed out; no labels to fit");
  double loss_sum = 0.0;
  const double lr = cfg_.lr_at(epoch_);
  for (int t = 0; t < cfg_.t_train; ++t) {
    auto batch = sample_batch();
    net::LossResult res = net::batch_loss(store_, batch, cfg_.lambda_l2, cfg_.gamma_l1,
                                          /*train_mode=*/true, cfg_.dropout, &rng_);
    net::adam_step(store_, res.grads, adam_, lr);
    loss_sum += res.loss;
    if ((t & 31) == 0 && wall_.seconds() > cfg_.max_wall_seconds) break;
  }
  report.mean_loss = loss_sum / cfg_.t_train;
  report.wall_seconds = epoch_watch.seconds();
  ++epoch_;
  return report;
}

TrainResult Trainer::train(const TrainHooks& hooks) {
  TrainResult result;
  int streak = 0;
  while (epoch_ < cfg_.max_epochs && wall_.seconds() < cfg_.max_wall_seconds) {
    EpochReport report = train_epoch(epoch_ == 0);
    if (hooks.on_epoch) hooks.on_epoch(report);
    if (!cfg_.checkpoint_dir.empty() && cfg_.checkpoint_every > 0 &&
        report.epoch % cfg_.checkpoint_every == 0)
      net::save_checkpoint(store_, cfg_.checkpoint_dir + "/ckpt-" +
                                       std::to_string(report.epoch) + ".json");
    result.log.push_back(std::move(report));
    streak = result.log.back().success_rate >= cfg_.p_solved ? streak + 1 : 0;
    if (streak >= cfg_.t_stop) {
      result.early_stopped = true;
      break;
    }
  }
  result.store = store_;
  result.epochs = epoch_;
  return result;
}

TrainResult train(std::vector<ProblemContext>& problems, const TrainConfig& cfg,
                  const TrainHooks& hooks) {
  Trainer trainer(problems, cfg);
  return trainer.train(hooks);
}

TrainResult sparse_train(std::vector<ProblemContext>& problems, const TrainConfig& base,
                         double prune_tau, const TrainHooks& hooks) {
  Trainer trainer(problems, sparse_train_config(base));
  TrainResult result = trainer.train(hooks);
  result.store.threshold(prune_tau);
  return result;
}

std::string epoch_report_json(const EpochReport& r) {
  std::ostringstream os;
  os << "{\"epoch\":" << r.epoch << ",\"rollouts\":" << r.problem_success.size()
     << ",\"success_rate\":" << r.success_rate << ",\"memory\":" << r.memory_size
     << ",\"mean_loss\":" << r.mean_loss << ",\"wall_seconds\":" << r.wall_seconds << "}";
  return os.str();
}

}  // namespace asnets::train
