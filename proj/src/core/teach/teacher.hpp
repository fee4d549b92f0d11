#pragma once

#include <functional>
#include <mutex>

#include "core/heur/heuristics.hpp"
#include "core/ssp/oracle.hpp"

namespace asnets::teach {

using heur::HeuristicKind;
using heur::RelaxedEvaluator;
using ppddl::GroundProblem;
using ssp::State;
using ssp::StateMap;
using ssp::StateSet;

struct PlanResult {
  enum Status { found, unsolvable, timeout } status = unsolvable;
  std::vector<int> plan;
  double cost = 0.0;
};

// A* over a deterministic problem; with an admissible heuristic the cost is
// optimal (inadmissible heuristics yield a valid plan only). Nodes re-open
// when a cheaper path appears.
PlanResult astar_plan(const GroundProblem& gp_det, const RelaxedEvaluator& eval,
                      HeuristicKind h, const State& s, const Deadline& deadline);

// A* with g = 0 and no re-opening.
PlanResult gbfs_plan(const GroundProblem& gp_det, const RelaxedEvaluator& eval,
                     HeuristicKind h, const State& s, const Deadline& deadline);

struct LrtdpResult {
  enum Status { solved, timeout } status = solved;
  StateMap<double> value;
  StateMap<char> labeled;
  double v0 = 0.0;
};

// Labeled RTDP under fSSPUDE semantics: values live in [0, D], dead ends
// converge to D. The heuristic is evaluated on the all-outcomes
// determinisation. Deterministic given the seed; a session may be asked to
// solve several states, sharing its table.
class LrtdpSession {
 public:
  LrtdpSession(const GroundProblem& gp, const RelaxedEvaluator& eval, HeuristicKind h,
               const ssp::FsspudeConfig& fsspude, double epsilon, const Deadline& deadline,
               uint64_t seed);
  ~LrtdpSession();
  void solve(const State& s);
  bool is_labeled(const State& s) const;
  double value_of(const State& s);
  bool timed_out() const;
  const StateMap<double>& values() const;
  const StateMap<char>& labels() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LrtdpResult lrtdp_solve(const GroundProblem& gp, const RelaxedEvaluator& eval, HeuristicKind h,
                        const State& s, const ssp::FsspudeConfig& fsspude, double epsilon,
                        const Deadline& deadline, uint64_t seed);

struct TeacherConfig {
  enum Search { astar, gbfs, lrtdp } search = lrtdp;
  HeuristicKind heuristic = HeuristicKind::hadd;
  double epsilon = 1e-4;
  double timeout = 10.0;  // wall seconds per teacher invocation
  double label_tol = 1e-4;
  ssp::FsspudeConfig fsspude;
  uint64_t seed = 0;
};

struct TeacherVerdict {
  enum Status { ok, timeout, dead_end } status = ok;
  std::vector<int> enabled;    // ascending action ids
  std::vector<double> q;       // per enabled action
  std::vector<uint8_t> label;  // y in {0,1}, per enabled action
};

struct TeacherRollout {
  std::vector<State> states;
  std::vector<int> actions;
  bool reached_goal = false;
  bool truncated = false;  // timeout or step limit
};

// One teacher per ground problem. Verdicts are pure functions of
// (problem, config, state); the cache only saves time.
class Teacher {
 public:
  Teacher(const GroundProblem& gp, TeacherConfig cfg);

  TeacherVerdict q_values(const State& s);
  TeacherRollout rollout(const State& s, Rng& rng, int step_limit);
  void clear_cache();
  long long planner_calls() const { return planner_calls_; }

  const GroundProblem& problem() const { return gp_; }
  const TeacherConfig& config() const { return cfg_; }

 private:
  TeacherVerdict compute(const State& s);
  TeacherVerdict deterministic_verdict(const State& s, const Deadline& deadline);
  TeacherVerdict lrtdp_verdict(const State& s, const Deadline& deadline);
  void attach_labels(TeacherVerdict& v) const;

  const GroundProblem& gp_;
  GroundProblem det_;  // determinisation when gp is probabilistic, else a copy
  RelaxedEvaluator eval_;
  TeacherConfig cfg_;
  std::mutex mu_;
  StateMap<TeacherVerdict> cache_;
  StateSet skip_;                 // timed-out states
  StateMap<double> plan_cost_;    // deterministic teachers: cost-to-go cache
  long long planner_calls_ = 0;
};

std::string verdict_json(const GroundProblem& gp, const State& s, const TeacherVerdict& v);

}  // namespace asnets::teach
