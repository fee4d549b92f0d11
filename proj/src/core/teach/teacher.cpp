#include <sstream>

#include "core/teach/teacher.hpp"

namespace asnets::teach {

Teacher::Teacher(const GroundProblem& gp, TeacherConfig cfg)
    : gp_(gp),
      det_(gp.deterministic() ? gp : ssp::all_outcomes_determinise(gp)),
      eval_(det_),
      cfg_(cfg) {
  if (cfg_.search != TeacherConfig::lrtdp && !gp.deterministic())
    fail(ErrKind::invalid_argument,
         "deterministic teacher planners require a deterministic problem");
}

void Teacher::clear_cache() {
  std::lock_guard<std::mutex> lock(mu_);
  cache_.clear();
  skip_.clear();
  plan_cost_.clear();
}

void Teacher::attach_labels(TeacherVerdict& v) const {
  double best = 1e300;
  for (double q : v.q) best = std::min(best, q);
  v.label.assign(v.q.size(), 0);
  bool any = false;
  for (size_t i = 0; i < v.q.size(); ++i)
    if (v.q[i] <= best + cfg_.label_tol) {
      v.label[i] = 1;
      any = true;
    }
  if (best >= cfg_.fsspude.dead_end_penalty - 1e-9) {
    v.status = TeacherVerdict::dead_end;
  } else if (!any) {
    fail(ErrKind::teacher_unavailable, "no optimal action labeled");
  }
}

TeacherVerdict Teacher::deterministic_verdict(const State& s, const Deadline& deadline) {
  TeacherVerdict v;
  v.enabled = ssp::applicable_actions(gp_, s);
  const double D = cfg_.fsspude.dead_end_penalty;
  for (int a : v.enabled) {
    State next = ssp::apply_outcome(gp_, s, a, 0);
    double togo;
    if (gp_.is_goal(next)) {
      togo = 0.0;
    } else {
      auto it = plan_cost_.find(next);
      if (it != plan_cost_.end()) {
        togo = it->second;
      } else {
        ++planner_calls_;
        PlanResult pr = cfg_.search == TeacherConfig::astar
                            ? astar_plan(gp_, eval_, cfg_.heuristic, next, deadline)
                            : gbfs_plan(gp_, eval_, cfg_.heuristic, next, deadline);
        if (pr.status == PlanResult::timeout) {
          v.status = TeacherVerdict::timeout;
          return v;
        }
        togo = pr.status == PlanResult::found ? pr.cost : D;
        plan_cost_.emplace(next, togo);
      }
    }
    v.q.push_back(std::min(gp_.actions[a].cost + togo, D));
  }
  attach_labels(v);
  return v;
}

TeacherVerdict Teacher::lrtdp_verdict(const State& s, const Deadline& deadline) {
  TeacherVerdict v;
  v.enabled = ssp::applicable_actions(gp_, s);
  ++planner_calls_;
  LrtdpSession session(gp_, eval_, cfg_.heuristic, cfg_.fsspude, cfg_.epsilon, deadline,
                       mix_seed(cfg_.seed, s.hash()));
  session.solve(s);
  if (session.timed_out()) {
    v.status = TeacherVerdict::timeout;
    return v;
  }
  const double D = cfg_.fsspude.dead_end_penalty;
  for (int a : v.enabled) {
    double q = gp_.actions[a].cost;
    for (const auto& [next, p] : ssp::successor_distribution(gp_, s, a).entries) {
      if (!gp_.is_goal(next) && !session.is_labeled(next)) session.solve(next);
      if (session.timed_out()) {
        v.status = TeacherVerdict::timeout;
        return v;
      }
      q += p * (gp_.is_goal(next) ? 0.0 : session.value_of(next));
    }
    v.q.push_back(std::min(q, D));
  }
  attach_labels(v);
  return v;
}

TeacherVerdict Teacher::compute(const State& s) {
  Deadline deadline(cfg_.timeout);
  if (cfg_.search == TeacherConfig::lrtdp) return lrtdp_verdict(s, deadline);
  return deterministic_verdict(s, deadline);
}

TeacherVerdict Teacher::q_values(const State& s) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    if (skip_.count(s)) {
      TeacherVerdict v;
      v.status = TeacherVerdict::timeout;
      return v;
    }
  }
  TeacherVerdict v = compute(s);
  std::lock_guard<std::mutex> lock(mu_);
  if (v.status == TeacherVerdict::timeout)
    skip_.insert(s);  // never invoke the planner on this state again
  else
    cache_.emplace(s, v);
  return v;
}

TeacherRollout Teacher::rollout(const State& s, Rng& rng, int step_limit) {
  TeacherRollout out;
  State cur = s;
  for (int step = 0; step <= step_limit; ++step) {
    out.states.push_back(cur);
    if (gp_.is_goal(cur)) {
      out.reached_goal = true;
      return out;
    }
    if (step == step_limit) break;
    TeacherVerdict v = q_values(cur);
    if (v.status == TeacherVerdict::timeout) {
      out.truncated = true;
      return out;
    }
    if (v.status == TeacherVerdict::dead_end || v.enabled.empty()) return out;
    int chosen = -1;
    for (size_t i = 0; i < v.enabled.size(); ++i)
      if (v.label[i]) {
        chosen = v.enabled[i];
        break;
      }
    if (chosen < 0) return out;
    out.actions.push_back(chosen);
    cur = ssp::sample_successor(gp_, cur, chosen, rng);
  }
  out.truncated = true;
  return out;
}

std::string verdict_json(const GroundProblem& gp, const State& s, const TeacherVerdict& v) {
  std::ostringstream os;
  os << "{\"state\":" << ssp::state_json(gp, s) << ",\"status\":\""
     << (v.status == TeacherVerdict::ok
             ? "ok"
             : v.status == TeacherVerdict::timeout ? "timeout" : "dead_end")
     << "\",\"actions\":[";
  for (size_t i = 0; i < v.enabled.size(); ++i) {
    if (i) os << ",";
    os << "{\"action\":\"" << gp.actions[v.enabled[i]].name << "\"";
    if (i < v.q.size()) os << ",\"q\":" << v.q[i];
    if (i < v.label.size()) os << ",\"label\":" << static_cast<int>(v.label[i]);
    os << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace asnets::teach
