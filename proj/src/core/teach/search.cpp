#include <queue>

#include "core/teach/teacher.hpp"

namespace asnets::teach {

namespace {

double eval_h(const RelaxedEvaluator& eval, HeuristicKind h, const State& s, bool& dead) {
  heur::HeuristicValue v;
  switch (h) {
    case HeuristicKind::zero:
      v = heur::finite(0.0);
      break;
    case HeuristicKind::hadd:
      v = eval.hadd(s);
      break;
    case HeuristicKind::hmax:
      v = eval.hmax(s);
      break;
    case HeuristicKind::lmcut:
      v = eval.lmcut(s).value;
      break;
  }
  dead = v.unreachable;
  return v.unreachable ? 0.0 : v.value;
}

PlanResult best_first(const GroundProblem& gp, const RelaxedEvaluator& eval, HeuristicKind h,
                      const State& start, const Deadline& deadline, bool use_g, bool reopen) {
  struct Node {
    State state;
    int parent = -1;
    int action = -1;
    double g = 0.0;
  };
  struct Entry {
    double f, tie_h;
    long long seq;
    int node;
    bool operator>(const Entry& o) const {
      if (f != o.f) return f > o.f;
      if (tie_h != o.tie_h) return tie_h > o.tie_h;
      return seq > o.seq;
    }
  };

  std::vector<Node> nodes;
  StateMap<double> best_g;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  long long seq = 0;

  auto push = [&](State s, int parent, int action, double g) {
    bool dead = false;
    double hv = eval_h(eval, h, s, dead);
    if (dead) return;
    auto it = best_g.find(s);
    if (it != best_g.end()) {
      if (!reopen || g >= it->second - 1e-12) return;
      it->second = g;
    } else {
      best_g.emplace(s, g);
    }
    nodes.push_back(Node{std::move(s), parent, action, g});
    open.push(Entry{(use_g ? g : 0.0) + hv, hv, seq++, static_cast<int>(nodes.size()) - 1});
  };

  push(start, -1, -1, 0.0);
  long long expansions = 0;
  while (!open.empty()) {
    if ((++expansions & 0xff) == 0 && deadline.expired()) return PlanResult{PlanResult::timeout};
    Entry e = open.top();
    open.pop();
    const Node n = nodes[e.node];
    auto git = best_g.find(n.state);
    if (git != best_g.end() && n.g > git->second + 1e-12) continue;  // stale
    if (gp.is_goal(n.state)) {
      PlanResult res;
      res.status = PlanResult::found;
      res.cost = n.g;
      for (int i = e.node; nodes[i].action >= 0; i = nodes[i].parent)
        res.plan.push_back(nodes[i].action);
      std::reverse(res.plan.begin(), res.plan.end());
      return res;
    }
    for (int a : ssp::applicable_actions(gp, n.state)) {
      State next = ssp::apply_outcome(gp, n.state, a, 0);
      push(std::move(next), e.node, a, n.g + gp.actions[a].cost);
    }
  }
  return PlanResult{PlanResult::unsolvable};
}

}  // namespace

PlanResult astar_plan(const GroundProblem& gp_det, const RelaxedEvaluator& eval,
                      HeuristicKind h, const State& s, const Deadline& deadline) {
  if (!gp_det.deterministic())
    fail(ErrKind::invalid_argument, "astar requires a deterministic problem");
  return best_first(gp_det, eval, h, s, deadline, /*use_g=*/true, /*reopen=*/true);
}

PlanResult gbfs_plan(const GroundProblem& gp_det, const RelaxedEvaluator& eval,
                     HeuristicKind h, const State& s, const Deadline& deadline) {
  if (!gp_det.deterministic())
    fail(ErrKind::invalid_argument, "gbfs requires a deterministic problem");
  PlanResult res = best_first(gp_det, eval, h, s, deadline, /*use_g=*/false, /*reopen=*/false);
  if (res.status == PlanResult::found) {
    // recompute the true cost; g played no role in the ordering
    res.cost = 0.0;
    State cur = s;
    for (int a : res.plan) {
      res.cost += gp_det.actions[a].cost;
      cur = ssp::apply_outcome(gp_det, cur, a, 0);
    }
  }
  return res;
}

}  // namespace asnets::teach
