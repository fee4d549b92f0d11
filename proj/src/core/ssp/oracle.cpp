#include "core/ssp/oracle.hpp"

#include <deque>
#include <queue>

namespace asnets::ssp {

StateSet enumerate_reachable_states(const GroundProblem& gp, size_t cap) {
  StateSet seen;
  std::deque<State> frontier;
  seen.insert(gp.s0);
  frontier.push_back(gp.s0);
  for (const auto& [p, s] : gp.init_dist)
    if (seen.insert(s).second) frontier.push_back(s);
  while (!frontier.empty()) {
    State s = std::move(frontier.front());
    frontier.pop_front();
    if (gp.is_goal(s)) continue;  // absorbing
    for (int a : applicable_actions(gp, s))
      for (size_t oi = 0; oi < gp.actions[a].outcomes.size(); ++oi) {
        State next = apply_outcome(gp, s, a, static_cast<int>(oi));
        if (seen.insert(next).second) {
          if (seen.size() > cap)
            fail(ErrKind::cap_exceeded,
                 "reachable state count exceeds cap of " + std::to_string(cap));
          frontier.push_back(std::move(next));
        }
      }
  }
  return seen;
}

double q_value(const GroundProblem& gp, const ValueTable& vt, const State& s, int action,
               double dead_end_penalty) {
  double q = gp.actions[action].cost;
  for (const auto& [next, p] : successor_distribution(gp, s, action).entries) {
    auto it = vt.value.find(next);
    q += p * (it == vt.value.end() ? dead_end_penalty : it->second);
  }
  return std::min(q, dead_end_penalty);
}

ValueTable value_iteration(const GroundProblem& gp, const FsspudeConfig& cfg, double tol,
                           size_t cap) {
  const double D = cfg.dead_end_penalty;
  StateSet states = enumerate_reachable_states(gp, cap);
  std::vector<State> order(states.begin(), states.end());
  std::sort(order.begin(), order.end());  // deterministic sweep order

  ValueTable vt;
  for (const auto& s : order) vt.value[s] = gp.is_goal(s) ? 0.0 : D;

  double residual = tol + 1;
  while (residual >= tol) {
    residual = 0.0;
    for (const auto& s : order) {
      if (gp.is_goal(s)) continue;
      double best = D;
      for (int a : applicable_actions(gp, s)) {
        double q = gp.actions[a].cost;
        for (const auto& [next, p] : successor_distribution(gp, s, a).entries)
          q += p * vt.value[next];
        best = std::min(best, q);
      }
      best = std::min(best, D);
      residual = std::max(residual, std::abs(best - vt.value[s]));
      vt.value[s] = best;
    }
  }

  for (const auto& s : order) {
    if (gp.is_goal(s)) {
      vt.greedy[s] = -1;
      continue;
    }
    int best_a = -1;
    double best_q = D;
    for (int a : applicable_actions(gp, s)) {
      double q = gp.actions[a].cost;
      for (const auto& [next, p] : successor_distribution(gp, s, a).entries)
        q += p * vt.value[next];
      if (q < best_q - 1e-12) {
        best_q = q;
        best_a = a;
      }
    }
    vt.greedy[s] = best_a;
  }
  return vt;
}

StateMap<double> dijkstra_cost_to_go(const GroundProblem& gp_det, size_t cap) {
  StateSet states = enumerate_reachable_states(gp_det, cap);
  // forward edges, then relax backwards from goal states
  StateMap<std::vector<std::pair<State, double>>> rev;  // succ -> [(pred, cost)]
  for (const auto& s : states) {
    if (gp_det.is_goal(s)) continue;
    for (int a : applicable_actions(gp_det, s)) {
      State next = apply_outcome(gp_det, s, a, 0);
      rev[next].emplace_back(s, gp_det.actions[a].cost);
    }
  }
  StateMap<double> dist;
  using Item = std::pair<double, State>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (const auto& s : states)
    if (gp_det.is_goal(s)) {
      dist[s] = 0.0;
      pq.emplace(0.0, s);
    }
  while (!pq.empty()) {
    auto [d, s] = pq.top();
    pq.pop();
    auto it = dist.find(s);
    if (it != dist.end() && d > it->second + 1e-12) continue;
    auto rit = rev.find(s);
    if (rit == rev.end()) continue;
    for (const auto& [pred, c] : rit->second) {
      double nd = d + c;
      auto pit = dist.find(pred);
      if (pit == dist.end() || nd < pit->second - 1e-12) {
        dist[pred] = nd;
        pq.emplace(nd, pred);
      }
    }
  }
  return dist;
}

}  // namespace asnets::ssp
