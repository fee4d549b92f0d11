#include <limits>
#include <queue>

#include "core/heur/heuristics.hpp"

namespace asnets::heur {

static constexpr double kInf = std::numeric_limits<double>::infinity();

void RelaxedEvaluator::dijkstra(const State& s, bool additive,
                                const std::vector<double>& act_cost,
                                std::vector<double>& prop_cost) const {
  prop_cost.assign(nprops_, kInf);
  std::vector<int> missing(acts_.size());
  std::vector<double> pre_sum(acts_.size(), 0.0);  // additive mode
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

  auto reach = [&](int p, double c) {
    if (c < prop_cost[p]) {
      prop_cost[p] = c;
      pq.emplace(c, p);
    }
  };

  auto trigger = [&](int ai, double pre_cost) {
    double c = pre_cost + act_cost[ai];
    for (int add : acts_[ai].add) reach(add, c);
  };

  for (size_t ai = 0; ai < acts_.size(); ++ai) {
    missing[ai] = static_cast<int>(acts_[ai].pre.size());
    if (missing[ai] == 0) trigger(static_cast<int>(ai), 0.0);
  }
  for (int p = 0; p < nprops_; ++p)
    if (s.test(p)) reach(p, 0.0);

  while (!pq.empty()) {
    auto [c, p] = pq.top();
    pq.pop();
    if (c > prop_cost[p]) continue;  // stale
    for (int ai : pre_of_[p]) {
      if (additive) pre_sum[ai] += c;
      if (--missing[ai] == 0) trigger(ai, additive ? pre_sum[ai] : c);
    }
  }
}

HeuristicValue RelaxedEvaluator::hadd(const State& s) const {
  std::vector<double> act_cost(acts_.size());
  for (size_t i = 0; i < acts_.size(); ++i) act_cost[i] = acts_[i].cost;
  std::vector<double> prop_cost;
  dijkstra(s, /*additive=*/true, act_cost, prop_cost);
  double total = 0.0;
  for (int g : goal_) {
    if (prop_cost[g] == kInf) return infinite();
    total += prop_cost[g];
  }
  return finite(total);
}

HeuristicValue RelaxedEvaluator::hmax(const State& s) const {
  std::vector<double> act_cost(acts_.size());
  for (size_t i = 0; i < acts_.size(); ++i) act_cost[i] = acts_[i].cost;
  std::vector<double> prop_cost;
  dijkstra(s, /*additive=*/false, act_cost, prop_cost);
  double best = 0.0;
  for (int g : goal_) {
    if (prop_cost[g] == kInf) return infinite();
    best = std::max(best, prop_cost[g]);
  }
  return finite(best);
}

}  // namespace asnets::heur
