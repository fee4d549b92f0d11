#include <algorithm>
#include <limits>
#include <queue>

#include "core/heur/heuristics.hpp"

namespace asnets::heur {

static constexpr double kInf = std::numeric_limits<double>::infinity();

// Iterated justification-graph cuts. The artificial goal action (pre = goal
// set, add = gamma, cost 0) lives at index acts_.size(); gamma is prop id
// nprops_. The precondition choice function picks the max-cost precondition,
// ties broken by lowest proposition index.
LmCutResult RelaxedEvaluator::lmcut(const State& s) const {
  LmCutResult res;
  const int n_acts = static_cast<int>(acts_.size());
  const int gamma = nprops_;
  const int a_goal = n_acts;

  std::vector<double> act_cost(n_acts + 1);
  for (int i = 0; i < n_acts; ++i) act_cost[i] = acts_[i].cost;
  act_cost[a_goal] = 0.0;

  std::vector<std::vector<int>> add_of(nprops_ + 1);
  for (int i = 0; i < n_acts; ++i)
    for (int p : acts_[i].add) add_of[p].push_back(i);
  add_of[gamma].push_back(a_goal);

  auto pre_of = [&](int ai) -> const std::vector<int>& {
    return ai == a_goal ? goal_ : acts_[ai].pre;
  };
  auto add_list = [&](int ai) -> std::vector<int> {
    if (ai == a_goal) return {gamma};
    return acts_[ai].add;
  };

  double total = 0.0;
  std::vector<double> prop_cost;
  for (int round = 0; round < 100000; ++round) {
    // h-max pass under the current costs
    dijkstra(s, /*additive=*/false, act_cost, prop_cost);
    double hgamma = 0.0;
    for (int g : goal_) hgamma = std::max(hgamma, prop_cost[g]);
    if (hgamma == kInf) return LmCutResult{infinite(), {}};
    if (hgamma <= 0.0) break;

    // pcf per saturated action
    std::vector<int> pcf(n_acts + 1, -1);
    std::vector<std::vector<int>> pcf_is(nprops_ + 1);
    for (int ai = 0; ai <= n_acts; ++ai) {
      const auto& pre = pre_of(ai);
      int best = -1;
      double best_cost = -1.0;
      bool saturated = true;
      for (int p : pre) {
        if (prop_cost[p] == kInf) {
          saturated = false;
          break;
        }
        if (prop_cost[p] > best_cost) {
          best_cost = prop_cost[p];
          best = p;
        }
      }
      if (!saturated) {
        pcf[ai] = -2;  // unreachable action
        continue;
      }
      pcf[ai] = best;  // empty pre -> -1 (virtual source)
      if (best >= 0) pcf_is[best].push_back(ai);
    }

    // goal zone: backward from gamma over zero-cost edges
    std::vector<char> in_gz(nprops_ + 1, 0);
    std::vector<int> stack{gamma};
    in_gz[gamma] = 1;
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int ai : add_of[q]) {
        if (pcf[ai] == -2 || act_cost[ai] > 0) continue;
        int p = pcf[ai];
        if (p >= 0 && !in_gz[p]) {
          in_gz[p] = 1;
          stack.push_back(p);
        }
      }
    }

    // before zone: forward from the state (and the virtual source), cut =
    // edges crossing into the goal zone
    std::vector<char> visited(nprops_ + 1, 0);
    std::vector<int> cut;
    std::vector<char> in_cut(n_acts + 1, 0);
    std::vector<int> dfs;
    auto consider = [&](int ai) {
      for (int q : add_list(ai)) {
        if (in_gz[q]) {
          if (!in_cut[ai]) {
            in_cut[ai] = 1;
            cut.push_back(ai);
          }
        } else if (!visited[q]) {
          visited[q] = 1;
          dfs.push_back(q);
        }
      }
    };
    for (int ai = 0; ai <= n_acts; ++ai)
      if (pcf[ai] == -1) consider(ai);
    for (int p = 0; p < nprops_; ++p)
      if (s.test(p) && !visited[p] && !in_gz[p]) {
        visited[p] = 1;
        dfs.push_back(p);
      }
    while (!dfs.empty()) {
      int p = dfs.back();
      dfs.pop_back();
      for (int ai : pcf_is[p]) consider(ai);
    }

    if (cut.empty())
      fail(ErrKind::invalid_argument, "lmcut: empty cut with positive h-max");
    double m = kInf;
    for (int ai : cut) m = std::min(m, act_cost[ai]);
    total += m;
    Landmark lm;
    std::sort(cut.begin(), cut.end());
    for (int ai : cut) {
      act_cost[ai] -= m;
      if (ai == a_goal) continue;
      lm.relaxed_actions.push_back(ai);
      lm.source_actions.push_back(acts_[ai].source);
    }
    std::sort(lm.source_actions.begin(), lm.source_actions.end());
    lm.source_actions.erase(std::unique(lm.source_actions.begin(), lm.source_actions.end()),
                            lm.source_actions.end());
    res.landmarks.push_back(std::move(lm));
  }

  res.value = finite(total);
  return res;
}

}  // namespace asnets::heur
