#pragma once

#include <unordered_map>
#include <unordered_set>

#include "core/ssp/ssp.hpp"

namespace asnets::ssp {

using StateSet = std::unordered_set<State, BitsetHash>;
template <typename T>
using StateMap = std::unordered_map<State, T, BitsetHash>;

// BFS over all outcomes from s0. Goal states are absorbing.
StateSet enumerate_reachable_states(const GroundProblem& gp, size_t cap);

struct ValueTable {
  StateMap<double> value;
  StateMap<int> greedy;  // -1 for terminal / dead end
};

// Exact Gauss-Seidel value iteration over the reachable space, values capped
// at the dead-end penalty; exact oracle for the search-based solvers.
ValueTable value_iteration(const GroundProblem& gp, const FsspudeConfig& cfg, double tol,
                           size_t cap = 100000);

// Q(s,a) under a converged value table.
double q_value(const GroundProblem& gp, const ValueTable& vt, const State& s, int action,
               double dead_end_penalty);

// Minimum total cost to reach the goal from every enumerable state of a
// deterministic problem (multi-source Dijkstra on reversed edges);
// missing entries are unreachable.
StateMap<double> dijkstra_cost_to_go(const GroundProblem& gp_det, size_t cap);

}  // namespace asnets::ssp
