#pragma once

#include <array>
#include <memory>

#include "core/ssp/ssp.hpp"

namespace asnets::heur {

using ppddl::GroundProblem;
using ssp::State;

struct HeuristicValue {
  double value = 0.0;
  bool unreachable = false;
  bool operator==(const HeuristicValue& o) const {
    return unreachable == o.unreachable && (unreachable || value == o.value);
  }
};

inline HeuristicValue finite(double v) { return {v, false}; }
inline HeuristicValue infinite() { return {0.0, true}; }

struct Landmark {
  std::vector<int> relaxed_actions;  // achiever ids in the relaxed task
  std::vector<int> source_actions;   // deduplicated source ground-action ids
};

struct LmCutResult {
  HeuristicValue value;
  std::vector<Landmark> landmarks;
};

// Shared machinery for all delete-relaxation heuristics over one
// deterministic problem; conditional branches become separate achievers.
class RelaxedEvaluator {
 public:
  explicit RelaxedEvaluator(const GroundProblem& gp_det);

  HeuristicValue hadd(const State& s) const;
  HeuristicValue hmax(const State& s) const;
  LmCutResult lmcut(const State& s) const;

  const GroundProblem& relaxed() const { return rel_; }

 private:
  struct Act {
    std::vector<int> pre;
    std::vector<int> add;
    double cost;
    int source;
  };

  // best-first fixpoint; combine = 0 for max, 1 for additive costs
  void dijkstra(const State& s, bool additive, const std::vector<double>& act_cost,
                std::vector<double>& prop_cost) const;

  GroundProblem rel_;
  std::vector<Act> acts_;
  std::vector<std::vector<int>> pre_of_;  // prop -> acts with it in pre
  std::vector<int> goal_;
  int nprops_;
};

enum class HeuristicKind { zero, hadd, hmax, lmcut };

HeuristicValue h_zero(const State& s);
HeuristicValue h_add(const GroundProblem& gp_det, const State& s);
HeuristicValue h_max(const GroundProblem& gp_det, const State& s);
LmCutResult lmcut(const GroundProblem& gp_det, const State& s);

// c1: sole member of some landmark; c2: member of a landmark with >= 2
// actions; c3: in no landmark. Attribution is per source ground action.
using LandmarkBits = std::array<uint8_t, 3>;

class LandmarkFeatureExtractor {
 public:
  explicit LandmarkFeatureExtractor(const GroundProblem& gp);
  std::vector<LandmarkBits> compute(const State& s) const;

 private:
  int nactions_;
  std::unique_ptr<RelaxedEvaluator> eval_;
};

std::vector<LandmarkBits> landmark_features(const GroundProblem& gp, const State& s);

}  // namespace asnets::heur
