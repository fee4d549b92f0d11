#pragma once

#include <mutex>
#include <set>

#include "core/net/loss.hpp"
#include "core/teach/teacher.hpp"

namespace asnets::train {

using net::LandmarkBits;
using ppddl::GroundProblem;
using ssp::State;

// Everything needed to run a network on one ground problem; the landmark
// bits per state are cached since LM-cut is by far the slowest feature.
struct ProblemContext {
  std::shared_ptr<GroundProblem> gp;
  rel::Topology topo;
  std::unique_ptr<heur::LandmarkFeatureExtractor> lm_extractor;
  ssp::StateMap<std::vector<LandmarkBits>> lm_cache;
  std::unique_ptr<std::mutex> lm_mu;  // parallel rollouts share the cache

  ProblemContext(std::shared_ptr<GroundProblem> problem, int L, int d_h, rel::Flags flags);
  ProblemContext(ProblemContext&&) = default;

  const std::vector<LandmarkBits>& landmarks(const State& s);
  std::vector<uint8_t> enabled_mask(const State& s) const;
};

ProblemContext make_context(const std::string& domain_text, const std::string& problem_text,
                            int L, int d_h, rel::Flags flags);

// Stored exploration data: features snapshot + teacher labels. Only states
// with an ok teacher verdict are stored; (state, counts) pairs dedupe.
struct MemoryEntry {
  State state;
  std::vector<int> counts;
  std::vector<uint8_t> enabled;
  std::vector<uint8_t> y;  // per action, disabled = 0
  std::vector<double> q;   // per enabled action of the verdict
};

class StateMemory {
 public:
  bool add(const State& s, const std::vector<int>& counts, const teach::TeacherVerdict& v,
           int nactions);
  const std::vector<MemoryEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  std::vector<MemoryEntry> entries_;
  ssp::StateMap<std::set<std::vector<int>>> seen_;
};

}  // namespace asnets::train
