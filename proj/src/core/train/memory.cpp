#include "core/train/memory.hpp"

#include "core/ppddl/parser.hpp"

namespace asnets::train {

ProblemContext::ProblemContext(std::shared_ptr<GroundProblem> problem, int L, int d_h,
                               rel::Flags flags)
    : gp(std::move(problem)),
      topo(rel::build_topology(*gp, L, d_h, flags)),
      lm_mu(std::make_unique<std::mutex>()) {
  if (flags.landmarks) lm_extractor = std::make_unique<heur::LandmarkFeatureExtractor>(*gp);
}

const std::vector<LandmarkBits>& ProblemContext::landmarks(const State& s) {
  {
    std::lock_guard<std::mutex> lock(*lm_mu);
    auto it = lm_cache.find(s);
    if (it != lm_cache.end()) return it->second;
  }
  std::vector<LandmarkBits> bits = lm_extractor->compute(s);
  std::lock_guard<std::mutex> lock(*lm_mu);
  return lm_cache.emplace(s, std::move(bits)).first->second;
}

std::vector<uint8_t> ProblemContext::enabled_mask(const State& s) const {
  std::vector<uint8_t> mask(gp->actions.size(), 0);
  for (int a : ssp::applicable_actions(*gp, s)) mask[a] = 1;
  return mask;
}

ProblemContext make_context(const std::string& domain_text, const std::string& problem_text,
                            int L, int d_h, rel::Flags flags) {
  ppddl::DomainDef dom = ppddl::parse_domain(domain_text);
  ppddl::ProblemDef prob = ppddl::parse_problem(problem_text, dom);
  auto gp = std::make_shared<GroundProblem>(ppddl::ground(dom, prob));
  return ProblemContext(std::move(gp), L, d_h, flags);
}

bool StateMemory::add(const State& s, const std::vector<int>& counts,
                      const teach::TeacherVerdict& v, int nactions) {
  if (v.status != teach::TeacherVerdict::ok) return false;
  auto& variants = seen_[s];
  if (!variants.insert(counts).second) return false;
  MemoryEntry e;
  e.state = s;
  e.counts = counts;
  e.enabled.assign(nactions, 0);
  e.y.assign(nactions, 0);
  for (size_t i = 0; i < v.enabled.size(); ++i) {
    e.enabled[v.enabled[i]] = 1;
    e.y[v.enabled[i]] = v.label[i];
  }
  e.q = v.q;
  entries_.push_back(std::move(e));
  return true;
}

}  // namespace asnets::train
