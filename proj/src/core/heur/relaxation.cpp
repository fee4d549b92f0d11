#include "core/heur/heuristics.hpp"

namespace asnets::heur {

RelaxedEvaluator::RelaxedEvaluator(const GroundProblem& gp_det)
    : rel_(ssp::delete_relax(gp_det)), nprops_(gp_det.nprops()) {
  acts_.reserve(rel_.actions.size());
  pre_of_.resize(nprops_);
  for (size_t i = 0; i < rel_.actions.size(); ++i) {
    const auto& a = rel_.actions[i];
    Act act;
    act.pre = a.pre_pos;
    if (!a.outcomes[0].effects.empty()) act.add = a.outcomes[0].effects[0].add;
    act.cost = a.cost;
    act.source = a.source;
    for (int p : act.pre) pre_of_[p].push_back(static_cast<int>(i));
    acts_.push_back(std::move(act));
  }
  goal_ = rel_.goal;
}

HeuristicValue h_zero(const State&) { return finite(0.0); }

HeuristicValue h_add(const GroundProblem& gp_det, const State& s) {
  return RelaxedEvaluator(gp_det).hadd(s);
}
HeuristicValue h_max(const GroundProblem& gp_det, const State& s) {
  return RelaxedEvaluator(gp_det).hmax(s);
}
LmCutResult lmcut(const GroundProblem& gp_det, const State& s) {
  return RelaxedEvaluator(gp_det).lmcut(s);
}

LandmarkFeatureExtractor::LandmarkFeatureExtractor(const GroundProblem& gp)
    : nactions_(static_cast<int>(gp.actions.size())) {
  if (gp.deterministic())
    eval_ = std::make_unique<RelaxedEvaluator>(gp);
  else
    eval_ = std::make_unique<RelaxedEvaluator>(ssp::all_outcomes_determinise(gp));
}

std::vector<LandmarkBits> LandmarkFeatureExtractor::compute(const State& s) const {
  std::vector<LandmarkBits> out(nactions_, LandmarkBits{0, 0, 1});
  LmCutResult res = eval_->lmcut(s);
  for (const auto& lm : res.landmarks) {
    for (int src : lm.source_actions) {
      out[src][2] = 0;
      if (lm.source_actions.size() == 1)
        out[src][0] = 1;
      else
        out[src][1] = 1;
    }
  }
  return out;
}

std::vector<LandmarkBits> landmark_features(const GroundProblem& gp, const State& s) {
  return LandmarkFeatureExtractor(gp).compute(s);
}

}  // namespace asnets::heur
