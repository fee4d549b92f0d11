#include "core/ssp/ssp.hpp"

#include <algorithm>
#include <sstream>

namespace asnets::ssp {

bool action_applicable(const GroundAction& a, const State& s) {
  return s.contains_all(a.pre_pos) && !s.intersects(a.pre_neg);
}

std::vector<int> applicable_actions(const GroundProblem& gp, const State& s) {
  std::vector<int> out;
  for (size_t i = 0; i < gp.actions.size(); ++i)
    if (action_applicable(gp.actions[i], s)) out.push_back(static_cast<int>(i));
  return out;
}

State apply_outcome(const GroundProblem& gp, const State& s, int action, int outcome) {
  const GroundAction& a = gp.actions[action];
  if (!action_applicable(a, s))
    fail(ErrKind::inapplicable_action, "action '" + a.name + "' is not applicable");
  const auto& o = a.outcomes[outcome];
  State next = s;
  for (const auto& ce : o.effects) {
    if (!s.contains_all(ce.cond_pos) || s.intersects(ce.cond_neg)) continue;
    for (int d : ce.del) next.reset(d);
  }
  for (const auto& ce : o.effects) {
    if (!s.contains_all(ce.cond_pos) || s.intersects(ce.cond_neg)) continue;
    for (int ad : ce.add) next.set(ad);
  }
  return next;
}

TransitionDistribution successor_distribution(const GroundProblem& gp, const State& s,
                                              int action) {
  const GroundAction& a = gp.actions[action];
  if (!action_applicable(a, s))
    fail(ErrKind::inapplicable_action, "action '" + a.name + "' is not applicable");
  TransitionDistribution dist;
  for (size_t oi = 0; oi < a.outcomes.size(); ++oi) {
    State next = apply_outcome(gp, s, action, static_cast<int>(oi));
    bool merged = false;
    for (auto& [st, p] : dist.entries)
      if (st == next) {
        p += a.outcomes[oi].prob;
        merged = true;
        break;
      }
    if (!merged) dist.entries.emplace_back(std::move(next), a.outcomes[oi].prob);
  }
  return dist;
}

State sample_successor(const GroundProblem& gp, const State& s, int action, Rng& rng) {
  const GroundAction& a = gp.actions[action];
  if (!action_applicable(a, s))
    fail(ErrKind::inapplicable_action, "action '" + a.name + "' is not applicable");
  if (a.outcomes.size() == 1) return apply_outcome(gp, s, action, 0);
  double u = uniform01(rng);
  double acc = 0.0;
  for (size_t oi = 0; oi < a.outcomes.size(); ++oi) {
    acc += a.outcomes[oi].prob;
    if (u < acc || oi + 1 == a.outcomes.size())
      return apply_outcome(gp, s, action, static_cast<int>(oi));
  }
  return s;
}

GroundProblem all_outcomes_determinise(const GroundProblem& gp) {
  GroundProblem det = gp;
  det.actions.clear();
  for (size_t ai = 0; ai < gp.actions.size(); ++ai) {
    const GroundAction& a = gp.actions[ai];
    int counter = 0;
    for (const auto& o : a.outcomes) {
      if (o.noop()) continue;
      GroundAction d = a;
      d.outcomes.clear();
      ppddl::Outcome oo = o;
      oo.prob = 1.0;
      d.outcomes.push_back(std::move(oo));
      d.source = static_cast<int>(ai);
      if (a.outcomes.size() > 1 || a.outcomes[0].noop())
        d.name = a.name + "#o" + std::to_string(counter);
      ++counter;
      det.actions.push_back(std::move(d));
    }
  }
  return det;
}

GroundProblem delete_relax(const GroundProblem& gp_det) {
  GroundProblem rel = gp_det;
  rel.actions.clear();
  for (size_t ai = 0; ai < gp_det.actions.size(); ++ai) {
    const GroundAction& a = gp_det.actions[ai];
    if (a.outcomes.size() != 1)
      fail(ErrKind::invalid_argument, "delete_relax expects a deterministic problem");
    const auto& o = a.outcomes[0];
    // one achiever per conditional branch; base action covers the
    // unconditional part (and preserves the action even when effect-free)
    std::vector<ppddl::CondEffect> branches;
    ppddl::CondEffect base;
    for (const auto& ce : o.effects) {
      if (ce.cond_pos.empty() && ce.cond_neg.empty())
        base.add.insert(base.add.end(), ce.add.begin(), ce.add.end());
      else
        branches.push_back(ce);
    }
    auto emit = [&](const std::vector<int>& extra_pre, const std::vector<int>& add, int tag) {
      GroundAction r = a;
      r.pre_neg.clear();
      r.pre_pos = a.pre_pos;
      r.pre_pos.insert(r.pre_pos.end(), extra_pre.begin(), extra_pre.end());
      std::sort(r.pre_pos.begin(), r.pre_pos.end());
      r.pre_pos.erase(std::unique(r.pre_pos.begin(), r.pre_pos.end()), r.pre_pos.end());
      ppddl::Outcome oo;
      oo.prob = 1.0;
      if (!add.empty()) {
        ppddl::CondEffect ce;
        ce.add = add;
        std::sort(ce.add.begin(), ce.add.end());
        ce.add.erase(std::unique(ce.add.begin(), ce.add.end()), ce.add.end());
        oo.effects.push_back(std::move(ce));
      }
      r.outcomes.clear();
      r.outcomes.push_back(std::move(oo));
      r.source = a.source >= 0 ? a.source : static_cast<int>(ai);
      if (tag > 0) r.name = a.name + "#c" + std::to_string(tag);
      rel.actions.push_back(std::move(r));
    };
    emit({}, base.add, 0);
    int tag = 1;
    for (const auto& ce : branches) emit(ce.cond_pos, ce.add, tag++);
  }
  return rel;
}

std::string state_json(const GroundProblem& gp, const State& s) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (int i = 0; i < gp.nprops(); ++i) {
    if (!s.test(i)) continue;
    if (!first) os << ",";
    first = false;
    os << "\"" << gp.prop_names[i] << "\"";
  }
  os << "]";
  return os.str();
}

State state_from_names(const GroundProblem& gp, const std::vector<std::string>& names) {
  State s(gp.nprops());
  for (const auto& n : names) {
    int id = gp.find_prop(n);
    if (id < 0) fail(ErrKind::invalid_argument, "unknown proposition '" + n + "'");
    s.set(id);
  }
  return s;
}

}  // namespace asnets::ssp
