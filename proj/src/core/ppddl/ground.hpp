#pragma once

#include <map>
#include <memory>

#include "core/ppddl/ast.hpp"
#include "core/util.hpp"

namespace asnets::ppddl {

struct CondEffect {
  std::vector<int> cond_pos, cond_neg;  // empty = unconditional
  std::vector<int> add, del;
};

struct Outcome {
  double prob = 1.0;
  std::vector<CondEffect> effects;
  bool noop() const { return effects.empty(); }
};

struct GroundAction {
  std::string name;  // schema(obj,...)
  int schema = -1;
  std::vector<int> binding;           // object ids
  std::vector<int> pre_pos, pre_neg;  // sorted prop ids
  std::vector<Outcome> outcomes;      // probabilities sum to 1
  double cost = 1.0;
  std::vector<int> slots;  // ground prop per schema slot, k = 0..K-1
  int source = -1;         // determinised problems: index into the source problem
};

struct GroundingReport {
  long long candidates = 0;
  long long kept_actions = 0;
  long long pruned_actions = 0;
  long long props_reachable = 0;
  long long props_kept = 0;
  long long goal_props_unreachable = 0;
};

struct GroundProblem {
  std::string problem_name;
  std::shared_ptr<const DomainDef> domain;
  std::vector<std::string> objects;
  std::vector<int> object_type;
  std::vector<std::string> prop_names;  // lexicographic; index = proposition id
  std::vector<int> prop_predicate;
  std::vector<std::vector<int>> prop_args;
  std::map<std::string, int> prop_id;
  std::vector<GroundAction> actions;  // lexicographic by name
  Bitset s0;
  std::vector<std::pair<double, Bitset>> init_dist;  // singleton unless stochastic init
  std::vector<int> goal;  // sorted prop ids
  GroundingReport report;

  int nprops() const { return static_cast<int>(prop_names.size()); }
  bool deterministic() const;
  bool is_goal(const Bitset& s) const { return s.contains_all(goal); }
  int find_prop(const std::string& name) const;
  int find_action(const std::string& name) const;
  std::string schema_name(int action) const { return domain->schemas[actions[action].schema].name; }
  std::string predicate_name(int prop) const { return domain->predicates[prop_predicate[prop]].name; }
};

struct GroundOptions {
  long long action_cap = 1000000;
};

std::string atom_name(const std::string& pred, const std::vector<std::string>& args);

GroundProblem ground(const DomainDef& domain, const ProblemDef& problem,
                     const GroundOptions& opts = {});

std::string grounding_report_json(const GroundProblem& gp);

}  // namespace asnets::ppddl
