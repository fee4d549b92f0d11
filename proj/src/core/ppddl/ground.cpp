#include "core/ppddl/ground.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace asnets::ppddl {

bool GroundProblem::deterministic() const {
  for (const auto& a : actions)
    if (a.outcomes.size() != 1) return false;
  return true;
}

int GroundProblem::find_prop(const std::string& name) const {
  auto it = prop_id.find(name);
  return it == prop_id.end() ? -1 : it->second;
}

int GroundProblem::find_action(const std::string& name) const {
  for (size_t i = 0; i < actions.size(); ++i)
    if (actions[i].name == name) return static_cast<int>(i);
  return -1;
}

std::string atom_name(const std::string& pred, const std::vector<std::string>& args) {
  std::string out = pred + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  out += ")";
  return out;
}

namespace {

// Pre-index working forms; prop ids here are intern-table ids, remapped at the end.
struct CandEffect {
  std::vector<int> cond_pos, cond_neg;
  std::vector<int> add, del;
};
struct CandOutcome {
  Rational prob;
  std::vector<CandEffect> effects;
};
struct Candidate {
  std::string name;
  int schema;
  std::vector<int> binding;
  std::vector<int> pre_pos, pre_neg;
  std::vector<CandOutcome> outcomes;
  std::vector<int> slots;
};

class Grounder {
 public:
  Grounder(const DomainDef& dom, const ProblemDef& prob, const GroundOptions& opts)
      : dom_(dom), prob_(prob), opts_(opts) {}

  GroundProblem run() {
    build_objects();
    for (size_t si = 0; si < dom_.schemas.size(); ++si) enumerate_schema(static_cast<int>(si));
    reachability();
    return assemble();
  }

 private:
  const DomainDef& dom_;
  const ProblemDef& prob_;
  const GroundOptions& opts_;

  std::vector<std::string> objects_;
  std::vector<int> object_type_;
  std::map<std::string, int> object_id_;

  std::map<std::string, int> intern_;  // ground atom name -> temp id
  std::vector<std::string> atom_names_;
  std::vector<int> atom_pred_;
  std::vector<std::vector<int>> atom_args_;
  std::vector<Candidate> candidates_;
  std::vector<char> reachable_;  // per temp atom id
  std::vector<char> applicable_;

  int intern(int pred, const std::vector<int>& args) {
    std::vector<std::string> arg_names;
    arg_names.reserve(args.size());
    for (int a : args) arg_names.push_back(objects_[a]);
    std::string name = atom_name(dom_.predicates[pred].name, arg_names);
    auto it = intern_.find(name);
    if (it != intern_.end()) return it->second;
    int id = static_cast<int>(atom_names_.size());
    intern_[name] = id;
    atom_names_.push_back(name);
    atom_pred_.push_back(pred);
    atom_args_.push_back(args);
    return id;
  }

  void build_objects() {
    auto add = [&](const std::string& n, int t) {
      if (object_id_.count(n))
        fail(ErrKind::invalid_argument, "duplicate object name '" + n + "'");
      object_id_[n] = static_cast<int>(objects_.size());
      objects_.push_back(n);
      object_type_.push_back(t);
    };
    for (const auto& [n, t] : dom_.constants) add(n, t);
    for (const auto& [n, t] : prob_.objects) add(n, t);
  }

  int ground_term(const Term& t, const std::vector<int>& binding) const {
    if (t.is_var()) return binding[t.var];
    auto it = object_id_.find(t.constant);
    if (it == object_id_.end())
      fail(ErrKind::type_mismatch, "unknown constant '" + t.constant + "'");
    return it->second;
  }

  int ground_atom_id(const Atom& a, const std::vector<int>& binding) {
    std::vector<int> args;
    args.reserve(a.args.size());
    for (const auto& t : a.args) args.push_back(ground_term(t, binding));
    return intern(a.predicate, args);
  }

  // Normalises a formula into positive/negative literal sets under a binding.
  // Returns false if the formula is statically unsatisfiable for this binding.
  bool normalize(const Formula& f, bool positive, const std::vector<int>& binding,
                 std::vector<int>& pos, std::vector<int>& neg) {
    switch (f.kind) {
      case Formula::True:
        return positive;  // (not (and)) can never hold
      case Formula::Lit: {
        if (f.atom.predicate < 0) {  // builtin equality, resolved statically
          int a = ground_term(f.atom.args[0], binding);
          int b = ground_term(f.atom.args[1], binding);
          return positive ? a == b : a != b;
        }
        int id = ground_atom_id(f.atom, binding);
        (positive ? pos : neg).push_back(id);
        return true;
      }
      case Formula::Not:
        return normalize(f.children[0], !positive, binding, pos, neg);
      case Formula::And:
        if (!positive)
          fail(ErrKind::unsupported_feature,
               "unsupported feature: disjunctive-precondition (negated conjunction)");
        for (const auto& c : f.children)
          if (!normalize(c, true, binding, pos, neg)) return false;
        return true;
      case Formula::Or:
        if (positive)
          fail(ErrKind::unsupported_feature, "unsupported feature: disjunctive-precondition");
        for (const auto& c : f.children)
          if (!normalize(c, false, binding, pos, neg)) return false;
        return true;
    }
    return true;
  }

  static void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  // Flattens an effect tree into alternative outcomes, each a list of
  // conditional effects. Probabilistic nodes summing below one gain an
  // implicit no-op branch with the residual probability.
  std::vector<CandOutcome> flatten(const Effect& e, const std::vector<int>& binding) {
    std::vector<CandOutcome> one{CandOutcome{Rational(1, 1), {}}};
    switch (e.kind) {
      case Effect::Noop:
        return one;
      case Effect::Add:
      case Effect::Del: {
        CandEffect ce;
        (e.kind == Effect::Add ? ce.add : ce.del).push_back(ground_atom_id(e.atom, binding));
        one[0].effects.push_back(std::move(ce));
        return one;
      }
      case Effect::Conj: {
        std::vector<CandOutcome> acc = one;
        for (const auto& child : e.children) {
          std::vector<CandOutcome> sub = flatten(child, binding);
          std::vector<CandOutcome> next;
          for (const auto& a : acc)
            for (const auto& b : sub) {
              CandOutcome merged;
              merged.prob = a.prob * b.prob;
              merged.effects = a.effects;
              merged.effects.insert(merged.effects.end(), b.effects.begin(), b.effects.end());
              next.push_back(std::move(merged));
            }
          acc = std::move(next);
          if (acc.size() > 4096)
            fail(ErrKind::cap_exceeded, "effect tree expands to too many outcomes");
        }
        return acc;
      }
      case Effect::Prob: {
        std::vector<CandOutcome> out;
        Rational total(0, 1);
        for (const auto& [p, sub] : e.branches) {
          total = total + p;
          for (const auto& o : flatten(sub, binding))
            out.push_back(CandOutcome{p * o.prob, o.effects});
        }
        if (total < Rational(1, 1))
          out.push_back(CandOutcome{Rational(1, 1) - total, {}});
        return out;
      }
      case Effect::When: {
        std::vector<int> cpos, cneg;
        if (!normalize(e.condition, true, binding, cpos, cneg)) return one;  // branch never fires
        sort_unique(cpos);
        sort_unique(cneg);
        for (int p : cpos)
          if (std::binary_search(cneg.begin(), cneg.end(), p)) return one;
        std::vector<CandOutcome> out = flatten(e.children[0], binding);
        for (auto& o : out)
          for (auto& ce : o.effects) {
            ce.cond_pos.insert(ce.cond_pos.end(), cpos.begin(), cpos.end());
            ce.cond_neg.insert(ce.cond_neg.end(), cneg.begin(), cneg.end());
          }
        return out;
      }
    }
    return one;
  }

  void normalize_outcomes(std::vector<CandOutcome>& outcomes) {
    for (auto& o : outcomes) {
      // merge conditional effects with identical conditions
      std::vector<CandEffect> merged;
      for (auto& ce : o.effects) {
        sort_unique(ce.cond_pos);
        sort_unique(ce.cond_neg);
        sort_unique(ce.add);
        sort_unique(ce.del);
        // delete-then-add: an atom both deleted and added ends true
        std::vector<int> del2;
        for (int d : ce.del)
          if (!std::binary_search(ce.add.begin(), ce.add.end(), d)) del2.push_back(d);
        ce.del = std::move(del2);
        bool found = false;
        for (auto& m : merged)
          if (m.cond_pos == ce.cond_pos && m.cond_neg == ce.cond_neg) {
            m.add.insert(m.add.end(), ce.add.begin(), ce.add.end());
            m.del.insert(m.del.end(), ce.del.begin(), ce.del.end());
            found = true;
            break;
          }
        if (!found) merged.push_back(std::move(ce));
      }
      for (auto& m : merged) {
        sort_unique(m.add);
        sort_unique(m.del);
        std::vector<int> del2;
        for (int d : m.del)
          if (!std::binary_search(m.add.begin(), m.add.end(), d)) del2.push_back(d);
        m.del = std::move(del2);
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(),
                                  [](const CandEffect& ce) {
                                    return ce.add.empty() && ce.del.empty();
                                  }),
                   merged.end());
      o.effects = std::move(merged);
    }
    // merge structurally identical outcomes
    std::vector<CandOutcome> out;
    for (auto& o : outcomes) {
      bool found = false;
      for (auto& m : out) {
        bool same = m.effects.size() == o.effects.size();
        for (size_t i = 0; same && i < m.effects.size(); ++i)
          same = m.effects[i].cond_pos == o.effects[i].cond_pos &&
                 m.effects[i].cond_neg == o.effects[i].cond_neg &&
                 m.effects[i].add == o.effects[i].add && m.effects[i].del == o.effects[i].del;
        if (same) {
          m.prob = m.prob + o.prob;
          found = true;
          break;
        }
      }
      if (!found) out.push_back(std::move(o));
    }
    outcomes = std::move(out);
  }

  void enumerate_schema(int si) {
    const ActionSchema& schema = dom_.schemas[si];
    int nparams = static_cast<int>(schema.param_types.size());
    std::vector<std::vector<int>> choices(nparams);
    for (int p = 0; p < nparams; ++p)
      for (size_t o = 0; o < objects_.size(); ++o)
        if (dom_.types.is_subtype(object_type_[o], schema.param_types[p]))
          choices[p].push_back(static_cast<int>(o));
    std::vector<int> binding(nparams, 0);
    std::vector<int> idx(nparams, 0);
    auto lifted_slots = unique_lifted_propositions(schema);
    while (true) {
      for (int p = 0; p < nparams; ++p) {
        if (choices[p].empty()) return;  // no well-typed binding at all
        binding[p] = choices[p][idx[p]];
      }
      make_candidate(si, schema, binding, lifted_slots);
      int p = nparams - 1;
      while (p >= 0 && ++idx[p] == static_cast<int>(choices[p].size())) idx[p--] = 0;
      if (p < 0) break;
      if (nparams == 0) break;
    }
  }

  void make_candidate(int si, const ActionSchema& schema, const std::vector<int>& binding,
                      const std::vector<Atom>& lifted_slots) {
    if (static_cast<long long>(candidates_.size()) >= opts_.action_cap)
      fail(ErrKind::grounding_explosion,
           "ground action count exceeds cap of " + std::to_string(opts_.action_cap));
    Candidate c;
    c.schema = si;
    c.binding = binding;
    std::vector<std::string> arg_names;
    for (int b : binding) arg_names.push_back(objects_[b]);
    c.name = atom_name(schema.name, arg_names);
    if (!normalize(schema.precondition, true, binding, c.pre_pos, c.pre_neg)) return;
    sort_unique(c.pre_pos);
    sort_unique(c.pre_neg);
    for (int p : c.pre_pos)
      if (std::binary_search(c.pre_neg.begin(), c.pre_neg.end(), p)) return;  // contradiction
    c.outcomes = flatten(schema.effect, binding);
    normalize_outcomes(c.outcomes);
    for (const auto& a : lifted_slots) c.slots.push_back(ground_atom_id(a, binding));
    candidates_.push_back(std::move(c));
  }

  void reachability() {
    reachable_.assign(atom_names_.size(), 0);
    applicable_.assign(candidates_.size(), 0);
    auto mark_init = [&](const std::vector<GroundAtom>& atoms) {
      for (const auto& g : atoms) {
        std::vector<int> args;
        for (const auto& a : g.args) args.push_back(object_id_.at(a));
        int id = intern(g.predicate, args);
        if (id >= static_cast<int>(reachable_.size())) reachable_.resize(id + 1, 0);
        reachable_[id] = 1;
      }
    };
    mark_init(prob_.init);
    for (const auto& [p, atoms] : prob_.stochastic_init) mark_init(atoms);
    reachable_.resize(atom_names_.size(), 0);

    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ci = 0; ci < candidates_.size(); ++ci) {
        const Candidate& c = candidates_[ci];
        if (!applicable_[ci]) {
          bool ok = true;
          for (int p : c.pre_pos)
            if (!reachable_[p]) {
              ok = false;
              break;
            }
          if (!ok) continue;
          applicable_[ci] = 1;
          changed = true;
        }
        for (const auto& o : c.outcomes)
          for (const auto& ce : o.effects) {
            bool fire = true;
            for (int p : ce.cond_pos)
              if (!reachable_[p]) {
                fire = false;
                break;
              }
            if (!fire) continue;
            for (int a : ce.add)
              if (!reachable_[a]) {
                reachable_[a] = 1;
                changed = true;
              }
          }
      }
    }
  }

  GroundProblem assemble() {
    GroundProblem gp;
    gp.problem_name = prob_.name;
    gp.domain = std::make_shared<DomainDef>(dom_);
    gp.objects = objects_;
    gp.object_type = object_type_;

    // kept props: reachable + goal + anything a kept action mentions
    std::vector<char> keep(atom_names_.size(), 0);
    for (size_t i = 0; i < atom_names_.size(); ++i) keep[i] = reachable_[i];
    std::vector<int> goal_ids;
    for (const auto& g : prob_.goal) {
      std::vector<int> args;
      for (const auto& a : g.args) args.push_back(object_id_.at(a));
      int id = intern(g.predicate, args);
      keep.resize(atom_names_.size(), 0);
      keep[id] = 1;
      goal_ids.push_back(id);
    }
    reachable_.resize(atom_names_.size(), 0);
    for (size_t ci = 0; ci < candidates_.size(); ++ci) {
      if (!applicable_[ci]) continue;
      const Candidate& c = candidates_[ci];
      auto mark = [&](const std::vector<int>& v) {
        for (int p : v) keep[p] = 1;
      };
      mark(c.pre_pos);
      mark(c.pre_neg);
      mark(c.slots);
      for (const auto& o : c.outcomes)
        for (const auto& ce : o.effects) {
          mark(ce.cond_pos);
          mark(ce.cond_neg);
          mark(ce.add);
          mark(ce.del);
        }
    }

    // dense ids, lexicographic by name
    std::vector<int> kept_ids;
    for (size_t i = 0; i < atom_names_.size(); ++i)
      if (keep[i]) kept_ids.push_back(static_cast<int>(i));
    std::sort(kept_ids.begin(), kept_ids.end(), [&](int a, int b) {
      return atom_names_[a] < atom_names_[b];
    });
    std::vector<int> remap(atom_names_.size(), -1);
    for (size_t i = 0; i < kept_ids.size(); ++i) {
      int old = kept_ids[i];
      remap[old] = static_cast<int>(i);
      gp.prop_names.push_back(atom_names_[old]);
      gp.prop_predicate.push_back(atom_pred_[old]);
      gp.prop_args.push_back(atom_args_[old]);
      gp.prop_id[atom_names_[old]] = static_cast<int>(i);
    }

    // actions, lexicographic by name
    std::vector<int> kept_actions;
    for (size_t ci = 0; ci < candidates_.size(); ++ci)
      if (applicable_[ci]) kept_actions.push_back(static_cast<int>(ci));
    std::sort(kept_actions.begin(), kept_actions.end(), [&](int a, int b) {
      return candidates_[a].name < candidates_[b].name;
    });
    auto remap_vec = [&](const std::vector<int>& v) {
      std::vector<int> out;
      out.reserve(v.size());
      for (int p : v) out.push_back(remap[p]);
      return out;
    };
    for (int ci : kept_actions) {
      const Candidate& c = candidates_[ci];
      GroundAction a;
      a.name = c.name;
      a.schema = c.schema;
      a.binding = c.binding;
      a.cost = dom_.schemas[c.schema].cost.to_double();
      a.pre_pos = remap_vec(c.pre_pos);
      a.pre_neg = remap_vec(c.pre_neg);
      a.slots = remap_vec(c.slots);
      for (const auto& o : c.outcomes) {
        Outcome oo;
        oo.prob = o.prob.to_double();
        for (const auto& ce : o.effects) {
          CondEffect ce2;
          ce2.cond_pos = remap_vec(ce.cond_pos);
          ce2.cond_neg = remap_vec(ce.cond_neg);
          ce2.add = remap_vec(ce.add);
          ce2.del = remap_vec(ce.del);
          oo.effects.push_back(std::move(ce2));
        }
        a.outcomes.push_back(std::move(oo));
      }
      gp.actions.push_back(std::move(a));
    }

    // initial state(s)
    auto make_state = [&](const std::vector<GroundAtom>& base,
                          const std::vector<GroundAtom>& extra) {
      Bitset s(gp.nprops());
      auto add = [&](const GroundAtom& g) {
        std::vector<int> args;
        for (const auto& an : g.args) args.push_back(object_id_.at(an));
        int id = remap[intern(g.predicate, args)];
        if (id >= 0) s.set(id);
      };
      for (const auto& g : base) add(g);
      for (const auto& g : extra) add(g);
      return s;
    };
    if (prob_.stochastic_init.empty()) {
      gp.s0 = make_state(prob_.init, {});
      gp.init_dist.emplace_back(1.0, gp.s0);
    } else {
      for (const auto& [p, atoms] : prob_.stochastic_init)
        gp.init_dist.emplace_back(p.to_double(), make_state(prob_.init, atoms));
      size_t best = 0;
      for (size_t i = 1; i < gp.init_dist.size(); ++i)
        if (gp.init_dist[i].first > gp.init_dist[best].first) best = i;
      gp.s0 = gp.init_dist[best].second;
    }

    for (int g : goal_ids) gp.goal.push_back(remap[g]);
    sort_unique(gp.goal);

    gp.report.candidates = static_cast<long long>(candidates_.size());
    gp.report.kept_actions = static_cast<long long>(gp.actions.size());
    gp.report.pruned_actions = gp.report.candidates - gp.report.kept_actions;
    for (size_t i = 0; i < atom_names_.size(); ++i)
      if (reachable_[i]) ++gp.report.props_reachable;
    gp.report.props_kept = gp.nprops();
    for (int g : gp.goal) {
      int old = kept_ids[g];
      if (!reachable_[old]) ++gp.report.goal_props_unreachable;
    }
    return gp;
  }
};

}  // namespace

GroundProblem ground(const DomainDef& domain, const ProblemDef& problem,
                     const GroundOptions& opts) {
  return Grounder(domain, problem, opts).run();
}

std::string grounding_report_json(const GroundProblem& gp) {
  std::ostringstream os;
  os << "{\"problem\":\"" << gp.problem_name << "\",\"propositions\":" << gp.report.props_kept
     << ",\"reachable_propositions\":" << gp.report.props_reachable
     << ",\"actions\":" << gp.report.kept_actions
     << ",\"candidate_actions\":" << gp.report.candidates
     << ",\"pruned_actions\":" << gp.report.pruned_actions
     << ",\"goal_props_unreachable\":" << gp.report.goal_props_unreachable << "}";
  return os.str();
}

}  // namespace asnets::ppddl
