#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/util.hpp"

namespace asnets::ppddl {

// Flat single-inheritance type tree; "object" is the implicit root (index 0).
struct TypeTable {
  std::vector<std::string> names{"object"};
  std::vector<int> parent{-1};

  int find(const std::string& name) const;
  int add(const std::string& name, int parent_id);
  bool is_subtype(int t, int ancestor) const;
};

struct Predicate {
  std::string name;
  std::vector<int> param_types;
  int arity() const { return static_cast<int>(param_types.size()); }
};

// A term is either a schema parameter (var >= 0) or a constant object name.
struct Term {
  int var = -1;
  std::string constant;
  bool is_var() const { return var >= 0; }
  bool operator==(const Term& o) const { return var == o.var && constant == o.constant; }
};

struct Atom {
  int predicate = -1;   // -1 marks the builtin equality atom (= t1 t2)
  std::vector<Term> args;
  bool operator==(const Atom& o) const { return predicate == o.predicate && args == o.args; }
};

struct Formula {
  enum Kind { True, Lit, And, Or, Not } kind = True;
  Atom atom;                                // Lit
  std::vector<Formula> children;            // And / Or / Not
};

struct Effect {
  enum Kind { Conj, Prob, When, Add, Del, Noop } kind = Noop;
  std::vector<Effect> children;             // Conj
  std::vector<std::pair<Rational, Effect>> branches;  // Prob
  Formula condition;                        // When (applies to children[0])
  Atom atom;                                // Add / Del
};

struct ActionSchema {
  std::string name;
  std::vector<std::string> param_names;
  std::vector<int> param_types;
  Formula precondition;
  Effect effect;
  Rational cost{1, 1};
};

struct DomainDef {
  std::string name;
  TypeTable types;
  std::vector<Predicate> predicates;
  std::vector<std::pair<std::string, int>> constants;  // (name, type)
  std::vector<ActionSchema> schemas;

  int predicate_index(const std::string& name) const;
};

struct GroundAtom {
  int predicate = -1;
  std::vector<std::string> args;
  bool operator==(const GroundAtom& o) const {
    return predicate == o.predicate && args == o.args;
  }
};

struct ProblemDef {
  std::string name;
  std::string domain_name;
  std::vector<std::pair<std::string, int>> objects;  // (name, type)
  std::vector<GroundAtom> init;                      // deterministic part
  // Expansion of (probabilistic ...) clauses in :init: a distribution over
  // extra atom sets, each combined with the deterministic part.
  std::vector<std::pair<Rational, std::vector<GroundAtom>>> stochastic_init;
  std::vector<GroundAtom> goal;                      // positive conjunction
};

// The ordered slot list defining positions k = 1..K for a schema: first
// textual appearance scanning the precondition, then the effect tree
// (conditions count as effect propositions); duplicates collapse to the
// first occurrence. Equality atoms never produce slots.
std::vector<Atom> unique_lifted_propositions(const ActionSchema& schema);

bool structurally_equal(const DomainDef& a, const DomainDef& b);

}  // namespace asnets::ppddl
