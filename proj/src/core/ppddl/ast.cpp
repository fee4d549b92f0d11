#include "core/ppddl/ast.hpp"

#include <algorithm>

namespace asnets::ppddl {

int TypeTable::find(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

int TypeTable::add(const std::string& name, int parent_id) {
  int existing = find(name);
  if (existing >= 0) {
    if (parent[existing] < 0 && parent_id >= 0 && existing != 0) parent[existing] = parent_id;
    return existing;
  }
  names.push_back(name);
  parent.push_back(parent_id);
  return static_cast<int>(names.size()) - 1;
}

bool TypeTable::is_subtype(int t, int ancestor) const {
  while (t >= 0) {
    if (t == ancestor) return true;
    t = parent[t];
  }
  return false;
}

int DomainDef::predicate_index(const std::string& name) const {
  for (size_t i = 0; i < predicates.size(); ++i)
    if (predicates[i].name == name) return static_cast<int>(i);
  return -1;
}

namespace {

void scan_formula(const Formula& f, std::vector<Atom>& out) {
  switch (f.kind) {
    case Formula::True:
      break;
    case Formula::Lit:
      if (f.atom.predicate >= 0) out.push_back(f.atom);
      break;
    default:
      for (const auto& c : f.children) scan_formula(c, out);
  }
}

void scan_effect(const Effect& e, std::vector<Atom>& out) {
  switch (e.kind) {
    case Effect::Noop:
      break;
    case Effect::Add:
    case Effect::Del:
      out.push_back(e.atom);
      break;
    case Effect::Conj:
      for (const auto& c : e.children) scan_effect(c, out);
      break;
    case Effect::Prob:
      for (const auto& [p, sub] : e.branches) scan_effect(sub, out);
      break;
    case Effect::When:
      scan_formula(e.condition, out);
      scan_effect(e.children[0], out);
      break;
  }
}

}  // namespace

std::vector<Atom> unique_lifted_propositions(const ActionSchema& schema) {
  std::vector<Atom> seen;
  scan_formula(schema.precondition, seen);
  scan_effect(schema.effect, seen);
  std::vector<Atom> out;
  for (const auto& a : seen)
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

namespace {

bool eq_formula(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Formula::Lit) return a.atom == b.atom;
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!eq_formula(a.children[i], b.children[i])) return false;
  return true;
}

bool eq_effect(const Effect& a, const Effect& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Effect::Add:
    case Effect::Del:
      return a.atom == b.atom;
    case Effect::Conj:
      if (a.children.size() != b.children.size()) return false;
      for (size_t i = 0; i < a.children.size(); ++i)
        if (!eq_effect(a.children[i], b.children[i])) return false;
      return true;
    case Effect::Prob:
      if (a.branches.size() != b.branches.size()) return false;
      for (size_t i = 0; i < a.branches.size(); ++i) {
        if (!(a.branches[i].first == b.branches[i].first)) return false;
        if (!eq_effect(a.branches[i].second, b.branches[i].second)) return false;
      }
      return true;
    case Effect::When:
      return eq_formula(a.condition, b.condition) && eq_effect(a.children[0], b.children[0]);
    case Effect::Noop:
      return true;
  }
  return false;
}

}  // namespace

bool structurally_equal(const DomainDef& a, const DomainDef& b) {
  if (a.name != b.name) return false;
  if (a.types.names != b.types.names || a.types.parent != b.types.parent) return false;
  if (a.predicates.size() != b.predicates.size()) return false;
  for (size_t i = 0; i < a.predicates.size(); ++i) {
    if (a.predicates[i].name != b.predicates[i].name) return false;
    if (a.predicates[i].param_types != b.predicates[i].param_types) return false;
  }
  if (a.constants != b.constants) return false;
  if (a.schemas.size() != b.schemas.size()) return false;
  for (size_t i = 0; i < a.schemas.size(); ++i) {
    const auto& x = a.schemas[i];
    const auto& y = b.schemas[i];
    if (x.name != y.name || x.param_names != y.param_names || x.param_types != y.param_types)
      return false;
    if (!(x.cost == y.cost)) return false;
    if (!eq_formula(x.precondition, y.precondition)) return false;
    if (!eq_effect(x.effect, y.effect)) return false;
  }
  return true;
}

}  // namespace asnets::ppddl
