#include "core/ppddl/writer.hpp"

#include <sstream>

namespace asnets::ppddl {

namespace {

std::string prob_str(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return r.str();  // parser accepts n/d
}

void write_atom(std::ostringstream& os, const Atom& a, const ActionSchema* schema,
                const DomainDef& dom) {
  os << "(";
  os << (a.predicate < 0 ? "=" : dom.predicates[a.predicate].name);
  for (const auto& t : a.args) {
    os << " ";
    if (t.is_var())
      os << schema->param_names[t.var];
    else
      os << t.constant;
  }
  os << ")";
}

void write_formula(std::ostringstream& os, const Formula& f, const ActionSchema* schema,
                   const DomainDef& dom) {
  switch (f.kind) {
    case Formula::True:
      os << "(and)";
      break;
    case Formula::Lit:
      write_atom(os, f.atom, schema, dom);
      break;
    case Formula::And:
    case Formula::Or:
      os << (f.kind == Formula::And ? "(and" : "(or");
      for (const auto& c : f.children) {
        os << " ";
        write_formula(os, c, schema, dom);
      }
      os << ")";
      break;
    case Formula::Not:
      os << "(not ";
      write_formula(os, f.children[0], schema, dom);
      os << ")";
      break;
  }
}

void write_effect(std::ostringstream& os, const Effect& e, const ActionSchema* schema,
                  const DomainDef& dom) {
  switch (e.kind) {
    case Effect::Noop:
      os << "(and)";
      break;
    case Effect::Add:
      write_atom(os, e.atom, schema, dom);
      break;
    case Effect::Del:
      os << "(not ";
      write_atom(os, e.atom, schema, dom);
      os << ")";
      break;
    case Effect::Conj:
      os << "(and";
      for (const auto& c : e.children) {
        os << " ";
        write_effect(os, c, schema, dom);
      }
      os << ")";
      break;
    case Effect::Prob:
      os << "(probabilistic";
      for (const auto& [p, sub] : e.branches) {
        os << " " << prob_str(p) << " ";
        write_effect(os, sub, schema, dom);
      }
      os << ")";
      break;
    case Effect::When:
      os << "(when ";
      write_formula(os, e.condition, schema, dom);
      os << " ";
      write_effect(os, e.children[0], schema, dom);
      os << ")";
      break;
  }
}

template <typename Pairs>
void write_typed_list(std::ostringstream& os, const Pairs& pairs, const TypeTable& types) {
  for (const auto& [name, type] : pairs)
    os << " " << name << " - " << types.names[type];
}

}  // namespace

std::string write_domain(const DomainDef& dom) {
  std::ostringstream os;
  os << "(define (domain " << dom.name << ")\n";
  if (dom.types.names.size() > 1) {
    os << "  (:types";
    for (size_t i = 1; i < dom.types.names.size(); ++i) {
      os << " " << dom.types.names[i];
      if (dom.types.parent[i] > 0) os << " - " << dom.types.names[dom.types.parent[i]];
    }
    os << ")\n";
  }
  if (!dom.constants.empty()) {
    os << "  (:constants";
    write_typed_list(os, dom.constants, dom.types);
    os << ")\n";
  }
  os << "  (:predicates";
  for (const auto& p : dom.predicates) {
    os << " (" << p.name;
    for (size_t i = 0; i < p.param_types.size(); ++i)
      os << " ?x" << i << " - " << dom.types.names[p.param_types[i]];
    os << ")";
  }
  os << ")\n";
  for (const auto& s : dom.schemas) {
    os << "  (:action " << s.name << "\n    :parameters (";
    for (size_t i = 0; i < s.param_names.size(); ++i) {
      if (i) os << " ";
      os << s.param_names[i] << " - " << dom.types.names[s.param_types[i]];
    }
    os << ")\n    :precondition ";
    write_formula(os, s.precondition, &s, dom);
    os << "\n    :effect ";
    if (!(s.cost == Rational(1, 1))) {
      // cost rides along as the standard total-cost increase
      os << "(and ";
      write_effect(os, s.effect, &s, dom);
      os << " (increase (total-cost) " << prob_str(s.cost) << "))";
    } else {
      write_effect(os, s.effect, &s, dom);
    }
    os << ")\n";
  }
  os << ")\n";
  return os.str();
}

std::string write_problem(const ProblemDef& prob, const DomainDef& dom) {
  std::ostringstream os;
  os << "(define (problem " << prob.name << ")\n  (:domain " << prob.domain_name << ")\n";
  os << "  (:objects";
  write_typed_list(os, prob.objects, dom.types);
  os << ")\n  (:init";
  auto atom = [&](const GroundAtom& g) {
    os << " (" << dom.predicates[g.predicate].name;
    for (const auto& a : g.args) os << " " << a;
    os << ")";
  };
  for (const auto& g : prob.init) atom(g);
  if (!prob.stochastic_init.empty()) {
    os << " (probabilistic";
    for (const auto& [p, atoms] : prob.stochastic_init) {
      os << " " << prob_str(p) << " (and";
      for (const auto& g : atoms) atom(g);
      os << ")";
    }
    os << ")";
  }
  os << ")\n  (:goal (and";
  for (const auto& g : prob.goal) atom(g);
  os << "))\n)\n";
  return os.str();
}

}  // namespace asnets::ppddl
