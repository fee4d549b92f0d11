#include "core/ppddl/parser.hpp"

#include <algorithm>
#include <map>

#include "core/ppddl/lexer.hpp"

namespace asnets::ppddl {

namespace {

[[noreturn]] void unsupported(const std::string& what) {
  fail(ErrKind::unsupported_feature, "unsupported feature: " + what);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  DomainDef domain() {
    expect(Token::LParen);
    expect_symbol("define");
    expect(Token::LParen);
    expect_symbol("domain");
    dom_.name = symbol();
    expect(Token::RParen);
    while (lex_.peek().kind == Token::LParen) {
      expect(Token::LParen);
      std::string section = symbol();
      if (section == ":requirements")
        requirements();
      else if (section == ":types")
        types();
      else if (section == ":constants")
        constants();
      else if (section == ":predicates")
        predicates();
      else if (section == ":functions")
        functions();
      else if (section == ":action")
        action();
      else
        syntax_error(lex_.peek(), "unknown domain section " + section);
    }
    expect(Token::RParen);
    expect(Token::End);
    check_domain();
    return std::move(dom_);
  }

  ProblemDef problem(const DomainDef& dom) {
    dom_ = dom;
    ProblemDef prob;
    expect(Token::LParen);
    expect_symbol("define");
    expect(Token::LParen);
    expect_symbol("problem");
    prob.name = symbol();
    expect(Token::RParen);
    while (lex_.peek().kind == Token::LParen) {
      expect(Token::LParen);
      std::string section = symbol();
      if (section == ":domain") {
        prob.domain_name = symbol();
        expect(Token::RParen);
      } else if (section == ":requirements") {
        requirements();
      } else if (section == ":objects") {
        typed_names([&](const std::string& n, int t) { prob.objects.emplace_back(n, t); });
        expect(Token::RParen);
      } else if (section == ":init") {
        problem_init(prob);
      } else if (section == ":goal") {
        problem_goal(prob);
      } else if (section == ":goal-reward" || section == ":metric") {
        // IPPC boilerplate; does not change minimum-cost semantics. Skipped.
        skip_rest_of_form();
      } else {
        syntax_error(lex_.peek(), "unknown problem section " + section);
      }
    }
    expect(Token::RParen);
    expect(Token::End);
    check_problem(prob);
    return prob;
  }

 private:
  Lexer lex_;
  DomainDef dom_;
  std::vector<std::string> params_;  // active schema parameter names

  void expect(Token::Kind k) {
    Token t = lex_.next();
    if (t.kind != k) syntax_error(t, "unexpected token '" + t.text + "'");
  }
  void expect_symbol(const std::string& s) {
    Token t = lex_.next();
    if (t.kind != Token::Symbol || t.text != s)
      syntax_error(t, "expected '" + s + "', got '" + t.text + "'");
  }
  std::string symbol() {
    Token t = lex_.next();
    if (t.kind != Token::Symbol) syntax_error(t, "expected a symbol, got '" + t.text + "'");
    return t.text;
  }
  Rational number() {
    Token t = lex_.next();
    if (t.kind != Token::Number) syntax_error(t, "expected a number, got '" + t.text + "'");
    return Rational::from_decimal_string(t.text);
  }

  void skip_rest_of_form() {
    int depth = 1;
    while (depth > 0) {
      Token t = lex_.next();
      if (t.kind == Token::End) syntax_error(t, "unbalanced parentheses");
      if (t.kind == Token::LParen) ++depth;
      if (t.kind == Token::RParen) --depth;
    }
  }

  void requirements() {
    while (lex_.peek().kind == Token::Symbol) {
      std::string r = symbol();
      if (r == ":rewards") unsupported("reward");
      if (r == ":fluents" || r == ":numeric-fluents") unsupported("numeric-fluent");
    }
    expect(Token::RParen);
  }

  // name* [- type] repeated; untyped names get "object".
  template <typename F>
  void typed_names(F&& emit) {
    std::vector<std::string> pending;
    while (true) {
      Token t = lex_.peek();
      if (t.kind == Token::RParen) break;
      std::string s = symbol();
      if (s == "-") {
        std::string type = symbol();
        int tid = dom_.types.find(type);
        if (tid < 0) tid = dom_.types.add(type, 0);
        for (auto& n : pending) emit(n, tid);
        pending.clear();
      } else {
        pending.push_back(s);
      }
    }
    for (auto& n : pending) emit(n, 0);
  }

  void types() {
    std::vector<std::string> pending;
    while (lex_.peek().kind != Token::RParen) {
      std::string s = symbol();
      if (s == "-") {
        std::string parent = symbol();
        int pid = dom_.types.add(parent, 0);
        for (auto& n : pending) dom_.types.add(n, pid);
        pending.clear();
      } else {
        pending.push_back(s);
      }
    }
    for (auto& n : pending) dom_.types.add(n, 0);
    expect(Token::RParen);
  }

  void constants() {
    typed_names([&](const std::string& n, int t) { dom_.constants.emplace_back(n, t); });
    expect(Token::RParen);
  }

  void predicates() {
    while (lex_.peek().kind == Token::LParen) {
      expect(Token::LParen);
      Predicate p;
      p.name = symbol();
      std::vector<std::string> names;
      typed_names([&](const std::string& n, int t) {
        if (n.empty() || n[0] != '?') syntax_error(lex_.peek(), "predicate parameter must be a ?variable");
        p.param_types.push_back(t);
      });
      expect(Token::RParen);
      dom_.predicates.push_back(std::move(p));
    }
    expect(Token::RParen);
  }

  void functions() {
    // Only the (total-cost) cost idiom is tolerated.
    while (lex_.peek().kind != Token::RParen) {
      Token t = lex_.next();
      if (t.kind == Token::LParen) {
        std::string fn = symbol();
        if (fn != "total-cost") unsupported("numeric-fluent");
        expect(Token::RParen);
      } else if (t.kind == Token::Symbol && (t.text == "-" || t.text == "number")) {
        continue;
      } else {
        unsupported("numeric-fluent");
      }
    }
    expect(Token::RParen);
  }

  int param_index(const std::string& name) const {
    for (size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == name) return static_cast<int>(i);
    return -1;
  }

  Term term() {
    std::string s = symbol();
    Term t;
    if (!s.empty() && s[0] == '?') {
      t.var = param_index(s);
      if (t.var < 0) syntax_error(lex_.peek(), "unbound variable " + s);
    } else {
      t.constant = s;
    }
    return t;
  }

  // Parses the body of an atom after '(' and predicate name were consumed.
  Atom atom_body(const std::string& pred_name) {
    Atom a;
    if (pred_name == "=") {
      a.predicate = -1;
      a.args.push_back(term());
      a.args.push_back(term());
    } else {
      a.predicate = dom_.predicate_index(pred_name);
      if (a.predicate < 0)
        fail(ErrKind::syntax, "unknown predicate '" + pred_name + "'");
      while (lex_.peek().kind != Token::RParen) a.args.push_back(term());
      if (static_cast<int>(a.args.size()) != dom_.predicates[a.predicate].arity())
        fail(ErrKind::syntax, "arity mismatch for predicate '" + pred_name + "'");
    }
    expect(Token::RParen);
    return a;
  }

  Formula formula() {
    expect(Token::LParen);
    if (lex_.peek().kind == Token::RParen) {  // ()
      expect(Token::RParen);
      return Formula{};
    }
    std::string head = symbol();
    Formula f;
    if (head == "and" || head == "or") {
      f.kind = head == "and" ? Formula::And : Formula::Or;
      while (lex_.peek().kind == Token::LParen) f.children.push_back(formula());
      expect(Token::RParen);
    } else if (head == "not") {
      f.kind = Formula::Not;
      f.children.push_back(formula());
      expect(Token::RParen);
    } else if (head == "imply") {
      // (imply a b) == (or (not a) b)
      f.kind = Formula::Or;
      Formula neg;
      neg.kind = Formula::Not;
      neg.children.push_back(formula());
      f.children.push_back(std::move(neg));
      f.children.push_back(formula());
      expect(Token::RParen);
    } else if (head == "forall" || head == "exists") {
      unsupported("quantifier");
    } else if (head == "increase" || head == "decrease" || head == "<" || head == ">" ||
               head == "<=" || head == ">=") {
      unsupported("numeric-fluent");
    } else {
      f.kind = Formula::Lit;
      f.atom = atom_body(head);
    }
    return f;
  }

  // Returns Noop for pure cost annotations; cost accumulates on the schema.
  Effect effect(Rational& cost, bool& cost_seen) {
    expect(Token::LParen);
    if (lex_.peek().kind == Token::RParen) {  // empty effect
      expect(Token::RParen);
      return Effect{};
    }
    std::string head = symbol();
    Effect e;
    if (head == "and") {
      e.kind = Effect::Conj;
      while (lex_.peek().kind == Token::LParen) {
        Effect c = effect(cost, cost_seen);
        if (c.kind != Effect::Noop) e.children.push_back(std::move(c));
      }
      expect(Token::RParen);
      if (e.children.empty()) e.kind = Effect::Noop;
      if (e.children.size() == 1) {
        Effect only = std::move(e.children[0]);
        return only;
      }
    } else if (head == "probabilistic") {
      e.kind = Effect::Prob;
      Rational total(0, 1);
      while (lex_.peek().kind == Token::Number) {
        Rational p = number();
        Effect sub = effect(cost, cost_seen);
        total = total + p;
        e.branches.emplace_back(p, std::move(sub));
      }
      expect(Token::RParen);
      if (Rational(1, 1) < total)
        fail(ErrKind::syntax, "probabilistic effect probabilities sum to " + total.str() + " > 1");
    } else if (head == "when") {
      e.kind = Effect::When;
      e.condition = formula();
      e.children.push_back(effect(cost, cost_seen));
      expect(Token::RParen);
    } else if (head == "not") {
      e.kind = Effect::Del;
      expect(Token::LParen);
      e.atom = atom_body(symbol());
      expect(Token::RParen);
    } else if (head == "increase") {
      expect(Token::LParen);
      std::string fn = symbol();
      expect(Token::RParen);
      if (fn == "reward") unsupported("reward");
      if (fn != "total-cost") unsupported("numeric-fluent");
      Rational c = number();
      cost = cost_seen ? cost + c : c;
      cost_seen = true;
      expect(Token::RParen);
      e.kind = Effect::Noop;
    } else if (head == "decrease") {
      expect(Token::LParen);
      std::string fn = symbol();
      if (fn == "reward") unsupported("reward");
      unsupported("numeric-fluent");
    } else if (head == "forall") {
      unsupported("quantifier");
    } else {
      e.kind = Effect::Add;
      e.atom = atom_body(head);
    }
    return e;
  }

  void action() {
    ActionSchema schema;
    schema.name = symbol();
    params_.clear();
    while (lex_.peek().kind == Token::Symbol) {
      std::string kw = symbol();
      if (kw == ":parameters") {
        expect(Token::LParen);
        typed_names([&](const std::string& n, int t) {
          if (n.empty() || n[0] != '?') syntax_error(lex_.peek(), "action parameter must be a ?variable");
          schema.param_names.push_back(n);
          schema.param_types.push_back(t);
          params_.push_back(n);
        });
        expect(Token::RParen);
      } else if (kw == ":precondition") {
        schema.precondition = formula();
      } else if (kw == ":effect") {
        bool cost_seen = false;
        schema.effect = effect(schema.cost, cost_seen);
      } else {
        syntax_error(lex_.peek(), "unknown action keyword " + kw);
      }
    }
    expect(Token::RParen);
    if (!(Rational(0, 1) < schema.cost))
      fail(ErrKind::syntax, "action '" + schema.name + "' has non-positive cost");
    dom_.schemas.push_back(std::move(schema));
    params_.clear();
  }

  void check_domain() {
    for (size_t i = 0; i < dom_.predicates.size(); ++i)
      for (size_t j = i + 1; j < dom_.predicates.size(); ++j)
        if (dom_.predicates[i].name == dom_.predicates[j].name)
          fail(ErrKind::syntax, "duplicate predicate name '" + dom_.predicates[i].name + "'");
    for (size_t i = 0; i < dom_.schemas.size(); ++i)
      for (size_t j = i + 1; j < dom_.schemas.size(); ++j)
        if (dom_.schemas[i].name == dom_.schemas[j].name)
          fail(ErrKind::syntax, "duplicate action name '" + dom_.schemas[i].name + "'");
  }

  GroundAtom ground_atom() {
    std::string pred = symbol();
    GroundAtom g;
    g.predicate = dom_.predicate_index(pred);
    if (g.predicate < 0) fail(ErrKind::syntax, "unknown predicate '" + pred + "'");
    while (lex_.peek().kind != Token::RParen) g.args.push_back(symbol());
    if (static_cast<int>(g.args.size()) != dom_.predicates[g.predicate].arity())
      fail(ErrKind::syntax, "arity mismatch for predicate '" + pred + "'");
    expect(Token::RParen);
    return g;
  }

  void problem_init(ProblemDef& prob) {
    // Independent probabilistic clauses multiply out into a distribution.
    std::vector<std::pair<Rational, std::vector<GroundAtom>>> dist{{Rational(1, 1), {}}};
    bool any_stochastic = false;
    while (lex_.peek().kind == Token::LParen) {
      expect(Token::LParen);
      if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "probabilistic") {
        symbol();
        any_stochastic = true;
        std::vector<std::pair<Rational, std::vector<GroundAtom>>> clause;
        Rational total(0, 1);
        while (lex_.peek().kind == Token::Number) {
          Rational p = number();
          total = total + p;
          std::vector<GroundAtom> atoms;
          expect(Token::LParen);
          if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "and") {
            symbol();
            while (lex_.peek().kind == Token::LParen) {
              expect(Token::LParen);
              atoms.push_back(ground_atom());
            }
            expect(Token::RParen);
          } else {
            atoms.push_back(ground_atom());
          }
          clause.emplace_back(p, std::move(atoms));
        }
        expect(Token::RParen);
        if (Rational(1, 1) < total)
          fail(ErrKind::syntax, "stochastic init probabilities sum to > 1");
        if (total < Rational(1, 1)) clause.emplace_back(Rational(1, 1) - total, std::vector<GroundAtom>{});
        std::vector<std::pair<Rational, std::vector<GroundAtom>>> next;
        for (const auto& [p0, atoms0] : dist)
          for (const auto& [p1, atoms1] : clause) {
            auto merged = atoms0;
            merged.insert(merged.end(), atoms1.begin(), atoms1.end());
            next.emplace_back(p0 * p1, std::move(merged));
          }
        if (next.size() > 256) fail(ErrKind::cap_exceeded, "stochastic init expands to > 256 states");
        dist = std::move(next);
      } else if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "=") {
        // (= (total-cost) 0) style bookkeeping
        skip_rest_of_form();
      } else {
        prob.init.push_back(ground_atom());
      }
    }
    expect(Token::RParen);
    if (any_stochastic) prob.stochastic_init = std::move(dist);
  }

  void flatten_goal(const Formula& f, ProblemDef& prob) {
    switch (f.kind) {
      case Formula::True:
        break;
      case Formula::And:
        for (const auto& c : f.children) flatten_goal(c, prob);
        break;
      case Formula::Not:
        unsupported("negative-goal-literal");
      case Formula::Or:
        unsupported("disjunctive-goal");
      case Formula::Lit: {
        GroundAtom g;
        g.predicate = f.atom.predicate;
        if (g.predicate < 0) unsupported("equality-in-goal");
        for (const auto& t : f.atom.args) {
          if (t.is_var()) fail(ErrKind::syntax, "goal contains a variable");
          g.args.push_back(t.constant);
        }
        prob.goal.push_back(std::move(g));
        break;
      }
    }
  }

  void problem_goal(ProblemDef& prob) {
    params_.clear();
    Formula f = formula();
    expect(Token::RParen);
    flatten_goal(f, prob);
  }

  void check_problem(ProblemDef& prob) {
    if (prob.domain_name != dom_.name)
      fail(ErrKind::invalid_argument,
           "problem '" + prob.name + "' references domain '" + prob.domain_name +
               "', loaded domain is '" + dom_.name + "'");
    std::map<std::string, int> obj_type;
    for (const auto& [n, t] : dom_.constants) obj_type[n] = t;
    for (const auto& [n, t] : prob.objects) obj_type[n] = t;
    auto check_atom = [&](const GroundAtom& g, const char* where) {
      const Predicate& p = dom_.predicates[g.predicate];
      for (size_t i = 0; i < g.args.size(); ++i) {
        auto it = obj_type.find(g.args[i]);
        if (it == obj_type.end())
          fail(ErrKind::type_mismatch, std::string(where) + " references unknown object '" + g.args[i] + "'");
        if (!dom_.types.is_subtype(it->second, p.param_types[i]))
          fail(ErrKind::type_mismatch, std::string(where) + " atom of '" + p.name + "' is ill-typed at '" +
                                            g.args[i] + "'");
      }
    };
    for (const auto& g : prob.init) check_atom(g, "init");
    for (const auto& [p, atoms] : prob.stochastic_init)
      for (const auto& g : atoms) check_atom(g, "init");
    for (const auto& g : prob.goal) check_atom(g, "goal");
  }
};

}  // namespace

DomainDef parse_domain(const std::string& text) { return Parser(text).domain(); }

ProblemDef parse_problem(const std::string& text, const DomainDef& domain) {
  return Parser(text).problem(domain);
}

}  // namespace asnets::ppddl
