#include "core/eval/equations.hpp"

#include <cmath>
#include <sstream>

namespace asnets::eval {

using nlohmann::json;

namespace {

std::string lifted_atom_str(const ppddl::DomainDef& dom, const ppddl::ActionSchema& schema,
                            const ppddl::Atom& atom) {
  std::string out = (atom.predicate < 0 ? std::string("=") : dom.predicates[atom.predicate].name);
  out += "(";
  for (size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ",";
    out += atom.args[i].is_var() ? schema.param_names[atom.args[i].var] : atom.args[i].constant;
  }
  return out + ")";
}

json action_channel_terms(const ParameterStore& store, const ppddl::DomainDef& dom, int si,
                          int layer_ix, int out, double tau) {
  const auto& t = store.schema[si][layer_ix];
  const auto& schema = dom.schemas[si];
  auto lifted = ppddl::unique_lifted_propositions(schema);
  const int m = static_cast<int>(lifted.size());
  json terms = json::array();
  auto keep = [&](double w) { return std::abs(w) >= tau; };
  if (layer_ix == 0) {
    int off = 0;
    for (int k = 0; k < m; ++k, ++off)
      if (keep(t.W(out, off)))
        terms.push_back({{"ref", "truth"},
                         {"slot", k},
                         {"atom", lifted_atom_str(dom, schema, lifted[k])},
                         {"w", t.W(out, off)}});
    for (int k = 0; k < m; ++k, ++off)
      if (keep(t.W(out, off)))
        terms.push_back({{"ref", "goal"},
                         {"slot", k},
                         {"atom", lifted_atom_str(dom, schema, lifted[k])},
                         {"w", t.W(out, off)}});
    if (keep(t.W(out, off))) terms.push_back({{"ref", "applicable"}, {"w", t.W(out, off)}});
    ++off;
    if (store.flags.landmarks)
      for (int i = 0; i < 3; ++i, ++off)
        if (keep(t.W(out, off)))
          terms.push_back({{"ref", "landmark"}, {"index", i + 1}, {"w", t.W(out, off)}});
    if (store.flags.history) {
      if (keep(t.W(out, off))) terms.push_back({{"ref", "count"}, {"w", t.W(out, off)}});
      ++off;
    }
  } else {
    const int d_h = store.d_h;
    int off = 0;
    for (int k = 0; k < m; ++k)
      for (int ch = 0; ch < d_h; ++ch, ++off)
        if (keep(t.W(out, off)))
          terms.push_back({{"ref", "slot"},
                           {"slot", k},
                           {"atom", lifted_atom_str(dom, schema, lifted[k])},
                           {"ch", ch},
                           {"w", t.W(out, off)}});
    if (store.flags.skip)
      for (int ch = 0; ch < d_h; ++ch, ++off)
        if (keep(t.W(out, off)))
          terms.push_back({{"ref", "self"}, {"ch", ch}, {"w", t.W(out, off)}});
  }
  return terms;
}

json prop_channel_terms(const ParameterStore& store, int pi, int layer_ix, int out, double tau) {
  const auto& t = store.pred[pi][layer_ix];
  const auto& groups = store.sig.groups[pi];
  const int d_h = store.d_h;
  json terms = json::array();
  int off = 0;
  for (size_t gi = 0; gi < groups.size(); ++gi)
    for (int ch = 0; ch < d_h; ++ch, ++off)
      if (std::abs(t.W(out, off)) >= tau)
        terms.push_back({{"ref", "pool"},
                         {"group", static_cast<int>(gi)},
                         {"schema", store.sig.schema_names[groups[gi].first]},
                         {"position", groups[gi].second + 1},
                         {"ch", ch},
                         {"w", t.W(out, off)}});
  if (store.flags.skip && layer_ix >= 1)
    for (int ch = 0; ch < d_h; ++ch, ++off)
      if (std::abs(t.W(out, off)) >= tau)
        terms.push_back({{"ref", "self"}, {"ch", ch}, {"w", t.W(out, off)}});
  return terms;
}

}  // namespace

json export_lifted_equations(const ParameterStore& store, const ppddl::DomainDef& domain,
                             double tau) {
  json dump;
  dump["tau"] = tau;
  dump["hyper"] = {{"layers", store.L},
                   {"hidden_dim", store.d_h},
                   {"landmarks", store.flags.landmarks},
                   {"history", store.flags.history},
                   {"skip", store.flags.skip},
                   {"pooling", store.flags.position_pooling ? "position" : "schema"}};
  json modules = json::array();
  for (size_t si = 0; si < store.schema.size(); ++si)
    for (size_t l = 0; l < store.schema[si].size(); ++l) {
      const auto& t = store.schema[si][l];
      json channels = json::array();
      for (int out = 0; out < t.W.rows(); ++out) {
        json terms = action_channel_terms(store, domain, static_cast<int>(si),
                                          static_cast<int>(l), out, tau);
        const bool bias_live = std::abs(t.b(out)) >= tau;
        if (terms.empty() && !bias_live) continue;  // dead channel: omitted
        channels.push_back(
            {{"out", out}, {"bias", bias_live ? t.b(out) : 0.0}, {"terms", terms}});
      }
      if (channels.empty()) continue;
      modules.push_back({{"kind", "action"},
                         {"schema", store.sig.schema_names[si]},
                         {"layer", static_cast<int>(l) + 1},
                         {"final", l + 1 == store.schema[si].size()},
                         {"channels", channels}});
    }
  for (size_t pi = 0; pi < store.pred.size(); ++pi)
    for (size_t l = 0; l < store.pred[pi].size(); ++l) {
      const auto& t = store.pred[pi][l];
      json channels = json::array();
      for (int out = 0; out < t.W.rows(); ++out) {
        json terms = prop_channel_terms(store, static_cast<int>(pi), static_cast<int>(l), out, tau);
        const bool bias_live = std::abs(t.b(out)) >= tau;
        if (terms.empty() && !bias_live) continue;
        channels.push_back(
            {{"out", out}, {"bias", bias_live ? t.b(out) : 0.0}, {"terms", terms}});
      }
      if (channels.empty()) continue;
      modules.push_back({{"kind", "proposition"},
                         {"predicate", store.sig.predicate_names[pi]},
                         {"layer", static_cast<int>(l) + 1},
                         {"final", false},
                         {"channels", channels}});
    }
  dump["modules"] = std::move(modules);
  return dump;
}

std::string lifted_equations_text(const json& dump) {
  std::ostringstream os;
  for (const auto& mod : dump.at("modules")) {
    const bool is_action = mod.at("kind") == "action";
    os << (is_action ? "action layer " : "proposition layer ") << mod.at("layer").get<int>()
       << ", " << (is_action ? mod.at("schema").get<std::string>()
                             : mod.at("predicate").get<std::string>())
       << ":\n";
    for (const auto& ch : mod.at("channels")) {
      os << "  [" << ch.at("out").get<int>() << "] = ";
      if (!mod.at("final").get<bool>()) os << "f(";
      bool first = true;
      for (const auto& term : ch.at("terms")) {
        double w = term.at("w").get<double>();
        if (!first) os << (w >= 0 ? " + " : " - ");
        if (first && w < 0) os << "-";
        first = false;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", std::abs(w));
        os << buf << "*";
        const std::string ref = term.at("ref").get<std::string>();
        if (ref == "truth" || ref == "slot") os << term.at("atom").get<std::string>();
        else if (ref == "goal") os << "is-goal(" << term.at("atom").get<std::string>() << ")";
        else if (ref == "applicable") os << "applicable";
        else if (ref == "landmark") os << "landmark-c" << term.at("index").get<int>();
        else if (ref == "count") os << "action-count";
        else if (ref == "pool")
          os << "pool(" << term.at("schema").get<std::string>() << "@"
             << term.at("position").get<int>() << ")";
        else if (ref == "self") os << "self";
        if (term.contains("ch")) os << "[" << term.at("ch").get<int>() << "]";
      }
      double bias = ch.at("bias").get<double>();
      if (bias != 0.0 || first) {
        if (!first) os << (bias >= 0 ? " + " : " - ");
        else if (bias < 0) os << "-";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", std::abs(bias));
        os << buf;
      }
      if (!mod.at("final").get<bool>()) os << ")";
      os << "\n";
    }
  }
  return os.str();
}

std::vector<double> dump_coefficients(const json& dump) {
  std::vector<double> out;
  for (const auto& mod : dump.at("modules"))
    for (const auto& ch : mod.at("channels")) {
      for (const auto& term : ch.at("terms")) out.push_back(term.at("w").get<double>());
      if (ch.at("bias").get<double>() != 0.0) out.push_back(ch.at("bias").get<double>());
    }
  return out;
}

EquationActivations eval_lifted_equations(const json& dump, ProblemContext& ctx,
                                          const ssp::State& s,
                                          const std::vector<uint8_t>& enabled,
                                          const std::vector<int>& counts) {
  const GroundProblem& gp = *ctx.gp;
  const rel::Topology& topo = ctx.topo;
  const int L = dump.at("hyper").at("layers").get<int>();
  const int d_h = dump.at("hyper").at("hidden_dim").get<int>();
  const bool use_lm = dump.at("hyper").at("landmarks").get<bool>();
  const int nacts = static_cast<int>(gp.actions.size());
  const int nprops = gp.nprops();

  // index the dump per (kind, name, layer)
  std::map<std::string, const json*> by_key;
  for (const auto& mod : dump.at("modules")) {
    std::string key = mod.at("kind").get<std::string>() + "/" +
                      (mod.at("kind") == "action" ? mod.at("schema").get<std::string>()
                                                  : mod.at("predicate").get<std::string>()) +
                      "/" + std::to_string(mod.at("layer").get<int>());
    by_key[key] = &mod;
  }
  const std::vector<heur::LandmarkBits>* lm = use_lm ? &ctx.landmarks(s) : nullptr;

  EquationActivations acts;
  acts.act.assign(L + 1, std::vector<std::vector<double>>(nacts, std::vector<double>(d_h, 0.0)));
  acts.prop.assign(L, std::vector<std::vector<double>>(nprops, std::vector<double>(d_h, 0.0)));
  acts.logits.assign(nacts, 0.0);

  auto eval_action = [&](int layer, int ai) {
    const auto& a = gp.actions[ai];
    const std::string key =
        "action/" + topo.sig.schema_names[a.schema] + "/" + std::to_string(layer);
    auto it = by_key.find(key);
    const bool final_layer = layer == L + 1;
    if (it == by_key.end()) return;  // all channels pruned: stay zero
    for (const auto& ch : it->second->at("channels")) {
      double v = ch.at("bias").get<double>();
      for (const auto& term : ch.at("terms")) {
        const std::string ref = term.at("ref").get<std::string>();
        const double w = term.at("w").get<double>();
        if (ref == "truth") {
          v += w * (s.test(a.slots[term.at("slot").get<int>()]) ? 1.0 : 0.0);
        } else if (ref == "goal") {
          v += w * (topo.goal_mask.test(a.slots[term.at("slot").get<int>()]) ? 1.0 : 0.0);
        } else if (ref == "applicable") {
          v += w * (enabled[ai] ? 1.0 : 0.0);
        } else if (ref == "landmark") {
          v += w * (*lm)[ai][term.at("index").get<int>() - 1];
        } else if (ref == "count") {
          v += w * counts[ai];
        } else if (ref == "slot") {
          v += w * acts.prop[layer - 2][a.slots[term.at("slot").get<int>()]]
                            [term.at("ch").get<int>()];
        } else if (ref == "self") {
          v += w * acts.act[layer - 2][ai][term.at("ch").get<int>()];
        }
      }
      const int out = ch.at("out").get<int>();
      if (final_layer)
        acts.logits[ai] = v;
      else
        acts.act[layer - 1][ai][out] = net::elu(v);
    }
  };

  auto eval_prop = [&](int layer, int p) {
    const int pred = gp.prop_predicate[p];
    const std::string key =
        "proposition/" + topo.sig.predicate_names[pred] + "/" + std::to_string(layer);
    auto it = by_key.find(key);
    if (it == by_key.end()) return;
    for (const auto& ch : it->second->at("channels")) {
      double v = ch.at("bias").get<double>();
      for (const auto& term : ch.at("terms")) {
        const std::string ref = term.at("ref").get<std::string>();
        const double w = term.at("w").get<double>();
        if (ref == "pool") {
          const int gi = term.at("group").get<int>();
          const int c = term.at("ch").get<int>();
          const auto& members = topo.graph.members[p][gi];
          double pooled = 0.0;
          bool first_member = true;
          for (int ai : members) {
            double hv = acts.act[layer - 1][ai][c];
            if (first_member || hv > pooled) pooled = hv;
            first_member = false;
          }
          v += w * pooled;
        } else if (ref == "self") {
          v += w * acts.prop[layer - 2][p][term.at("ch").get<int>()];
        }
      }
      acts.prop[layer - 1][p][ch.at("out").get<int>()] = net::elu(v);
    }
  };

  for (int ai = 0; ai < nacts; ++ai) eval_action(1, ai);
  for (int l = 1; l <= L; ++l) {
    for (int p = 0; p < nprops; ++p) eval_prop(l, p);
    for (int ai = 0; ai < nacts; ++ai) eval_action(l + 1, ai);
  }
  return acts;
}

}  // namespace asnets::eval
