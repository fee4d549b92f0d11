#include "core/rel/relatedness.hpp"

#include <algorithm>
#include <sstream>

namespace asnets::rel {

SchemaSignature schema_signature(const DomainDef& dom, bool position_pooling) {
  SchemaSignature sig;
  for (const auto& s : dom.schemas) sig.schema_names.push_back(s.name);
  for (const auto& p : dom.predicates) sig.predicate_names.push_back(p.name);
  sig.slot_predicates.resize(dom.schemas.size());
  for (size_t si = 0; si < dom.schemas.size(); ++si)
    for (const auto& atom : ppddl::unique_lifted_propositions(dom.schemas[si]))
      sig.slot_predicates[si].push_back(atom.predicate);

  sig.groups.resize(dom.predicates.size());
  // collect (schema, position) pairs per predicate, ordered lexicographically
  // by (schema name, position); old-style pooling keeps one group per schema
  std::vector<int> schema_order(dom.schemas.size());
  for (size_t i = 0; i < schema_order.size(); ++i) schema_order[i] = static_cast<int>(i);
  std::sort(schema_order.begin(), schema_order.end(), [&](int a, int b) {
    return dom.schemas[a].name < dom.schemas[b].name;
  });
  for (size_t pi = 0; pi < dom.predicates.size(); ++pi) {
    for (int si : schema_order) {
      bool schema_related = false;
      for (size_t k = 0; k < sig.slot_predicates[si].size(); ++k) {
        if (sig.slot_predicates[si][k] != static_cast<int>(pi)) continue;
        if (position_pooling)
          sig.groups[pi].emplace_back(si, static_cast<int>(k));
        else
          schema_related = true;
      }
      if (schema_related) sig.groups[pi].emplace_back(si, -1);  // merged positions
    }
  }
  return sig;
}

RelatednessGraph build_relatedness(const GroundProblem& gp, const SchemaSignature& sig) {
  RelatednessGraph graph;
  graph.members.resize(gp.nprops());
  for (int p = 0; p < gp.nprops(); ++p)
    graph.members[p].resize(sig.groups[gp.prop_predicate[p]].size());
  for (size_t ai = 0; ai < gp.actions.size(); ++ai) {
    const auto& a = gp.actions[ai];
    for (size_t k = 0; k < a.slots.size(); ++k) {
      int p = a.slots[k];
      const auto& groups = sig.groups[gp.prop_predicate[p]];
      for (size_t gi = 0; gi < groups.size(); ++gi) {
        if (groups[gi].first != a.schema) continue;
        if (groups[gi].second >= 0 && groups[gi].second != static_cast<int>(k)) continue;
        auto& m = graph.members[p][gi];
        if (m.empty() || m.back() != static_cast<int>(ai)) m.push_back(static_cast<int>(ai));
      }
    }
  }
  return graph;
}

Topology build_topology(const GroundProblem& gp, int L, int d_h, Flags flags) {
  if (L < 1 || d_h < 1) fail(ErrKind::invalid_argument, "topology requires L >= 1 and d_h >= 1");
  Topology topo;
  topo.gp = &gp;
  topo.sig = schema_signature(*gp.domain, flags.position_pooling);
  topo.flags = flags;
  topo.L = L;
  topo.d_h = d_h;
  topo.graph = build_relatedness(gp, topo.sig);
  topo.goal_mask = Bitset(gp.nprops());
  for (int g : gp.goal) topo.goal_mask.set(g);

  // dimension audit: every ground action of a schema carries exactly the
  // schema's slot list under its binding
  for (const auto& a : gp.actions)
    if (a.slots.size() != topo.sig.slot_predicates[a.schema].size())
      fail(ErrKind::shape_mismatch, "action '" + a.name + "' slot count mismatch");
  return topo;
}

std::string topology_json(const Topology& topo) {
  const GroundProblem& gp = *topo.gp;
  std::ostringstream os;
  os << "{\"layers\":" << topo.L << ",\"hidden_dim\":" << topo.d_h
     << ",\"flags\":{\"landmarks\":" << (topo.flags.landmarks ? "true" : "false")
     << ",\"history\":" << (topo.flags.history ? "true" : "false")
     << ",\"skip\":" << (topo.flags.skip ? "true" : "false") << ",\"pooling\":\""
     << (topo.flags.position_pooling ? "position" : "schema") << "\"},";
  os << "\"schemas\":[";
  for (size_t si = 0; si < topo.sig.schema_names.size(); ++si) {
    if (si) os << ",";
    os << "{\"name\":\"" << topo.sig.schema_names[si] << "\",\"slots\":[";
    for (size_t k = 0; k < topo.sig.slot_predicates[si].size(); ++k) {
      if (k) os << ",";
      os << "\"" << topo.sig.predicate_names[topo.sig.slot_predicates[si][k]] << "\"";
    }
    os << "],\"layer1_input\":" << topo.feature_width(static_cast<int>(si))
       << ",\"inner_input\":" << topo.action_input_dim(static_cast<int>(si), 2) << "}";
  }
  os << "],\"predicates\":[";
  for (size_t pi = 0; pi < topo.sig.predicate_names.size(); ++pi) {
    if (pi) os << ",";
    os << "{\"name\":\"" << topo.sig.predicate_names[pi] << "\",\"groups\":[";
    for (size_t gi = 0; gi < topo.sig.groups[pi].size(); ++gi) {
      if (gi) os << ",";
      const auto& [si, k] = topo.sig.groups[pi][gi];
      os << "{\"schema\":\"" << topo.sig.schema_names[si] << "\",\"position\":" << (k + 1) << "}";
    }
    os << "],\"layer1_input\":" << topo.prop_input_dim(static_cast<int>(pi), 1)
       << ",\"inner_input\":" << topo.prop_input_dim(static_cast<int>(pi), 2) << "}";
  }
  os << "],\"actions\":[";
  for (size_t ai = 0; ai < gp.actions.size(); ++ai) {
    if (ai) os << ",";
    os << "{\"name\":\"" << gp.actions[ai].name << "\",\"slots\":[";
    for (size_t k = 0; k < gp.actions[ai].slots.size(); ++k) {
      if (k) os << ",";
      os << "\"" << gp.prop_names[gp.actions[ai].slots[k]] << "\"";
    }
    os << "]}";
  }
  os << "],\"propositions\":[";
  for (int p = 0; p < gp.nprops(); ++p) {
    if (p) os << ",";
    os << "{\"name\":\"" << gp.prop_names[p] << "\",\"group_members\":[";
    for (size_t gi = 0; gi < topo.graph.members[p].size(); ++gi) {
      if (gi) os << ",";
      os << "[";
      for (size_t mi = 0; mi < topo.graph.members[p][gi].size(); ++mi) {
        if (mi) os << ",";
        os << "\"" << gp.actions[topo.graph.members[p][gi][mi]].name << "\"";
      }
      os << "]";
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

}  // namespace asnets::rel
