#pragma once

#include "core/ppddl/ground.hpp"

namespace asnets::rel {

using ppddl::DomainDef;
using ppddl::GroundProblem;

struct Flags {
  bool landmarks = true;
  bool history = true;
  bool skip = true;
  bool position_pooling = true;  // false: one merged group per related schema
  bool operator==(const Flags&) const = default;
};

// The weight-sharing contract: identical for every instance of one domain.
struct SchemaSignature {
  std::vector<std::string> schema_names;
  std::vector<std::string> predicate_names;
  std::vector<std::vector<int>> slot_predicates;         // [schema] -> predicate per slot
  std::vector<std::vector<std::pair<int, int>>> groups;  // [pred] -> (schema, position), lex order
  bool operator==(const SchemaSignature&) const = default;
};

SchemaSignature schema_signature(const DomainDef& dom, bool position_pooling);

// Per-problem instantiation: R(a, p, k) edges and pooling-group members.
struct RelatednessGraph {
  // [prop][group index within signature.groups[pred_of(prop)]] -> ascending action ids
  std::vector<std::vector<std::vector<int>>> members;
};

RelatednessGraph build_relatedness(const GroundProblem& gp, const SchemaSignature& sig);

struct Topology {
  const GroundProblem* gp = nullptr;
  SchemaSignature sig;
  Flags flags;
  int L = 2;
  int d_h = 16;
  RelatednessGraph graph;
  Bitset goal_mask;  // goal props of gp

  int slot_count(int schema) const { return static_cast<int>(sig.slot_predicates[schema].size()); }
  int group_count(int pred) const { return static_cast<int>(sig.groups[pred].size()); }

  // layer-1 action module input width (raw features)
  int feature_width(int schema) const {
    int m = slot_count(schema);
    return 2 * m + 1 + (flags.landmarks ? 3 : 0) + (flags.history ? 1 : 0);
  }
  // action layers are numbered 1..L+1, proposition layers 1..L
  int action_input_dim(int schema, int layer) const {
    if (layer == 1) return feature_width(schema);
    return slot_count(schema) * d_h + (flags.skip ? d_h : 0);
  }
  int action_output_dim(int layer) const { return layer == L + 1 ? 1 : d_h; }
  int prop_input_dim(int pred, int layer) const {
    return group_count(pred) * d_h + (flags.skip && layer >= 2 ? d_h : 0);
  }
};

Topology build_topology(const GroundProblem& gp, int L, int d_h, Flags flags);

std::string topology_json(const Topology& topo);

}  // namespace asnets::rel
