#pragma once

#include <json.hpp>

#include "core/eval/evaluate.hpp"

namespace asnets::eval {

// Lifted rendering of a (thresholded) store: per (schema|predicate, layer,
// output channel) the bias and the input terms with |w| >= tau, grouped by
// slot / pooling group / skip / raw feature. Channels whose every
// coefficient and bias fall below tau are omitted.
nlohmann::json export_lifted_equations(const ParameterStore& store,
                                       const ppddl::DomainDef& domain, double tau);

std::string lifted_equations_text(const nlohmann::json& dump);

// Every coefficient appearing in the dump (for golden tests).
std::vector<double> dump_coefficients(const nlohmann::json& dump);

// Independent interpreter for the dump: recomputes every module activation
// for a concrete state; matches forward() on the tau-thresholded store.
struct EquationActivations {
  std::vector<std::vector<std::vector<double>>> act;   // [layer][action][ch]
  std::vector<std::vector<std::vector<double>>> prop;  // [layer][prop][ch]
  std::vector<double> logits;
};

EquationActivations eval_lifted_equations(const nlohmann::json& dump, ProblemContext& ctx,
                                          const ssp::State& s,
                                          const std::vector<uint8_t>& enabled,
                                          const std::vector<int>& counts);

}  // namespace asnets::eval
