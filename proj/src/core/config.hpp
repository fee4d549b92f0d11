#pragma once

#include <json.hpp>

#include "core/eval/evaluate.hpp"

namespace asnets {

// Merged view of the training / evaluation / teacher configuration, loadable
// from JSON with command-line overrides. Unknown keys are rejected.
struct RunConfig {
  train::TrainConfig train;
  eval::EvalConfig eval;
  int jobs = 1;
  uint64_t seed = 0;
  double prune_tau = 1e-2;
  long long ground_action_cap = 1000000;

  void set_seed(uint64_t s) {
    seed = s;
    train.seed = s;
    eval.seed = s;
  }
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig config_from_json_text(const std::string& text);
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace asnets
