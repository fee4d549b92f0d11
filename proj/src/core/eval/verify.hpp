#pragma once

#include <json.hpp>

#include "core/eval/evaluate.hpp"

namespace asnets::eval {

struct CnBoothCheck {
  int booth = 0;
  double logit_forward = 0.0;
  double logit_backward = 0.0;
  // closed-form two-term comparison after the algebraic reduction
  double reduced_forward = 0.0;
  double reduced_backward = 0.0;
  // numeric validity of the reduction steps against the full network
  double step1_residual = 0.0;  // logit difference vs -w_to * (da2 fwd - da2 bwd)
  double pool_cancel_residual = 0.0;
};

struct CnVerifyResult {
  int booths = 0;
  bool ok = false;
  std::vector<CnBoothCheck> checks;
  int rollout_successes = 0;
  int rollout_attempts = 0;
};

// Canonical mid-delivery states of a K-booth chain: at booth b_k carrying
// the pizza with every booth up to and including b_k paid. Asserts the
// forward move beats the backward move at every interior booth, validates
// each step of the closed-form reduction against the network within 1e-9,
// and runs goal-reaching rollouts.
CnVerifyResult verify_cosanostra_inequality(const ParameterStore& store, int booths,
                                            int rollouts = 30, uint64_t seed = 0);

nlohmann::json cn_verify_json(const CnVerifyResult& r);

struct TtwVerifyResult {
  int size = 0;
  bool ok = false;
  int rollout_successes = 0;
  int rollout_attempts = 0;
  int moves_onto_spare = 0;
  int moves_with_spare_choice = 0;  // steps where some applicable move led to a spare
};

// Greedy rollouts of a tireworld policy; every executed move must land on a
// spare-equipped location whenever such a move is applicable.
TtwVerifyResult verify_ttw_sparse(const ParameterStore& store, int size, int rollouts = 30,
                                  uint64_t seed = 0);

nlohmann::json ttw_verify_json(const TtwVerifyResult& r);

}  // namespace asnets::eval
