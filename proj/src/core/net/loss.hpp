#pragma once

#include "core/net/network.hpp"

namespace asnets::net {

struct BatchSample {
  const Topology* topo = nullptr;
  State state;
  std::vector<uint8_t> enabled;  // per action
  std::vector<uint8_t> y;        // per action; disabled entries forced to 0
  std::vector<LandmarkBits> landmarks;  // used when the landmark flag is on
  std::vector<int> counts;              // used when the history flag is on
};

struct LossResult {
  double loss = 0.0;
  GradientSet grads;
};

// L = -(1/|B|) sum_s sum_a [(1-y) log(1-pi) + y log pi] + (l2/2)||th||^2 + l1*||th||_1
// with pi clamped to [1e-7, 1-1e-7] inside the logs. Gradients include the
// regulariser terms; the L1 subgradient is 0 at exactly-zero weights.
LossResult batch_loss(const ParameterStore& store, const std::vector<BatchSample>& batch,
                      double lambda_l2, double gamma_l1, bool train_mode = false,
                      double dropout = 0.0, Rng* rng = nullptr);

struct AdamState {
  GradientSet m, v;
  long long t = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  static AdamState zeros_like(const ParameterStore& store);
};

void adam_step(ParameterStore& store, const GradientSet& grads, AdamState& st, double lr);

}  // namespace asnets::net
