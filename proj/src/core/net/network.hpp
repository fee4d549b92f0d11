#pragma once

#include <Eigen/Dense>

#include "core/heur/heuristics.hpp"
#include "core/rel/relatedness.hpp"

namespace asnets::net {

using heur::LandmarkBits;
using ppddl::GroundProblem;
using rel::Flags;
using rel::SchemaSignature;
using rel::Topology;
using ssp::State;

struct Tensor {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
};

// Weights keyed by (schema, action layer) and (predicate, proposition layer);
// exactly one tensor per key is the weight-sharing contract.
struct ParameterStore {
  int L = 2;
  int d_h = 16;
  Flags flags;
  SchemaSignature sig;  // dims derive from here
  std::vector<std::vector<Tensor>> schema;  // [schema][layer-1], layers 1..L+1
  std::vector<std::vector<Tensor>> pred;    // [pred][layer-1], layers 1..L

  double squared_norm() const;
  double l1_norm() const;
  // |w| < tau -> exactly 0
  void threshold(double tau);
};

ParameterStore init_params(const SchemaSignature& sig, int L, int d_h, Flags flags, Rng& rng);

// Same key structure as the store; accumulated dL/dW, dL/db.
struct GradientSet {
  std::vector<std::vector<Tensor>> schema;
  std::vector<std::vector<Tensor>> pred;

  static GradientSet zeros_like(const ParameterStore& store);
  void scale(double f);
  void add_scaled(const ParameterStore& store, double f);  // += f * store (regularisers)
};

double elu(double x);
double elu_grad_from_preact(double u);

struct ModuleTape {
  Eigen::VectorXd x;
  Eigen::VectorXd u;
  Eigen::VectorXd h;
  Eigen::VectorXd keep;  // dropout scale per channel; empty in eval mode
};

struct Tape {
  const Topology* topo = nullptr;
  std::vector<std::vector<ModuleTape>> act;   // [layer 0..L][action]
  std::vector<std::vector<ModuleTape>> prop;  // [layer 0..L-1][prop]
  // [layer][prop][group][channel] -> winning member action id, -1 if empty
  std::vector<std::vector<std::vector<std::vector<int>>>> argmax;
  std::vector<double> logits;
  std::vector<double> policy;
  std::vector<uint8_t> enabled;
};

struct ForwardOptions {
  bool train = false;          // enables dropout
  double dropout = 0.0;
  Rng* rng = nullptr;          // required when train && dropout > 0
  const std::vector<LandmarkBits>* landmarks = nullptr;  // per action, when flag on
  const std::vector<int>* counts = nullptr;              // per action, when flag on
};

// Masked softmax over enabled actions; disabled actions get probability 0.
// Throws no_enabled_actions when the mask is empty.
std::vector<double> forward(const ParameterStore& store, const Topology& topo, const State& s,
                            const std::vector<uint8_t>& enabled, const ForwardOptions& opts,
                            Tape* tape);

// Accumulates into grads; gradients sum over all weight-tied applications.
void backward(const ParameterStore& store, const Tape& tape,
              const std::vector<double>& dlogits, GradientSet& grads);

// Per-module activations for a state, rendered for inspection.
std::string activations_json(const Tape& tape);
std::string activations_csv(const Tape& tape);

}  // namespace asnets::net
