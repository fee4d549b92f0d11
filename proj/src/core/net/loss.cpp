#include <cmath>

#include "core/net/loss.hpp"

namespace asnets::net {

LossResult batch_loss(const ParameterStore& store, const std::vector<BatchSample>& batch,
                      double lambda_l2, double gamma_l1, bool train_mode, double dropout,
                      Rng* rng) {
  if (batch.empty()) fail(ErrKind::empty_batch, "batch_loss over an empty batch");
  constexpr double kLo = 1e-7;
  constexpr double kHi = 1.0 - 1e-7;

  LossResult res;
  res.grads = GradientSet::zeros_like(store);
  double data_loss = 0.0;

  for (const auto& sample : batch) {
    ForwardOptions opts;
    opts.train = train_mode;
    opts.dropout = train_mode ? dropout : 0.0;
    opts.rng = rng;
    if (sample.topo->flags.landmarks) opts.landmarks = &sample.landmarks;
    if (sample.topo->flags.history) opts.counts = &sample.counts;
    Tape tape;
    std::vector<double> pi = forward(store, *sample.topo, sample.state, sample.enabled, opts,
                                     &tape);
    const int nacts = static_cast<int>(pi.size());
    std::vector<double> dp(nacts, 0.0);
    for (int ai = 0; ai < nacts; ++ai) {
      if (!sample.enabled[ai]) continue;
      const double y = sample.y[ai] ? 1.0 : 0.0;
      const double p = std::min(std::max(pi[ai], kLo), kHi);
      data_loss -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
      if (pi[ai] > kLo && pi[ai] < kHi) dp[ai] = -(y / p - (1.0 - y) / (1.0 - p));
    }
    double dot = 0.0;
    for (int ai = 0; ai < nacts; ++ai) dot += dp[ai] * pi[ai];
    std::vector<double> dlogits(nacts, 0.0);
    for (int ai = 0; ai < nacts; ++ai)
      if (sample.enabled[ai]) dlogits[ai] = pi[ai] * (dp[ai] - dot);
    backward(store, tape, dlogits, res.grads);
  }

  const double inv = 1.0 / static_cast<double>(batch.size());
  res.grads.scale(inv);
  res.loss = data_loss * inv;

  if (lambda_l2 > 0.0) {
    res.loss += 0.5 * lambda_l2 * store.squared_norm();
    res.grads.add_scaled(store, lambda_l2);
  }
  if (gamma_l1 > 0.0) {
    res.loss += gamma_l1 * store.l1_norm();
    auto add_sign = [&](Tensor& g, const Tensor& w) {
      g.W += gamma_l1 * w.W.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
      g.b += gamma_l1 * w.b.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
    };
    for (size_t i = 0; i < store.schema.size(); ++i)
      for (size_t l = 0; l < store.schema[i].size(); ++l)
        add_sign(res.grads.schema[i][l], store.schema[i][l]);
    for (size_t i = 0; i < store.pred.size(); ++i)
      for (size_t l = 0; l < store.pred[i].size(); ++l)
        add_sign(res.grads.pred[i][l], store.pred[i][l]);
  }
  return res;
}

AdamState AdamState::zeros_like(const ParameterStore& store) {
  AdamState st;
  st.m = GradientSet::zeros_like(store);
  st.v = GradientSet::zeros_like(store);
  return st;
}

void adam_step(ParameterStore& store, const GradientSet& grads, AdamState& st, double lr) {
  ++st.t;
  const double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.t));
  const double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.t));
  auto update = [&](Tensor& w, const Tensor& g, Tensor& m, Tensor& v) {
    m.W = st.beta1 * m.W + (1.0 - st.beta1) * g.W;
    m.b = st.beta1 * m.b + (1.0 - st.beta1) * g.b;
    v.W = st.beta2 * v.W + (1.0 - st.beta2) * g.W.cwiseProduct(g.W);
    v.b = st.beta2 * v.b + (1.0 - st.beta2) * g.b.cwiseProduct(g.b);
    Eigen::MatrixXd denom_w =
        (v.W / bc2).cwiseSqrt() + Eigen::MatrixXd::Constant(v.W.rows(), v.W.cols(), st.eps);
    Eigen::VectorXd denom_b = (v.b / bc2).cwiseSqrt() + Eigen::VectorXd::Constant(v.b.size(), st.eps);
    w.W -= lr * (m.W / bc1).cwiseQuotient(denom_w);
    w.b -= lr * (m.b / bc1).cwiseQuotient(denom_b);
  };
  for (size_t i = 0; i < store.schema.size(); ++i)
    for (size_t l = 0; l < store.schema[i].size(); ++l)
      update(store.schema[i][l], grads.schema[i][l], st.m.schema[i][l], st.v.schema[i][l]);
  for (size_t i = 0; i < store.pred.size(); ++i)
    for (size_t l = 0; l < store.pred[i].size(); ++l)
      update(store.pred[i][l], grads.pred[i][l], st.m.pred[i][l], st.v.pred[i][l]);
}

}  // namespace asnets::net
