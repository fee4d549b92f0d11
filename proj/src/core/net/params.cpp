#include <cmath>

#include "core/net/network.hpp"

namespace asnets::net {

double elu(double x) { return x >= 0 ? x : std::expm1(x); }
double elu_grad_from_preact(double u) { return u >= 0 ? 1.0 : std::exp(u); }

namespace {

// topology dims derive from the signature alone; replicate them here so the
// store can exist without any ground problem
int action_in(const SchemaSignature& sig, const Flags& flags, int d_h, int schema, int layer) {
  int m = static_cast<int>(sig.slot_predicates[schema].size());
  if (layer == 1) return 2 * m + 1 + (flags.landmarks ? 3 : 0) + (flags.history ? 1 : 0);
  return m * d_h + (flags.skip ? d_h : 0);
}
int prop_in(const SchemaSignature& sig, const Flags& flags, int d_h, int pred, int layer) {
  int s = static_cast<int>(sig.groups[pred].size());
  return s * d_h + (flags.skip && layer >= 2 ? d_h : 0);
}

}  // namespace

ParameterStore init_params(const SchemaSignature& sig, int L, int d_h, Flags flags, Rng& rng) {
  ParameterStore store;
  store.L = L;
  store.d_h = d_h;
  store.flags = flags;
  store.sig = sig;
  store.schema.resize(sig.schema_names.size());
  store.pred.resize(sig.predicate_names.size());
  auto glorot = [&](int rows, int cols) {
    double bound = std::sqrt(6.0 / (rows + cols));
    Eigen::MatrixXd W(rows, cols);
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) W(r, c) = dist(rng);
    return W;
  };
  for (size_t si = 0; si < sig.schema_names.size(); ++si)
    for (int l = 1; l <= L + 1; ++l) {
      int din = action_in(sig, flags, d_h, static_cast<int>(si), l);
      int dout = l == L + 1 ? 1 : d_h;
      Tensor t;
      t.W = glorot(dout, din);
      t.b = Eigen::VectorXd::Zero(dout);
      store.schema[si].push_back(std::move(t));
    }
  for (size_t pi = 0; pi < sig.predicate_names.size(); ++pi)
    for (int l = 1; l <= L; ++l) {
      int din = prop_in(sig, flags, d_h, static_cast<int>(pi), l);
      Tensor t;
      t.W = glorot(d_h, din);
      t.b = Eigen::VectorXd::Zero(d_h);
      store.pred[pi].push_back(std::move(t));
    }
  return store;
}

double ParameterStore::squared_norm() const {
  double out = 0.0;
  for (const auto& group : {schema, pred})
    for (const auto& layers : group)
      for (const auto& t : layers) out += t.W.squaredNorm() + t.b.squaredNorm();
  return out;
}

double ParameterStore::l1_norm() const {
  double out = 0.0;
  for (const auto& group : {schema, pred})
    for (const auto& layers : group)
      for (const auto& t : layers) out += t.W.cwiseAbs().sum() + t.b.cwiseAbs().sum();
  return out;
}

void ParameterStore::threshold(double tau) {
  auto clip = [&](Tensor& t) {
    t.W = (t.W.cwiseAbs().array() < tau).select(0.0, t.W);
    t.b = (t.b.cwiseAbs().array() < tau).select(0.0, t.b);
  };
  for (auto& layers : schema)
    for (auto& t : layers) clip(t);
  for (auto& layers : pred)
    for (auto& t : layers) clip(t);
}

GradientSet GradientSet::zeros_like(const ParameterStore& store) {
  GradientSet g;
  auto zero_of = [](const std::vector<std::vector<Tensor>>& src) {
    std::vector<std::vector<Tensor>> out(src.size());
    for (size_t i = 0; i < src.size(); ++i)
      for (const auto& t : src[i]) {
        Tensor z;
        z.W = Eigen::MatrixXd::Zero(t.W.rows(), t.W.cols());
        z.b = Eigen::VectorXd::Zero(t.b.size());
        out[i].push_back(std::move(z));
      }
    return out;
  };
  g.schema = zero_of(store.schema);
  g.pred = zero_of(store.pred);
  return g;
}

void GradientSet::scale(double f) {
  for (auto* group : {&schema, &pred})
    for (auto& layers : *group)
      for (auto& t : layers) {
        t.W *= f;
        t.b *= f;
      }
}

void GradientSet::add_scaled(const ParameterStore& store, double f) {
  for (size_t i = 0; i < schema.size(); ++i)
    for (size_t l = 0; l < schema[i].size(); ++l) {
      schema[i][l].W += f * store.schema[i][l].W;
      schema[i][l].b += f * store.schema[i][l].b;
    }
  for (size_t i = 0; i < pred.size(); ++i)
    for (size_t l = 0; l < pred[i].size(); ++l) {
      pred[i][l].W += f * store.pred[i][l].W;
      pred[i][l].b += f * store.pred[i][l].b;
    }
}

}  // namespace asnets::net
