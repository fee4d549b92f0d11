#include <cmath>
#include <sstream>

#include "core/net/network.hpp"

namespace asnets::net {

namespace {

void check_compatible(const ParameterStore& store, const Topology& topo) {
  if (store.L != topo.L || store.d_h != topo.d_h || !(store.flags == topo.flags) ||
      !(store.sig == topo.sig))
    fail(ErrKind::shape_mismatch, "parameter store does not match the problem's domain signature");
}

void apply_dropout(ModuleTape& t, const ForwardOptions& opts) {
  if (!opts.train || opts.dropout <= 0.0) return;
  if (!opts.rng) fail(ErrKind::invalid_argument, "dropout requires an rng");
  const double keep_p = 1.0 - opts.dropout;
  t.keep = Eigen::VectorXd::Zero(t.h.size());
  for (Eigen::Index i = 0; i < t.h.size(); ++i) {
    if (uniform01(*opts.rng) < keep_p) t.keep(i) = 1.0 / keep_p;
    t.h(i) *= t.keep(i);
  }
}

}  // namespace

std::vector<double> forward(const ParameterStore& store, const Topology& topo, const State& s,
                            const std::vector<uint8_t>& enabled, const ForwardOptions& opts,
                            Tape* out_tape) {
  check_compatible(store, topo);
  const GroundProblem& gp = *topo.gp;
  const int nacts = static_cast<int>(gp.actions.size());
  const int nprops = gp.nprops();
  const int L = topo.L;
  const int d_h = topo.d_h;
  if (topo.flags.landmarks && !opts.landmarks)
    fail(ErrKind::invalid_argument, "landmark features enabled but not supplied");
  if (topo.flags.history && !opts.counts)
    fail(ErrKind::invalid_argument, "history features enabled but not supplied");

  Tape local;
  Tape& tape = out_tape ? *out_tape : local;
  tape.topo = &topo;
  tape.enabled = enabled;
  tape.act.assign(L + 1, {});
  tape.prop.assign(L, {});
  tape.argmax.assign(L, {});

  // layer 1: raw features per action module
  tape.act[0].resize(nacts);
  for (int ai = 0; ai < nacts; ++ai) {
    const auto& a = gp.actions[ai];
    const int m = static_cast<int>(a.slots.size());
    ModuleTape& t = tape.act[0][ai];
    t.x = Eigen::VectorXd::Zero(topo.feature_width(a.schema));
    int off = 0;
    for (int k = 0; k < m; ++k) t.x(off++) = s.test(a.slots[k]) ? 1.0 : 0.0;
    for (int k = 0; k < m; ++k) t.x(off++) = topo.goal_mask.test(a.slots[k]) ? 1.0 : 0.0;
    t.x(off++) = enabled[ai] ? 1.0 : 0.0;
    if (topo.flags.landmarks) {
      const auto& c = (*opts.landmarks)[ai];
      t.x(off++) = c[0];
      t.x(off++) = c[1];
      t.x(off++) = c[2];
    }
    if (topo.flags.history) t.x(off++) = static_cast<double>((*opts.counts)[ai]);
    const Tensor& w = store.schema[a.schema][0];
    t.u = w.W * t.x + w.b;
    t.h = t.u.unaryExpr([](double v) { return elu(v); });
    apply_dropout(t, opts);
  }

  std::vector<double> logits(nacts, 0.0);
  for (int l = 1; l <= L; ++l) {
    // proposition layer l
    tape.prop[l - 1].resize(nprops);
    tape.argmax[l - 1].resize(nprops);
    for (int p = 0; p < nprops; ++p) {
      const int pred = gp.prop_predicate[p];
      const auto& members = topo.graph.members[p];
      ModuleTape& t = tape.prop[l - 1][p];
      t.x = Eigen::VectorXd::Zero(topo.prop_input_dim(pred, l));
      auto& arg = tape.argmax[l - 1][p];
      arg.assign(members.size(), std::vector<int>(d_h, -1));
      int off = 0;
      for (size_t gi = 0; gi < members.size(); ++gi) {
        // elementwise max pool; the zero vector is the identity for empty groups
        for (int ch = 0; ch < d_h; ++ch) {
          double best = 0.0;
          int best_ai = -1;
          for (int ai : members[gi]) {
            double v = tape.act[l - 1][ai].h(ch);
            if (best_ai == -1 || v > best) {
              best = v;
              best_ai = ai;
            }
          }
          if (best_ai >= 0) {
            t.x(off + ch) = best;
            arg[gi][ch] = best_ai;
          }
        }
        off += d_h;
      }
      if (topo.flags.skip && l >= 2) t.x.segment(off, d_h) = tape.prop[l - 2][p].h;
      const Tensor& w = store.pred[pred][l - 1];
      t.u = w.W * t.x + w.b;
      t.h = t.u.unaryExpr([](double v) { return elu(v); });
      apply_dropout(t, opts);
    }

    // action layer l+1
    const bool final_layer = l == L;
    tape.act[l].resize(nacts);
    for (int ai = 0; ai < nacts; ++ai) {
      const auto& a = gp.actions[ai];
      const int m = static_cast<int>(a.slots.size());
      ModuleTape& t = tape.act[l][ai];
      t.x = Eigen::VectorXd::Zero(topo.action_input_dim(a.schema, l + 1));
      int off = 0;
      for (int k = 0; k < m; ++k, off += d_h)
        t.x.segment(off, d_h) = tape.prop[l - 1][a.slots[k]].h;
      if (topo.flags.skip) t.x.segment(off, d_h) = tape.act[l - 1][ai].h;
      const Tensor& w = store.schema[a.schema][l];
      t.u = w.W * t.x + w.b;
      if (final_layer) {
        t.h = t.u;  // single linear logit
        logits[ai] = t.u(0);
      } else {
        t.h = t.u.unaryExpr([](double v) { return elu(v); });
        apply_dropout(t, opts);
      }
    }
  }

  // masked softmax
  bool any = false;
  double mx = 0.0;
  for (int ai = 0; ai < nacts; ++ai)
    if (enabled[ai]) {
      mx = any ? std::max(mx, logits[ai]) : logits[ai];
      any = true;
    }
  if (!any) fail(ErrKind::no_enabled_actions, "no enabled actions in state");
  std::vector<double> pi(nacts, 0.0);
  double z = 0.0;
  for (int ai = 0; ai < nacts; ++ai)
    if (enabled[ai]) {
      pi[ai] = std::exp(logits[ai] - mx);
      z += pi[ai];
    }
  for (int ai = 0; ai < nacts; ++ai) pi[ai] /= z;
  tape.logits = logits;
  tape.policy = pi;
  return pi;
}

void backward(const ParameterStore& store, const Tape& tape, const std::vector<double>& dlogits,
              GradientSet& grads) {
  if (!tape.topo) fail(ErrKind::tape_mismatch, "tape was not produced by forward");
  const Topology& topo = *tape.topo;
  const GroundProblem& gp = *topo.gp;
  const int nacts = static_cast<int>(gp.actions.size());
  const int nprops = gp.nprops();
  const int L = topo.L;
  const int d_h = topo.d_h;
  if (static_cast<int>(dlogits.size()) != nacts)
    fail(ErrKind::tape_mismatch, "dlogits size does not match the tape");

  std::vector<std::vector<Eigen::VectorXd>> dact(L), dprop(L);
  for (int l = 0; l < L; ++l) {
    dact[l].assign(nacts, Eigen::VectorXd::Zero(d_h));
    dprop[l].assign(nprops, Eigen::VectorXd::Zero(d_h));
  }

  // final action layer
  for (int ai = 0; ai < nacts; ++ai) {
    const double g = dlogits[ai];
    if (g == 0.0) continue;
    const auto& a = gp.actions[ai];
    const ModuleTape& t = tape.act[L][ai];
    Tensor& gt = grads.schema[a.schema][L];
    gt.W.row(0) += g * t.x.transpose();
    gt.b(0) += g;
    Eigen::VectorXd dx = store.schema[a.schema][L].W.row(0).transpose() * g;
    int off = 0;
    for (size_t k = 0; k < a.slots.size(); ++k, off += d_h)
      dprop[L - 1][a.slots[k]] += dx.segment(off, d_h);
    if (topo.flags.skip) dact[L - 1][ai] += dx.segment(off, d_h);
  }

  for (int l = L; l >= 1; --l) {
    // proposition layer l
    for (int p = 0; p < nprops; ++p) {
      Eigen::VectorXd dh = dprop[l - 1][p];
      const ModuleTape& t = tape.prop[l - 1][p];
      if (t.keep.size()) dh = dh.cwiseProduct(t.keep);
      Eigen::VectorXd du = dh;
      for (int ch = 0; ch < d_h; ++ch) du(ch) *= elu_grad_from_preact(t.u(ch));
      const int pred = gp.prop_predicate[p];
      Tensor& gt = grads.pred[pred][l - 1];
      gt.W += du * t.x.transpose();
      gt.b += du;
      Eigen::VectorXd dx = store.pred[pred][l - 1].W.transpose() * du;
      const auto& members = topo.graph.members[p];
      int off = 0;
      for (size_t gi = 0; gi < members.size(); ++gi, off += d_h) {
        const auto& arg = tape.argmax[l - 1][p][gi];
        for (int ch = 0; ch < d_h; ++ch)
          if (arg[ch] >= 0) dact[l - 1][arg[ch]](ch) += dx(off + ch);
      }
      if (topo.flags.skip && l >= 2) dprop[l - 2][p] += dx.segment(off, d_h);
    }
    // action layer l (hidden)
    for (int ai = 0; ai < nacts; ++ai) {
      Eigen::VectorXd dh = dact[l - 1][ai];
      const ModuleTape& t = tape.act[l - 1][ai];
      if (t.keep.size()) dh = dh.cwiseProduct(t.keep);
      Eigen::VectorXd du = dh;
      for (int ch = 0; ch < d_h; ++ch) du(ch) *= elu_grad_from_preact(t.u(ch));
      const auto& a = gp.actions[ai];
      Tensor& gt = grads.schema[a.schema][l - 1];
      gt.W += du * t.x.transpose();
      gt.b += du;
      if (l >= 2) {
        Eigen::VectorXd dx = store.schema[a.schema][l - 1].W.transpose() * du;
        int off = 0;
        for (size_t k = 0; k < a.slots.size(); ++k, off += d_h)
          dprop[l - 2][a.slots[k]] += dx.segment(off, d_h);
        if (topo.flags.skip) dact[l - 2][ai] += dx.segment(off, d_h);
      }
    }
  }
}

std::string activations_json(const Tape& tape) {
  const Topology& topo = *tape.topo;
  const GroundProblem& gp = *topo.gp;
  std::ostringstream os;
  auto vec = [&](const Eigen::VectorXd& v) {
    std::ostringstream o;
    o << "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) o << ",";
      o << v(i);
    }
    o << "]";
    return o.str();
  };
  os << "{\"actions\":[";
  for (size_t ai = 0; ai < gp.actions.size(); ++ai) {
    if (ai) os << ",";
    os << "{\"name\":\"" << gp.actions[ai].name << "\",\"enabled\":"
       << (tape.enabled[ai] ? "true" : "false") << ",\"layers\":[";
    for (size_t l = 0; l < tape.act.size(); ++l) {
      if (l) os << ",";
      os << vec(tape.act[l][ai].h);
    }
    os << "],\"logit\":" << tape.logits[ai] << ",\"pi\":" << tape.policy[ai] << "}";
  }
  os << "],\"propositions\":[";
  for (int p = 0; p < gp.nprops(); ++p) {
    if (p) os << ",";
    os << "{\"name\":\"" << gp.prop_names[p] << "\",\"layers\":[";
    for (size_t l = 0; l < tape.prop.size(); ++l) {
      if (l) os << ",";
      os << vec(tape.prop[l][p].h);
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::string activations_csv(const Tape& tape) {
  const Topology& topo = *tape.topo;
  const GroundProblem& gp = *topo.gp;
  std::ostringstream os;
  os << "module,kind,layer,channel,value\n";
  for (size_t l = 0; l < tape.act.size(); ++l)
    for (size_t ai = 0; ai < gp.actions.size(); ++ai)
      for (Eigen::Index ch = 0; ch < tape.act[l][ai].h.size(); ++ch)
        os << gp.actions[ai].name << ",action," << (l + 1) << "," << ch << ","
           << tape.act[l][ai].h(ch) << "\n";
  for (size_t l = 0; l < tape.prop.size(); ++l)
    for (int p = 0; p < gp.nprops(); ++p)
      for (Eigen::Index ch = 0; ch < tape.prop[l][p].h.size(); ++ch)
        os << gp.prop_names[p] << ",proposition," << (l + 1) << "," << ch << ","
           << tape.prop[l][p].h(ch) << "\n";
  return os.str();
}

}  // namespace asnets::net
