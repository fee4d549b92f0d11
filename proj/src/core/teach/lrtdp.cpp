#include "core/teach/teacher.hpp"

namespace asnets::teach {

struct LrtdpSession::Impl {
 public:
  Impl(const GroundProblem& gp, const RelaxedEvaluator& eval, HeuristicKind h,
         const ssp::FsspudeConfig& fsspude, double epsilon, const Deadline& deadline,
         uint64_t seed)
      : gp_(gp),
        eval_(eval),
        h_(h),
        D_(fsspude.dead_end_penalty),
        eps_(epsilon),
        deadline_(deadline),
        rng_(seed) {}

  bool solved(const State& s) const {
    auto it = labeled_.find(s);
    return it != labeled_.end() && it->second;
  }

  double value(const State& s) {
    if (gp_.is_goal(s)) return 0.0;
    auto it = value_.find(s);
    if (it != value_.end()) return it->second;
    bool dead = false;
    double hv = 0.0;
    switch (h_) {
      case HeuristicKind::zero:
        break;
      case HeuristicKind::hadd: {
        auto r = eval_.hadd(s);
        dead = r.unreachable;
        hv = dead ? 0 : r.value;
        break;
      }
      case HeuristicKind::hmax: {
        auto r = eval_.hmax(s);
        dead = r.unreachable;
        hv = dead ? 0 : r.value;
        break;
      }
      case HeuristicKind::lmcut: {
        auto r = eval_.lmcut(s);
        dead = r.value.unreachable;
        hv = dead ? 0 : r.value.value;
        break;
      }
    }
    double v = dead ? D_ : std::min(hv, D_);
    value_.emplace(s, v);
    return v;
  }

  double q(const State& s, int a) {
    double out = gp_.actions[a].cost;
    for (const auto& [next, p] : ssp::successor_distribution(gp_, s, a).entries)
      out += p * value(next);
    return std::min(out, D_);
  }

  // Bellman backup value and greedy action (lowest index among ties).
  std::pair<double, int> backup(const State& s) {
    double best = D_;
    int best_a = -1;
    for (int a : ssp::applicable_actions(gp_, s)) {
      double qa = q(s, a);
      if (qa < best - 1e-12) {
        best = qa;
        best_a = a;
      }
    }
    return {best, best_a};
  }

  bool timed_out() const { return timed_out_; }

  void solve(const State& s0) {
    while (!solved(s0)) {
      if (deadline_.expired()) {
        timed_out_ = true;
        return;
      }
      trial(s0);
    }
  }

  const StateMap<double>& values() const { return value_; }
  const StateMap<char>& labels() const { return labeled_; }

 private:
  void trial(const State& s0) {
    std::vector<State> visited;
    State cur = s0;
    while (!solved(cur)) {
      if (deadline_.expired()) {
        timed_out_ = true;
        break;
      }
      visited.push_back(cur);
      if (gp_.is_goal(cur)) break;
      auto [v, a] = backup(cur);
      value_[cur] = v;
      if (a < 0 || v >= D_ - 1e-12) break;  // dead end plateau
      cur = ssp::sample_successor(gp_, cur, a, rng_);
      if (visited.size() > 100000) break;
    }
    while (!visited.empty()) {
      State s = std::move(visited.back());
      visited.pop_back();
      if (!check_solved(s)) break;
    }
  }

  bool check_solved(const State& s) {
    bool rv = true;
    std::vector<State> open, closed;
    StateSet seen;
    if (!solved(s)) {
      open.push_back(s);
      seen.insert(s);
    }
    while (!open.empty()) {
      if (deadline_.expired()) {
        timed_out_ = true;
        return false;
      }
      State cur = std::move(open.back());
      open.pop_back();
      closed.push_back(cur);
      if (gp_.is_goal(cur)) continue;
      auto [v, a] = backup(cur);
      if (std::abs(v - value(cur)) > eps_) {
        rv = false;
        continue;
      }
      if (a < 0 || v >= D_ - 1e-12) continue;  // dead end: converged at D
      for (const auto& [next, p] : ssp::successor_distribution(gp_, cur, a).entries)
        if (!solved(next) && !gp_.is_goal(next) && seen.insert(next).second)
          open.push_back(next);
    }
    if (rv) {
      for (const auto& st : closed) labeled_[st] = 1;
    } else {
      for (auto it = closed.rbegin(); it != closed.rend(); ++it) value_[*it] = backup(*it).first;
    }
    return rv;
  }

  const GroundProblem& gp_;
  const RelaxedEvaluator& eval_;
  HeuristicKind h_;
  double D_;
  double eps_;
  const Deadline& deadline_;
  Rng rng_;
  StateMap<double> value_;
  StateMap<char> labeled_;
  bool timed_out_ = false;
};

LrtdpSession::LrtdpSession(const GroundProblem& gp, const RelaxedEvaluator& eval,
                           HeuristicKind h, const ssp::FsspudeConfig& fsspude, double epsilon,
                           const Deadline& deadline, uint64_t seed)
    : impl_(std::make_unique<Impl>(gp, eval, h, fsspude, epsilon, deadline, seed)) {}
LrtdpSession::~LrtdpSession() = default;
void LrtdpSession::solve(const State& s) { impl_->solve(s); }
bool LrtdpSession::is_labeled(const State& s) const { return impl_->solved(s); }
double LrtdpSession::value_of(const State& s) { return impl_->value(s); }
bool LrtdpSession::timed_out() const { return impl_->timed_out(); }
const StateMap<double>& LrtdpSession::values() const { return impl_->values(); }
const StateMap<char>& LrtdpSession::labels() const { return impl_->labels(); }

LrtdpResult lrtdp_solve(const GroundProblem& gp, const RelaxedEvaluator& eval, HeuristicKind h,
                        const State& s, const ssp::FsspudeConfig& fsspude, double epsilon,
                        const Deadline& deadline, uint64_t seed) {
  LrtdpSession session(gp, eval, h, fsspude, epsilon, deadline, seed);
  session.solve(s);
  LrtdpResult res;
  res.status = session.timed_out() ? LrtdpResult::timeout : LrtdpResult::solved;
  res.value = session.values();
  res.labeled = session.labels();
  res.v0 = gp.is_goal(s) ? 0.0 : session.value_of(s);
  return res;
}

}  // namespace asnets::teach
