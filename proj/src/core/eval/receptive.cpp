#include <sstream>

#include "core/dom/generators.hpp"
#include "core/eval/evaluate.hpp"

namespace asnets::eval {

// Decision depth K: the first useful goal flag sits K relatedness hops from
// the decision modules at the start location, so a network needs at least K
// proposition layers. The chains carry K+1 locations each; goal sides
// alternate so that a side bias cannot beat the coin flip on blind cells.
static train::ProblemContext chain_context(int depth, int L, int d_h, rel::Flags flags) {
  dom::Generated gen = dom::gen_two_chain(depth + 1, /*goal_right=*/depth % 2 == 0);
  return train::make_context(gen.domain, gen.problem, L, d_h, flags);
}

ReceptiveFieldResult receptive_field_experiment(const ReceptiveFieldConfig& cfg) {
  ReceptiveFieldResult result;
  result.L_values = cfg.L_values;
  result.K_values = cfg.K_values;
  result.rollouts = cfg.rollouts;

  rel::Flags flags;
  flags.landmarks = false;
  flags.history = false;
  flags.skip = false;

  for (int L : cfg.L_values) {
    std::vector<train::ProblemContext> problems;
    for (int K : cfg.K_values) problems.push_back(chain_context(K, L, cfg.d_h, flags));

    train::TrainConfig tc;
    tc.L = L;
    tc.d_h = cfg.d_h;
    tc.flags = flags;
    tc.t_train = cfg.t_train;
    tc.n_traj = cfg.n_traj;
    tc.lambda_l2 = 0.0;  // regularisers off, as for the deep configurations
    tc.dropout = 0.0;
    tc.max_wall_seconds = cfg.wall_per_L;
    tc.max_epochs = cfg.max_epochs;
    tc.seed = mix_seed(cfg.seed, static_cast<uint64_t>(L));
    tc.teacher.search = teach::TeacherConfig::lrtdp;
    tc.teacher.heuristic = heur::HeuristicKind::hadd;
    train::TrainResult tr = train::train(problems, tc);

    std::vector<int> row;
    for (size_t ki = 0; ki < problems.size(); ++ki) {
      int succ = 0;
      for (int r = 0; r < cfg.rollouts; ++r) {
        Rng rng(mix_seed(cfg.seed, static_cast<uint64_t>(L * 1000 + cfg.K_values[ki]),
                         static_cast<uint64_t>(r)));
        train::RolloutRecord rec =
            train::run_policy(tr.store, problems[ki], problems[ki].gp->s0, rng, 300,
                              train::ExecutionMode::argmax_random_tie);
        succ += rec.reached_goal ? 1 : 0;
      }
      row.push_back(succ);
    }
    result.successes.push_back(std::move(row));
  }
  return result;
}

std::string receptive_field_json(const ReceptiveFieldResult& r) {
  std::ostringstream os;
  os << "{\"rollouts\":" << r.rollouts << ",\"rows\":[";
  for (size_t i = 0; i < r.L_values.size(); ++i) {
    if (i) os << ",";
    os << "{\"layers\":" << r.L_values[i] << ",\"coverage\":[";
    for (size_t j = 0; j < r.K_values.size(); ++j) {
      if (j) os << ",";
      os << "{\"chain\":" << r.K_values[j] << ",\"successes\":" << r.successes[i][j] << "}";
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::string receptive_field_table(const ReceptiveFieldResult& r) {
  std::ostringstream os;
  os << "L\\K";
  for (int k : r.K_values) os << "\t" << k;
  os << "\n";
  for (size_t i = 0; i < r.L_values.size(); ++i) {
    os << r.L_values[i];
    for (size_t j = 0; j < r.K_values.size(); ++j)
      os << "\t" << r.successes[i][j] << "/" << r.rollouts;
    os << "\n";
  }
  return os.str();
}

}  // namespace asnets::eval
