#include "core/config.hpp"

#include <set>

namespace asnets {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(ErrKind::invalid_argument, "unknown config key '" + it.key() + "' in " + where);
}

template <typename T>
void get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  check_keys(j, {"layers", "hidden_dim", "n_traj", "t_train", "batch_size", "lr", "lambda_l2",
                 "gamma_l1", "dropout", "t_stop", "p_solved", "max_wall_seconds", "max_epochs",
                 "step_limit", "landmarks", "history", "skip", "pooling", "seed", "teacher",
                 "eval", "jobs", "checkpoint_dir", "checkpoint_every", "prune_tau",
                 "ground_action_cap", "lr_schedule"},
             "config");
  get(j, "layers", cfg.train.L);
  get(j, "hidden_dim", cfg.train.d_h);
  get(j, "n_traj", cfg.train.n_traj);
  get(j, "t_train", cfg.train.t_train);
  get(j, "batch_size", cfg.train.batch_size);
  get(j, "lr", cfg.train.lr);
  get(j, "lambda_l2", cfg.train.lambda_l2);
  get(j, "gamma_l1", cfg.train.gamma_l1);
  get(j, "dropout", cfg.train.dropout);
  get(j, "t_stop", cfg.train.t_stop);
  get(j, "p_solved", cfg.train.p_solved);
  get(j, "max_wall_seconds", cfg.train.max_wall_seconds);
  get(j, "max_epochs", cfg.train.max_epochs);
  get(j, "step_limit", cfg.train.exploration_step_limit);
  cfg.eval.step_limit = cfg.train.exploration_step_limit;
  get(j, "landmarks", cfg.train.flags.landmarks);
  get(j, "history", cfg.train.flags.history);
  get(j, "skip", cfg.train.flags.skip);
  if (j.contains("pooling")) {
    std::string p = j.at("pooling").get<std::string>();
    if (p != "position" && p != "schema")
      fail(ErrKind::invalid_argument, "pooling must be 'position' or 'schema'");
    cfg.train.flags.position_pooling = p == "position";
  }
  get(j, "checkpoint_dir", cfg.train.checkpoint_dir);
  get(j, "checkpoint_every", cfg.train.checkpoint_every);
  get(j, "prune_tau", cfg.prune_tau);
  get(j, "ground_action_cap", cfg.ground_action_cap);
  get(j, "jobs", cfg.jobs);
  if (j.contains("lr_schedule")) {
    cfg.train.lr_schedule.clear();
    for (const auto& pair : j.at("lr_schedule"))
      cfg.train.lr_schedule.emplace_back(pair.at(0).get<int>(), pair.at(1).get<double>());
  }
  if (j.contains("teacher")) {
    const json& t = j.at("teacher");
    check_keys(t, {"search", "heuristic", "epsilon", "timeout", "label_tol",
                   "dead_end_penalty", "rollout_step_limit"},
               "teacher");
    if (t.contains("search")) {
      std::string s = t.at("search").get<std::string>();
      if (s == "astar")
        cfg.train.teacher.search = teach::TeacherConfig::astar;
      else if (s == "gbfs")
        cfg.train.teacher.search = teach::TeacherConfig::gbfs;
      else if (s == "lrtdp")
        cfg.train.teacher.search = teach::TeacherConfig::lrtdp;
      else
        fail(ErrKind::invalid_argument, "teacher search must be astar|gbfs|lrtdp");
    }
    if (t.contains("heuristic")) {
      std::string h = t.at("heuristic").get<std::string>();
      if (h == "zero")
        cfg.train.teacher.heuristic = heur::HeuristicKind::zero;
      else if (h == "hadd")
        cfg.train.teacher.heuristic = heur::HeuristicKind::hadd;
      else if (h == "hmax")
        cfg.train.teacher.heuristic = heur::HeuristicKind::hmax;
      else if (h == "lmcut")
        cfg.train.teacher.heuristic = heur::HeuristicKind::lmcut;
      else
        fail(ErrKind::invalid_argument, "teacher heuristic must be zero|hadd|hmax|lmcut");
    }
    get(t, "epsilon", cfg.train.teacher.epsilon);
    get(t, "timeout", cfg.train.teacher.timeout);
    get(t, "label_tol", cfg.train.teacher.label_tol);
    get(t, "dead_end_penalty", cfg.train.teacher.fsspude.dead_end_penalty);
    get(t, "rollout_step_limit", cfg.train.teacher.fsspude.rollout_step_limit);
  }
  if (j.contains("eval")) {
    const json& e = j.at("eval");
    check_keys(e, {"rollouts", "mode", "step_limit"}, "eval");
    get(e, "rollouts", cfg.eval.rollouts_per_problem);
    get(e, "step_limit", cfg.eval.step_limit);
    if (e.contains("mode")) {
      std::string m = e.at("mode").get<std::string>();
      if (m == "argmax")
        cfg.eval.mode = train::ExecutionMode::argmax_lex;
      else if (m == "stochastic")
        cfg.eval.mode = train::ExecutionMode::sample;
      else if (m == "argmax-random-tie")
        cfg.eval.mode = train::ExecutionMode::argmax_random_tie;
      else
        fail(ErrKind::invalid_argument, "eval mode must be argmax|stochastic|argmax-random-tie");
    }
  }
  uint64_t seed = 0;
  get(j, "seed", seed);
  cfg.set_seed(seed);
  return cfg;
}

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrKind::invalid_argument, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& cfg) {
  json t;
  t["search"] = cfg.train.teacher.search == teach::TeacherConfig::astar
                    ? "astar"
                    : cfg.train.teacher.search == teach::TeacherConfig::gbfs ? "gbfs" : "lrtdp";
  t["heuristic"] = cfg.train.teacher.heuristic == heur::HeuristicKind::zero
                       ? "zero"
                       : cfg.train.teacher.heuristic == heur::HeuristicKind::hadd
                             ? "hadd"
                             : cfg.train.teacher.heuristic == heur::HeuristicKind::hmax ? "hmax"
                                                                                        : "lmcut";
  t["epsilon"] = cfg.train.teacher.epsilon;
  t["timeout"] = cfg.train.teacher.timeout;
  t["label_tol"] = cfg.train.teacher.label_tol;
  t["dead_end_penalty"] = cfg.train.teacher.fsspude.dead_end_penalty;
  t["rollout_step_limit"] = cfg.train.teacher.fsspude.rollout_step_limit;
  json e;
  e["rollouts"] = cfg.eval.rollouts_per_problem;
  e["mode"] = cfg.eval.mode == train::ExecutionMode::argmax_lex
                  ? "argmax"
                  : cfg.eval.mode == train::ExecutionMode::sample ? "stochastic"
                                                                  : "argmax-random-tie";
  e["step_limit"] = cfg.eval.step_limit;
  json j;
  j["layers"] = cfg.train.L;
  j["hidden_dim"] = cfg.train.d_h;
  j["n_traj"] = cfg.train.n_traj;
  j["t_train"] = cfg.train.t_train;
  j["batch_size"] = cfg.train.batch_size;
  j["lr"] = cfg.train.lr;
  j["lambda_l2"] = cfg.train.lambda_l2;
  j["gamma_l1"] = cfg.train.gamma_l1;
  j["dropout"] = cfg.train.dropout;
  j["t_stop"] = cfg.train.t_stop;
  j["p_solved"] = cfg.train.p_solved;
  j["max_wall_seconds"] = cfg.train.max_wall_seconds;
  j["max_epochs"] = cfg.train.max_epochs;
  j["step_limit"] = cfg.train.exploration_step_limit;
  j["landmarks"] = cfg.train.flags.landmarks;
  j["history"] = cfg.train.flags.history;
  j["skip"] = cfg.train.flags.skip;
  j["pooling"] = cfg.train.flags.position_pooling ? "position" : "schema";
  j["seed"] = cfg.seed;
  j["jobs"] = cfg.jobs;
  j["prune_tau"] = cfg.prune_tau;
  j["ground_action_cap"] = cfg.ground_action_cap;
  if (!cfg.train.checkpoint_dir.empty()) j["checkpoint_dir"] = cfg.train.checkpoint_dir;
  if (cfg.train.checkpoint_every) j["checkpoint_every"] = cfg.train.checkpoint_every;
  if (!cfg.train.lr_schedule.empty()) {
    json sched = json::array();
    for (const auto& [epoch, lr] : cfg.train.lr_schedule) sched.push_back({epoch, lr});
    j["lr_schedule"] = sched;
  }
  j["teacher"] = t;
  j["eval"] = e;
  return j;
}

}  // namespace asnets
