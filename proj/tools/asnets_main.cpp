// Command-line front end; everything goes through the public C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include "asnets/asnets.h"

namespace {

using nlohmann::json;

int log_level() {
  const char* env = std::getenv("ASNET_LOG");
  if (!env) return 1;
  std::string v = env;
  if (v == "quiet" || v == "0") return 0;
  if (v == "debug" || v == "2") return 2;
  return 1;
}

void info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[asnets] " << msg << "\n";
}

struct CtxGuard {
  asn_ctx* ctx = asn_ctx_new();
  ~CtxGuard() { asn_ctx_free(ctx); }
};

struct TaskGuard {
  asn_task* task = nullptr;
  ~TaskGuard() { asn_task_free(task); }
};

struct ModelGuard {
  asn_model* model = nullptr;
  ~ModelGuard() { asn_model_free(model); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  asn_string_free(s);
  return out;
}

[[noreturn]] void die(asn_ctx* ctx, const std::string& what) {
  std::cerr << "error: " << what;
  const char* detail = asn_last_error(ctx);
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(1);
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << (content.empty() || content.back() == '\n' ? "" : "\n");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(1);
  }
  out << content;
}

// Shared options merged into one RunConfig JSON document.
struct CommonOpts {
  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
  double time_budget = 0;
  std::vector<std::string> overrides;  // key=json-value
  bool dump_config = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--seed", seed, "random seed")->each([this](const std::string&) {
      seed_set = true;
    });
    cmd->add_option("--jobs", jobs, "parallel rollout workers");
    cmd->add_option("--time-budget", time_budget, "wall budget in seconds");
    cmd->add_option("--set", overrides, "config override key=value (value is JSON)");
    cmd->add_flag("--dump-effective-config", dump_config, "print the merged config and exit");
  }

  std::string merged() const {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read config " << config_path << "\n";
        std::exit(1);
      }
      in >> j;
    }
    if (seed_set) j["seed"] = seed;
    if (jobs > 0) j["jobs"] = jobs;
    if (time_budget > 0) j["max_wall_seconds"] = time_budget;
    for (const auto& kv : overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --set expects key=value\n";
        std::exit(2);
      }
      std::string key = kv.substr(0, eq);
      json value = json::parse(kv.substr(eq + 1), nullptr, false);
      if (value.is_discarded()) value = kv.substr(eq + 1);  // bare strings allowed
      // dotted keys address nested sections
      json* slot = &j;
      size_t start = 0;
      while (true) {
        size_t dot = key.find('.', start);
        std::string part = key.substr(start, dot - start);
        if (dot == std::string::npos) {
          (*slot)[part] = value;
          break;
        }
        slot = &(*slot)[part];
        start = dot + 1;
      }
    }
    return j.dump();
  }
};

asn_task* load_task_or_die(asn_ctx* ctx, const std::string& domain, const std::string& problem,
                           const std::string& cfg) {
  asn_task* task = nullptr;
  if (asn_task_load(ctx, domain.c_str(), problem.c_str(), cfg.c_str(), &task) != ASN_OK)
    die(ctx, "loading " + problem);
  return task;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asnets: generalised planning policies for PPDDL domains"};
  app.require_subcommand(1);

  CtxGuard ctx;

  // gen-domain
  auto* gen = app.add_subcommand("gen-domain", "write a built-in domain/problem pair");
  std::string gen_id, gen_out, gen_domain_out;
  int gen_size = 1;
  uint64_t gen_seed = 0;
  gen->add_option("id", gen_id, "ttw|cosanostra|two-chain|two-chain-right|bw|pbw")->required();
  gen->add_option("--size", gen_size, "instance size")->required();
  gen->add_option("--seed", gen_seed, "instance seed (blocksworld)");
  gen->add_option("-o,--out", gen_out, "problem file path")->required();
  gen->add_option("--domain-out", gen_domain_out, "domain file path (default <id>.pddl)");

  // ground
  auto* ground = app.add_subcommand("ground", "parse + ground, print the grounding report");
  std::string g_domain, g_problem;
  bool g_topology = false;
  CommonOpts g_opts;
  ground->add_option("domain", g_domain)->required();
  ground->add_option("problem", g_problem)->required();
  ground->add_flag("--emit-topology", g_topology, "dump the network wiring as JSON");
  g_opts.attach(ground);

  // teach
  auto* teach = app.add_subcommand("teach", "dump a teacher verdict for a state");
  std::string t_domain, t_problem, t_state;
  CommonOpts t_opts;
  teach->add_option("domain", t_domain)->required();
  teach->add_option("problem", t_problem)->required();
  teach->add_option("--state", t_state, "JSON array of true propositions (default: s0)");
  t_opts.attach(teach);

  // inspect-heuristic
  auto* inspect = app.add_subcommand("inspect-heuristic", "h-add/h-max/LM-cut for a state");
  std::string ih_domain, ih_problem, ih_state;
  CommonOpts ih_opts;
  inspect->add_option("domain", ih_domain)->required();
  inspect->add_option("problem", ih_problem)->required();
  inspect->add_option("--state", ih_state, "JSON array of true propositions (default: s0)");
  ih_opts.attach(inspect);

  // train / sparsify
  std::string tr_domain, tr_out, tr_log;
  std::vector<std::string> tr_problems;
  CommonOpts tr_opts;
  bool tr_sparse = false;
  for (const char* name : {"train", "sparsify"}) {
    auto* cmd = app.add_subcommand(
        name, std::string(name) == "train" ? "imitation-train a policy"
                                           : "train with the l1 recipe and prune");
    cmd->add_option("domain", tr_domain)->required();
    cmd->add_option("problems", tr_problems, "training problem files")->required();
    cmd->add_option("-o,--out", tr_out, "checkpoint output path")->required();
    cmd->add_option("--log", tr_log, "epoch log (JSON lines)");
    tr_opts.attach(cmd);
  }

  // eval
  auto* ev = app.add_subcommand("eval", "coverage report for a trained policy");
  std::string ev_model, ev_domain, ev_json_out;
  std::vector<std::string> ev_problems;
  CommonOpts ev_opts;
  ev->add_option("model", ev_model)->required();
  ev->add_option("domain", ev_domain)->required();
  ev->add_option("problems", ev_problems)->required();
  ev->add_option("--json-out", ev_json_out, "write the JSON report here");
  ev_opts.attach(ev);

  // rollout
  auto* ro = app.add_subcommand("rollout", "execute the policy once, print the trace");
  std::string ro_model, ro_domain, ro_problem;
  bool ro_stochastic = false;
  CommonOpts ro_opts;
  ro->add_option("model", ro_model)->required();
  ro->add_option("domain", ro_domain)->required();
  ro->add_option("problem", ro_problem)->required();
  ro->add_flag("--stochastic", ro_stochastic, "sample from pi instead of argmax");
  ro_opts.attach(ro);

  // receptive-field
  auto* rf = app.add_subcommand("receptive-field", "depth-vs-chain-length coverage grid");
  std::string rf_out;
  CommonOpts rf_opts;
  double rf_wall = 480.0;
  int rf_epochs = 60, rf_ttrain = 700, rf_rollouts = 30;
  rf->add_option("--out", rf_out, "write the grid JSON here");
  rf->add_option("--wall-per-depth", rf_wall, "training budget per depth (seconds)");
  rf->add_option("--max-epochs", rf_epochs);
  rf->add_option("--t-train", rf_ttrain);
  rf->add_option("--rollouts", rf_rollouts);
  rf_opts.attach(rf);

  // export-equations
  auto* eq = app.add_subcommand("export-equations", "lifted equations of a sparse policy");
  std::string eq_model, eq_domain, eq_problem, eq_json_out;
  double eq_tau = 0.01;
  CommonOpts eq_opts;
  eq->add_option("model", eq_model)->required();
  eq->add_option("domain", eq_domain)->required();
  eq->add_option("problem", eq_problem, "any instance of the domain")->required();
  eq->add_option("--tau", eq_tau, "omit weights below this magnitude");
  eq->add_option("--json-out", eq_json_out);
  eq_opts.attach(eq);

  // export-activations
  auto* ac = app.add_subcommand("export-activations", "per-module activations along a rollout");
  std::string ac_model, ac_domain, ac_problem, ac_json_out, ac_csv_out;
  CommonOpts ac_opts;
  ac->add_option("model", ac_model)->required();
  ac->add_option("domain", ac_domain)->required();
  ac->add_option("problem", ac_problem)->required();
  ac->add_option("--json-out", ac_json_out);
  ac->add_option("--csv-out", ac_csv_out);
  ac_opts.attach(ac);

  // verify-sparse
  auto* vs = app.add_subcommand("verify-sparse", "check a compact policy's guarantees");
  std::string vs_domain, vs_weights;
  int vs_K = 5, vs_size = 0, vs_rollouts = 30;
  CommonOpts vs_opts;
  vs->add_option("--domain", vs_domain, "cosanostra | ttw")->required();
  vs->add_option("--weights", vs_weights, "checkpoint path")->required();
  vs->add_option("--K", vs_K, "booth count (cosanostra)");
  vs->add_option("--size", vs_size, "triangle size (ttw)");
  vs->add_option("--rollouts", vs_rollouts);
  vs_opts.attach(vs);

  CLI11_PARSE(app, argc, argv);

  auto maybe_dump = [&](const CommonOpts& opts) {
    if (!opts.dump_config) return;
    asn_task* probe = nullptr;
    // merge through the load path so defaults materialise
    char* dom = nullptr;
    char* prob = nullptr;
    asn_generate(ctx.ctx, "two-chain", 1, 0, &dom, &prob);
    if (asn_task_load_text(ctx.ctx, dom, prob, opts.merged().c_str(), &probe) != ASN_OK)
      die(ctx.ctx, "config");
    asn_string_free(dom);
    asn_string_free(prob);
    asn_task_free(probe);
    std::cout << opts.merged() << "\n";
    std::exit(0);
  };

  if (gen->parsed()) {
    char* dom = nullptr;
    char* prob = nullptr;
    if (asn_generate(ctx.ctx, gen_id.c_str(), gen_size, gen_seed, &dom, &prob) != ASN_OK)
      die(ctx.ctx, "gen-domain");
    std::string domain_path = gen_domain_out.empty() ? gen_id + ".pddl" : gen_domain_out;
    write_or_print(domain_path, take(dom));
    write_or_print(gen_out, take(prob));
    info("wrote " + domain_path + " and " + gen_out);
    return 0;
  }

  if (ground->parsed()) {
    maybe_dump(g_opts);
    TaskGuard task;
    task.task = load_task_or_die(ctx.ctx, g_domain, g_problem, g_opts.merged());
    char* out = nullptr;
    if (g_topology) {
      if (asn_task_topology(ctx.ctx, task.task, &out) != ASN_OK) die(ctx.ctx, "topology");
    } else {
      if (asn_task_report(ctx.ctx, task.task, &out) != ASN_OK) die(ctx.ctx, "report");
    }
    std::cout << take(out) << "\n";
    return 0;
  }

  if (teach->parsed()) {
    maybe_dump(t_opts);
    TaskGuard task;
    task.task = load_task_or_die(ctx.ctx, t_domain, t_problem, t_opts.merged());
    char* out = nullptr;
    if (asn_teach(ctx.ctx, task.task, t_state.empty() ? nullptr : t_state.c_str(), &out) !=
        ASN_OK)
      die(ctx.ctx, "teach");
    std::cout << take(out) << "\n";
    return 0;
  }

  if (inspect->parsed()) {
    maybe_dump(ih_opts);
    TaskGuard task;
    task.task = load_task_or_die(ctx.ctx, ih_domain, ih_problem, ih_opts.merged());
    char* out = nullptr;
    if (asn_inspect_heuristic(ctx.ctx, task.task, ih_state.empty() ? nullptr : ih_state.c_str(),
                              &out) != ASN_OK)
      die(ctx.ctx, "inspect-heuristic");
    std::cout << take(out) << "\n";
    return 0;
  }

  for (const char* name : {"train", "sparsify"}) {
    CLI::App* cmd = app.get_subcommand(name);
    if (!cmd->parsed()) continue;
    maybe_dump(tr_opts);
    tr_sparse = std::string(name) == "sparsify";
    std::vector<asn_task*> tasks;
    for (const auto& p : tr_problems)
      tasks.push_back(load_task_or_die(ctx.ctx, tr_domain, p, tr_opts.merged()));
    char* log = nullptr;
    asn_model* model = nullptr;
    info("training on " + std::to_string(tasks.size()) + " problems");
    int rc = asn_train(ctx.ctx, tasks.data(), tasks.size(), tr_sparse ? 1 : 0, &log, &model);
    for (auto* t : tasks) asn_task_free(t);
    if (rc != ASN_OK) die(ctx.ctx, "train");
    if (!tr_log.empty()) write_or_print(tr_log, take(log));
    else asn_string_free(log);
    if (asn_model_save(ctx.ctx, model, tr_out.c_str()) != ASN_OK) die(ctx.ctx, "save");
    asn_model_free(model);
    info("checkpoint written to " + tr_out);
    return 0;
  }

  if (ev->parsed()) {
    maybe_dump(ev_opts);
    ModelGuard model;
    if (asn_model_load(ctx.ctx, ev_model.c_str(), &model.model) != ASN_OK) die(ctx.ctx, "model");
    std::vector<asn_task*> tasks;
    for (const auto& p : ev_problems)
      tasks.push_back(load_task_or_die(ctx.ctx, ev_domain, p, ev_opts.merged()));
    char* report = nullptr;
    char* table = nullptr;
    int rc = asn_eval(ctx.ctx, model.model, tasks.data(), tasks.size(), &report, &table);
    for (auto* t : tasks) asn_task_free(t);
    if (rc != ASN_OK) die(ctx.ctx, "eval");
    std::cout << take(table);
    if (!ev_json_out.empty()) write_or_print(ev_json_out, take(report));
    else asn_string_free(report);
    return 0;
  }

  if (ro->parsed()) {
    maybe_dump(ro_opts);
    ModelGuard model;
    if (asn_model_load(ctx.ctx, ro_model.c_str(), &model.model) != ASN_OK) die(ctx.ctx, "model");
    TaskGuard task;
    task.task = load_task_or_die(ctx.ctx, ro_domain, ro_problem, ro_opts.merged());
    char* out = nullptr;
    if (asn_rollout(ctx.ctx, model.model, task.task, ro_stochastic ? 1 : 0, ro_opts.seed,
                    &out) != ASN_OK)
      die(ctx.ctx, "rollout");
    std::cout << take(out) << "\n";
    return 0;
  }

  if (rf->parsed()) {
    json cfg{{"seed", rf_opts.seed},
             {"wall_per_L", rf_wall},
             {"max_epochs", rf_epochs},
             {"t_train", rf_ttrain},
             {"rollouts", rf_rollouts}};
    char* grid = nullptr;
    char* table = nullptr;
    if (asn_receptive_field(ctx.ctx, cfg.dump().c_str(), &grid, &table) != ASN_OK)
      die(ctx.ctx, "receptive-field");
    std::cout << take(table);
    if (!rf_out.empty()) write_or_print(rf_out, take(grid));
    else asn_string_free(grid);
    return 0;
  }

  if (eq->parsed()) {
    maybe_dump(eq_opts);
    ModelGuard model;
    if (asn_model_load(ctx.ctx, eq_model.c_str(), &model.model) != ASN_OK) die(ctx.ctx, "model");
    TaskGuard task;
    task.task = load_task_or_die(ctx.ctx, eq_domain, eq_problem, eq_opts.merged());
    char* js = nullptr;
    char* text = nullptr;
    if (asn_export_equations(ctx.ctx, model.model, task.task, eq_tau, &js, &text) != ASN_OK)
      die(ctx.ctx, "export-equations");
    std::cout << take(text);
    if (!eq_json_out.empty()) write_or_print(eq_json_out, take(js));
    else asn_string_free(js);
    return 0;
  }

  if (ac->parsed()) {
    maybe_dump(ac_opts);
    ModelGuard model;
    if (asn_model_load(ctx.ctx, ac_model.c_str(), &model.model) != ASN_OK) die(ctx.ctx, "model");
    TaskGuard task;
    task.task = load_task_or_die(ctx.ctx, ac_domain, ac_problem, ac_opts.merged());
    char* js = nullptr;
    char* csv = nullptr;
    if (asn_export_activations(ctx.ctx, model.model, task.task, ac_opts.seed, &js, &csv) !=
        ASN_OK)
      die(ctx.ctx, "export-activations");
    if (!ac_json_out.empty()) write_or_print(ac_json_out, take(js));
    else asn_string_free(js);
    if (!ac_csv_out.empty()) write_or_print(ac_csv_out, take(csv));
    else std::cout << take(csv);
    return 0;
  }

  if (vs->parsed()) {
    ModelGuard model;
    if (asn_model_load(ctx.ctx, vs_weights.c_str(), &model.model) != ASN_OK)
      die(ctx.ctx, "model");
    int size = vs_domain == "ttw" ? (vs_size > 0 ? vs_size : vs_K) : vs_K;
    char* report = nullptr;
    if (asn_verify_sparse(ctx.ctx, model.model, vs_domain.c_str(), size, vs_rollouts,
                          vs_opts.seed, &report) != ASN_OK)
      die(ctx.ctx, "verify-sparse");
    std::string text = take(report);
    std::cout << text << "\n";
    json j = json::parse(text);
    return j.at("ok").get<bool>() ? 0 : 1;
  }

  return 2;
}
