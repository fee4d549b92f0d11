#include "asnets/asnets.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "core/config.hpp"
#include "core/dom/generators.hpp"
#include "core/eval/equations.hpp"
#include "core/eval/verify.hpp"
#include "core/net/checkpoint.hpp"
#include "core/ppddl/parser.hpp"

struct asn_ctx {
  std::string last_error;
};

struct asn_task {
  asnets::RunConfig cfg;
  asnets::train::ProblemContext ctx;
};

struct asn_model {
  asnets::net::ParameterStore store;
};

namespace {

using namespace asnets;

int code_of(const Error& e) {
  switch (e.kind()) {
    case ErrKind::io:
      return ASN_ERR_IO;
    case ErrKind::syntax:
      return ASN_ERR_PARSE;
    case ErrKind::unsupported_feature:
      return ASN_ERR_UNSUPPORTED;
    case ErrKind::type_mismatch:
      return ASN_ERR_TYPE;
    case ErrKind::grounding_explosion:
    case ErrKind::cap_exceeded:
      return ASN_ERR_LIMIT;
    case ErrKind::shape_mismatch:
    case ErrKind::corrupt_checkpoint:
    case ErrKind::tape_mismatch:
      return ASN_ERR_SHAPE;
    case ErrKind::verify:
      return ASN_ERR_VERIFY;
    case ErrKind::invalid_argument:
    case ErrKind::empty_batch:
      return ASN_ERR_INVALID;
    default:
      return ASN_ERR_RUNTIME;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
int guarded(asn_ctx* ctx, F&& fn) {
  if (!ctx) return ASN_ERR_INVALID;
  ctx->last_error.clear();
  try {
    return fn();
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return ASN_ERR_RUNTIME;
  }
}

ssp::State parse_state_arg(asn_task* task, const char* state_json) {
  if (!state_json) return task->ctx.gp->s0;
  nlohmann::json j = nlohmann::json::parse(state_json);
  std::vector<std::string> names;
  for (const auto& n : j) names.push_back(n.get<std::string>());
  return ssp::state_from_names(*task->ctx.gp, names);
}

}  // namespace

extern "C" {

asn_ctx* asn_ctx_new(void) { return new asn_ctx(); }
void asn_ctx_free(asn_ctx* ctx) { delete ctx; }
const char* asn_last_error(const asn_ctx* ctx) { return ctx ? ctx->last_error.c_str() : ""; }
void asn_string_free(char* s) { std::free(s); }

int asn_generate(asn_ctx* ctx, const char* id, int size, uint64_t seed, char** domain_out,
                 char** problem_out) {
  return guarded(ctx, [&] {
    dom::Generated gen = dom::generate(id, size, seed);
    if (domain_out) *domain_out = dup_string(gen.domain);
    if (problem_out) *problem_out = dup_string(gen.problem);
    return ASN_OK;
  });
}

static int load_task(asn_ctx* ctx, const std::string& domain_text,
                     const std::string& problem_text, const char* config_json, asn_task** out) {
  return guarded(ctx, [&] {
    RunConfig cfg = config_from_json_text(config_json && *config_json ? config_json : "{}");
    ppddl::DomainDef dom = ppddl::parse_domain(domain_text);
    ppddl::ProblemDef prob = ppddl::parse_problem(problem_text, dom);
    ppddl::GroundOptions opts;
    opts.action_cap = cfg.ground_action_cap;
    auto gp = std::make_shared<ppddl::GroundProblem>(ppddl::ground(dom, prob, opts));
    auto* task = new asn_task{
        cfg, train::ProblemContext(std::move(gp), cfg.train.L, cfg.train.d_h, cfg.train.flags)};
    *out = task;
    return ASN_OK;
  });
}

int asn_task_load(asn_ctx* ctx, const char* domain_path, const char* problem_path,
                  const char* config_json, asn_task** out) {
  return guarded(ctx, [&] {
    return load_task(ctx, read_file(domain_path), read_file(problem_path), config_json, out);
  });
}

int asn_task_load_text(asn_ctx* ctx, const char* domain_text, const char* problem_text,
                       const char* config_json, asn_task** out) {
  return load_task(ctx, domain_text, problem_text, config_json, out);
}

void asn_task_free(asn_task* task) { delete task; }

int asn_task_report(asn_ctx* ctx, const asn_task* task, char** json_out) {
  return guarded(ctx, [&] {
    *json_out = dup_string(ppddl::grounding_report_json(*task->ctx.gp));
    return ASN_OK;
  });
}

int asn_task_topology(asn_ctx* ctx, const asn_task* task, char** json_out) {
  return guarded(ctx, [&] {
    *json_out = dup_string(rel::topology_json(task->ctx.topo));
    return ASN_OK;
  });
}

int asn_model_init(asn_ctx* ctx, const asn_task* task, uint64_t seed, asn_model** out) {
  return guarded(ctx, [&] {
    Rng rng(mix_seed(seed, 0x696e6974));
    *out = new asn_model{net::init_params(task->ctx.topo.sig, task->cfg.train.L,
                                          task->cfg.train.d_h, task->cfg.train.flags, rng)};
    return ASN_OK;
  });
}

int asn_model_load(asn_ctx* ctx, const char* path, asn_model** out) {
  return guarded(ctx, [&] {
    *out = new asn_model{net::load_checkpoint(path)};
    return ASN_OK;
  });
}

int asn_model_save(asn_ctx* ctx, const asn_model* model, const char* path) {
  return guarded(ctx, [&] {
    net::save_checkpoint(model->store, path);
    return ASN_OK;
  });
}

void asn_model_free(asn_model* model) { delete model; }

int asn_teach(asn_ctx* ctx, asn_task* task, const char* state_json, char** json_out) {
  return guarded(ctx, [&] {
    ssp::State s = parse_state_arg(task, state_json);
    teach::TeacherConfig tc = task->cfg.train.teacher;
    tc.seed = task->cfg.seed;
    if (tc.search != teach::TeacherConfig::lrtdp && !task->ctx.gp->deterministic())
      tc.search = teach::TeacherConfig::lrtdp;
    teach::Teacher teacher(*task->ctx.gp, tc);
    *json_out = dup_string(teach::verdict_json(*task->ctx.gp, s, teacher.q_values(s)));
    return ASN_OK;
  });
}

int asn_inspect_heuristic(asn_ctx* ctx, asn_task* task, const char* state_json,
                          char** json_out) {
  return guarded(ctx, [&] {
    ssp::State s = parse_state_arg(task, state_json);
    const ppddl::GroundProblem& gp = *task->ctx.gp;
    ppddl::GroundProblem det = gp.deterministic() ? gp : ssp::all_outcomes_determinise(gp);
    heur::RelaxedEvaluator eval(det);
    auto hv = [&](const heur::HeuristicValue& v) {
      nlohmann::json j;
      if (v.unreachable)
        j = "unreachable";
      else
        j = v.value;
      return j;
    };
    heur::LmCutResult lc = eval.lmcut(s);
    nlohmann::json landmarks = nlohmann::json::array();
    for (const auto& lm : lc.landmarks) {
      nlohmann::json names = nlohmann::json::array();
      for (int src : lm.source_actions) names.push_back(gp.actions[src].name);
      landmarks.push_back(names);
    }
    nlohmann::json features = nlohmann::json::array();
    for (const auto& bits : heur::landmark_features(gp, s))
      features.push_back({bits[0], bits[1], bits[2]});
    nlohmann::json j{{"state", nlohmann::json::parse(ssp::state_json(gp, s))},
                     {"hadd", hv(eval.hadd(s))},
                     {"hmax", hv(eval.hmax(s))},
                     {"lmcut", hv(lc.value)},
                     {"landmarks", landmarks},
                     {"landmark_features", features}};
    *json_out = dup_string(j.dump());
    return ASN_OK;
  });
}

int asn_train(asn_ctx* ctx, asn_task* const* tasks, size_t n_tasks, int sparse,
              char** log_json_out, asn_model** model_out) {
  return guarded(ctx, [&] {
    if (n_tasks == 0) fail(ErrKind::invalid_argument, "no training tasks");
    std::vector<train::ProblemContext> problems;
    for (size_t i = 0; i < n_tasks; ++i)
      problems.emplace_back(tasks[i]->ctx.gp, tasks[0]->cfg.train.L, tasks[0]->cfg.train.d_h,
                            tasks[0]->cfg.train.flags);
    std::ostringstream log;
    train::TrainHooks hooks;
    hooks.on_epoch = [&](const train::EpochReport& r) {
      log << train::epoch_report_json(r) << "\n";
    };
    train::TrainResult result =
        sparse ? train::sparse_train(problems, tasks[0]->cfg.train, tasks[0]->cfg.prune_tau, hooks)
               : train::train(problems, tasks[0]->cfg.train, hooks);
    if (log_json_out) *log_json_out = dup_string(log.str());
    *model_out = new asn_model{std::move(result.store)};
    return ASN_OK;
  });
}

int asn_eval(asn_ctx* ctx, const asn_model* model, asn_task* const* tasks, size_t n_tasks,
             char** report_json_out, char** table_out) {
  return guarded(ctx, [&] {
    if (n_tasks == 0) fail(ErrKind::invalid_argument, "no evaluation tasks");
    std::vector<train::ProblemContext> problems;
    for (size_t i = 0; i < n_tasks; ++i) {
      net::validate_against(model->store, *tasks[i]->ctx.gp->domain);
      problems.emplace_back(tasks[i]->ctx.gp, model->store.L, model->store.d_h,
                            model->store.flags);
    }
    eval::EvalConfig ec = tasks[0]->cfg.eval;
    ec.jobs = tasks[0]->cfg.jobs;
    eval::CoverageReport report = eval::evaluate(model->store, problems, ec);
    if (report_json_out) *report_json_out = dup_string(eval::coverage_json(report));
    if (table_out) *table_out = dup_string(eval::coverage_table(report));
    return ASN_OK;
  });
}

int asn_rollout(asn_ctx* ctx, const asn_model* model, asn_task* task, int stochastic,
                uint64_t seed, char** trace_json_out) {
  return guarded(ctx, [&] {
    net::validate_against(model->store, *task->ctx.gp->domain);
    train::ProblemContext local(task->ctx.gp, model->store.L, model->store.d_h,
                                model->store.flags);
    Rng rng(mix_seed(seed, 0x726f6c6c));
    train::RolloutRecord rec = train::run_policy(
        model->store, local, task->ctx.gp->s0, rng, task->cfg.eval.step_limit,
        stochastic ? train::ExecutionMode::sample : train::ExecutionMode::argmax_lex);
    nlohmann::json steps = nlohmann::json::array();
    for (size_t i = 0; i < rec.states.size(); ++i) {
      nlohmann::json step{{"state",
                           nlohmann::json::parse(ssp::state_json(*task->ctx.gp, rec.states[i]))}};
      if (i < rec.actions.size()) step["action"] = task->ctx.gp->actions[rec.actions[i]].name;
      steps.push_back(std::move(step));
    }
    nlohmann::json j{{"problem", task->ctx.gp->problem_name},
                     {"reached_goal", rec.reached_goal},
                     {"dead_end", rec.dead_end},
                     {"truncated", rec.truncated},
                     {"cost", rec.cost},
                     {"steps", steps}};
    *trace_json_out = dup_string(j.dump());
    return ASN_OK;
  });
}

int asn_receptive_field(asn_ctx* ctx, const char* config_json, char** grid_json_out,
                        char** table_out) {
  return guarded(ctx, [&] {
    eval::ReceptiveFieldConfig cfg;
    if (config_json && *config_json) {
      nlohmann::json j = nlohmann::json::parse(config_json);
      if (j.contains("L_values")) cfg.L_values = j.at("L_values").get<std::vector<int>>();
      if (j.contains("K_values")) cfg.K_values = j.at("K_values").get<std::vector<int>>();
      if (j.contains("rollouts")) cfg.rollouts = j.at("rollouts").get<int>();
      if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
      if (j.contains("wall_per_L")) cfg.wall_per_L = j.at("wall_per_L").get<double>();
      if (j.contains("max_epochs")) cfg.max_epochs = j.at("max_epochs").get<int>();
      if (j.contains("t_train")) cfg.t_train = j.at("t_train").get<int>();
      if (j.contains("hidden_dim")) cfg.d_h = j.at("hidden_dim").get<int>();
    }
    eval::ReceptiveFieldResult result = eval::receptive_field_experiment(cfg);
    if (grid_json_out) *grid_json_out = dup_string(eval::receptive_field_json(result));
    if (table_out) *table_out = dup_string(eval::receptive_field_table(result));
    return ASN_OK;
  });
}

int asn_export_equations(asn_ctx* ctx, const asn_model* model, const asn_task* task, double tau,
                         char** json_out, char** text_out) {
  return guarded(ctx, [&] {
    net::validate_against(model->store, *task->ctx.gp->domain);
    nlohmann::json dump =
        eval::export_lifted_equations(model->store, *task->ctx.gp->domain, tau);
    if (json_out) *json_out = dup_string(dump.dump(1));
    if (text_out) *text_out = dup_string(eval::lifted_equations_text(dump));
    return ASN_OK;
  });
}

int asn_export_activations(asn_ctx* ctx, const asn_model* model, asn_task* task, uint64_t seed,
                           char** json_out, char** csv_out) {
  return guarded(ctx, [&] {
    net::validate_against(model->store, *task->ctx.gp->domain);
    train::ProblemContext local(task->ctx.gp, model->store.L, model->store.d_h,
                                model->store.flags);
    Rng rng(mix_seed(seed, 0xac7));
    train::RolloutRecord rec =
        train::run_policy(model->store, local, task->ctx.gp->s0, rng,
                          task->cfg.eval.step_limit, train::ExecutionMode::argmax_lex);
    nlohmann::json steps = nlohmann::json::array();
    std::ostringstream csv;
    csv << "step,module,kind,layer,channel,value\n";
    for (size_t i = 0; i < rec.states.size(); ++i) {
      std::vector<uint8_t> enabled = local.enabled_mask(rec.states[i]);
      bool any = false;
      for (uint8_t e : enabled) any |= e;
      if (!any) break;
      net::ForwardOptions opts;
      if (local.topo.flags.landmarks) opts.landmarks = &local.landmarks(rec.states[i]);
      if (local.topo.flags.history) opts.counts = &rec.counts[i];
      net::Tape tape;
      net::forward(model->store, local.topo, rec.states[i], enabled, opts, &tape);
      nlohmann::json step = nlohmann::json::parse(net::activations_json(tape));
      step["step"] = i + 1;
      if (i < rec.actions.size())
        step["chosen"] = task->ctx.gp->actions[rec.actions[i]].name;
      steps.push_back(std::move(step));
      std::istringstream lines(net::activations_csv(tape));
      std::string line;
      std::getline(lines, line);  // header
      while (std::getline(lines, line)) csv << (i + 1) << "," << line << "\n";
    }
    nlohmann::json j{{"problem", task->ctx.gp->problem_name},
                     {"reached_goal", rec.reached_goal},
                     {"steps", steps}};
    if (json_out) *json_out = dup_string(j.dump());
    if (csv_out) *csv_out = dup_string(csv.str());
    return ASN_OK;
  });
}

int asn_verify_sparse(asn_ctx* ctx, const asn_model* model, const char* domain_id, int size,
                      int rollouts, uint64_t seed, char** report_json_out) {
  return guarded(ctx, [&] {
    std::string id = domain_id ? domain_id : "";
    nlohmann::json report;
    if (id == "cosanostra" || id == "cn") {
      report = eval::cn_verify_json(
          eval::verify_cosanostra_inequality(model->store, size, rollouts, seed));
    } else if (id == "ttw" || id == "triangle-tireworld") {
      report = eval::ttw_verify_json(eval::verify_ttw_sparse(model->store, size, rollouts, seed));
    } else {
      fail(ErrKind::invalid_argument, "verify-sparse supports 'cosanostra' and 'ttw'");
    }
    if (report_json_out) *report_json_out = dup_string(report.dump());
    return ASN_OK;
  });
}

}  // extern "C"
