#include "core/eval/verify.hpp"

#include <cmath>

#include "core/dom/generators.hpp"
#include "core/net/checkpoint.hpp"

namespace asnets::eval {

using nlohmann::json;

namespace {

int require_action(const GroundProblem& gp, const std::string& name) {
  int idx = gp.find_action(name);
  if (idx < 0) fail(ErrKind::verify, "missing expected ground action '" + name + "'");
  return idx;
}

int require_prop(const GroundProblem& gp, const std::string& name) {
  int idx = gp.find_prop(name);
  if (idx < 0) fail(ErrKind::verify, "missing expected proposition '" + name + "'");
  return idx;
}

int schema_index(const rel::SchemaSignature& sig, const std::string& name) {
  for (size_t i = 0; i < sig.schema_names.size(); ++i)
    if (sig.schema_names[i] == name) return static_cast<int>(i);
  fail(ErrKind::verify, "schema '" + name + "' not in signature");
}

}  // namespace

CnVerifyResult verify_cosanostra_inequality(const ParameterStore& store, int booths,
                                            int rollouts, uint64_t seed) {
  if (booths < 3)
    fail(ErrKind::invalid_argument, "interior-booth check needs at least 3 booths");
  dom::Generated gen = dom::gen_cosanostra(booths);
  ProblemContext ctx =
      train::make_context(gen.domain, gen.problem, store.L, store.d_h, store.flags);
  const GroundProblem& gp = *ctx.gp;
  net::validate_against(store, *gp.domain);

  int width = 1;
  for (int k = booths - 1; k >= 10; k /= 10) ++width;
  auto booth = [&](int i) {
    std::string num = std::to_string(i);
    while (static_cast<int>(num.size()) < width) num = "0" + num;
    return "b-" + num;
  };

  // layer-1 pay-operator coefficients drive the reduced comparison:
  // slots are [deliverator-at, tires-intact, open]; the count feature is the
  // last input column
  const int po_schema = schema_index(store.sig, "pay-operator");
  const auto& po1 = store.schema[po_schema][0];
  const int po_slots = 3;
  const int count_col = 2 * po_slots + 1 + (store.flags.landmarks ? 3 : 0);
  const double w_open = po1.W(0, 2);           // truth value of open(?booth)
  const double w_count = po1.W(0, count_col);  // after v, g, applicable
  // final-layer leave-toll-booth coefficient on the destination module
  const int ltb_schema = schema_index(store.sig, "leave-toll-booth");
  const auto& ltb_final = store.schema[ltb_schema][store.L];
  const double w_to = ltb_final.W(0, 4 * store.d_h);  // slot 5 = deliverator-at(?to), ch 0

  CnVerifyResult result;
  result.booths = booths;
  result.ok = true;

  for (int k = 1; k < booths - 1; ++k) {
    // canonical state: carrying the pizza at b_k, everything up to b_k paid
    State s = gp.s0;
    s.reset(require_prop(gp, "deliverator-at(shop)"));
    s.reset(require_prop(gp, "pizza-at(shop)"));
    s.set(require_prop(gp, "have-pizza()"));
    s.set(require_prop(gp, "deliverator-at(" + booth(k) + ")"));
    for (int j = 0; j <= k; ++j) s.set(require_prop(gp, "open(" + booth(j) + ")"));
    std::vector<int> counts(gp.actions.size(), 0);
    counts[require_action(gp, "load-pizza(shop)")] = 1;
    counts[require_action(gp, "leave-open-intersection(shop," + booth(0) + ")")] = 1;
    for (int j = 0; j <= k; ++j) counts[require_action(gp, "pay-operator(" + booth(j) + ")")] = 1;
    for (int j = 0; j < k; ++j)
      counts[require_action(gp, "leave-toll-booth(" + booth(j) + "," + booth(j + 1) + ")")] = 1;

    std::vector<uint8_t> enabled = ctx.enabled_mask(s);
    net::ForwardOptions opts;
    if (store.flags.history) opts.counts = &counts;
    std::vector<heur::LandmarkBits> lm;
    if (store.flags.landmarks) {
      lm = ctx.landmarks(s);
      opts.landmarks = &lm;
    }
    net::Tape tape;
    net::forward(store, ctx.topo, s, enabled, opts, &tape);

    const int fwd = require_action(gp, "leave-toll-booth(" + booth(k) + "," + booth(k + 1) + ")");
    const int bwd = require_action(gp, "leave-toll-booth(" + booth(k) + "," + booth(k - 1) + ")");
    const int da_fwd = require_prop(gp, "deliverator-at(" + booth(k + 1) + ")");
    const int da_bwd = require_prop(gp, "deliverator-at(" + booth(k - 1) + ")");

    CnBoothCheck check;
    check.booth = k;
    check.logit_forward = tape.logits[fwd];
    check.logit_backward = tape.logits[bwd];
    // the final-layer difference reduces to the destination modules alone
    const double da2_fwd = tape.prop[store.L - 1][da_fwd].h(0);
    const double da2_bwd = tape.prop[store.L - 1][da_bwd].h(0);
    check.step1_residual =
        std::abs((check.logit_forward - check.logit_backward) - w_to * (da2_fwd - da2_bwd));
    // unexecuted movement modules make the movement pools equal on both
    // sides, leaving only the pay-operator pooling terms
    const int gi_ltb_from = [&] {
      const auto& groups = store.sig.groups[gp.prop_predicate[da_fwd]];
      for (size_t gi = 0; gi < groups.size(); ++gi)
        if (groups[gi].first == ltb_schema && groups[gi].second == 0) return static_cast<int>(gi);
      fail(ErrKind::verify, "missing leave-toll-booth@1 pooling group");
    }();
    const int gi_ltb_to = [&] {
      const auto& groups = store.sig.groups[gp.prop_predicate[da_fwd]];
      for (size_t gi = 0; gi < groups.size(); ++gi)
        if (groups[gi].first == ltb_schema && groups[gi].second == 4) return static_cast<int>(gi);
      fail(ErrKind::verify, "missing leave-toll-booth@5 pooling group");
    }();
    auto pool_value = [&](int prop, int gi) {
      double best = 0.0;
      bool first = true;
      for (int ai : ctx.topo.graph.members[prop][gi]) {
        double v = tape.act[0][ai].h(0);
        if (first || v > best) best = v;
        first = false;
      }
      return best;
    };
    check.pool_cancel_residual =
        std::abs(pool_value(da_fwd, gi_ltb_from) - pool_value(da_bwd, gi_ltb_from)) +
        std::abs(pool_value(da_fwd, gi_ltb_to) - pool_value(da_bwd, gi_ltb_to));
    // two-term closed form: w_count * count(pay) + w_open * open at each side
    check.reduced_forward = w_count * 0.0 + w_open * 0.0;
    check.reduced_backward = w_count * 1.0 + w_open * 1.0;

    if (!(check.logit_forward > check.logit_backward)) result.ok = false;
    if (!(check.reduced_forward > check.reduced_backward)) result.ok = false;
    if (check.step1_residual > 1e-9 || check.pool_cancel_residual > 1e-9) result.ok = false;
    result.checks.push_back(check);
  }

  // goal-reaching rollouts under greedy execution
  result.rollout_attempts = rollouts;
  for (int r = 0; r < rollouts; ++r) {
    Rng rng(mix_seed(seed, static_cast<uint64_t>(booths), static_cast<uint64_t>(r)));
    train::RolloutRecord rec = train::run_policy(store, ctx, gp.s0, rng, 300,
                                                 train::ExecutionMode::argmax_lex);
    result.rollout_successes += rec.reached_goal ? 1 : 0;
  }
  if (result.rollout_successes != result.rollout_attempts) result.ok = false;
  return result;
}

json cn_verify_json(const CnVerifyResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"booth", c.booth},
                      {"logit_forward", c.logit_forward},
                      {"logit_backward", c.logit_backward},
                      {"reduced_forward", c.reduced_forward},
                      {"reduced_backward", c.reduced_backward},
                      {"reduction_residual", c.step1_residual},
                      {"pool_cancel_residual", c.pool_cancel_residual}});
  return json{{"booths", r.booths},
              {"ok", r.ok},
              {"interior_checks", checks},
              {"rollouts", {{"successes", r.rollout_successes}, {"attempts", r.rollout_attempts}}}};
}

TtwVerifyResult verify_ttw_sparse(const ParameterStore& store, int size, int rollouts,
                                  uint64_t seed) {
  dom::Generated gen = dom::gen_triangle_tireworld(size);
  ProblemContext ctx =
      train::make_context(gen.domain, gen.problem, store.L, store.d_h, store.flags);
  const GroundProblem& gp = *ctx.gp;
  net::validate_against(store, *gp.domain);

  // spare-equipped = has a changetire action, i.e. a spare in the initial state
  std::vector<char> spare_at(gp.nprops(), 0);
  for (size_t ai = 0; ai < gp.actions.size(); ++ai)
    if (gp.schema_name(static_cast<int>(ai)) == "changetire")
      spare_at[gp.actions[ai].slots[0]] = 1;  // slot 0 = vehicle-at(?loc)

  TtwVerifyResult result;
  result.size = size;
  result.ok = true;
  result.rollout_attempts = rollouts;
  for (int r = 0; r < rollouts; ++r) {
    Rng rng(mix_seed(seed, static_cast<uint64_t>(size), static_cast<uint64_t>(r)));
    train::RolloutRecord rec = train::run_policy(store, ctx, gp.s0, rng, 300,
                                                 train::ExecutionMode::argmax_lex);
    result.rollout_successes += rec.reached_goal ? 1 : 0;
    for (size_t step = 0; step < rec.actions.size(); ++step) {
      const int a = rec.actions[step];
      if (gp.schema_name(a) != "move-car") continue;
      bool spare_choice = false;
      for (int cand : ssp::applicable_actions(gp, rec.states[step]))
        if (gp.schema_name(cand) == "move-car" && spare_at[gp.actions[cand].slots[3]])
          spare_choice = true;
      if (!spare_choice) continue;
      ++result.moves_with_spare_choice;
      if (spare_at[gp.actions[a].slots[3]])
        ++result.moves_onto_spare;
      else
        result.ok = false;
    }
  }
  if (result.rollout_successes != result.rollout_attempts) result.ok = false;
  return result;
}

json ttw_verify_json(const TtwVerifyResult& r) {
  return json{{"size", r.size},
              {"ok", r.ok},
              {"rollouts", {{"successes", r.rollout_successes}, {"attempts", r.rollout_attempts}}},
              {"moves_with_spare_choice", r.moves_with_spare_choice},
              {"moves_onto_spare", r.moves_onto_spare}};
}

}  // namespace asnets::eval
