#include "core/dom/reference_policies.hpp"

#include "core/dom/generators.hpp"
#include "core/ppddl/parser.hpp"

namespace asnets::dom {

namespace {

net::ParameterStore zero_store(const std::string& domain_text, rel::Flags flags) {
  ppddl::DomainDef dom = ppddl::parse_domain(domain_text);
  rel::SchemaSignature sig = rel::schema_signature(dom, flags.position_pooling);
  Rng rng(0);
  net::ParameterStore store = net::init_params(sig, /*L=*/2, /*d_h=*/1, flags, rng);
  for (auto* group : {&store.schema, &store.pred})
    for (auto& layers : *group)
      for (auto& t : layers) {
        t.W.setZero();
        t.b.setZero();
      }
  return store;
}

int index_of(const std::vector<std::string>& names, const std::string& name) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  fail(ErrKind::invalid_argument, "missing '" + name + "'");
}

}  // namespace

net::ParameterStore ttw_sparse_store() {
  rel::Flags flags;
  flags.landmarks = false;
  flags.history = false;
  flags.skip = true;
  net::ParameterStore store = zero_store(gen_triangle_tireworld(1).domain, flags);

  const int move = index_of(store.sig.schema_names, "move-car");
  const int change = index_of(store.sig.schema_names, "changetire");
  const int va = index_of(store.sig.predicate_names, "vehicle-at");
  // move-car slots: [vehicle-at(?from), road, not-flattire, vehicle-at(?to)]
  // vehicle-at groups: [(changetire,1), (move-car,1), (move-car,4)]
  store.schema[change][0].b(0) = 15.76;      // layer 1: constant spare beacon
  store.pred[va][0].W(0, 0) = 0.81;          // prop 1: pool over changetire
  store.pred[va][0].b(0) = 0.02;
  store.schema[move][1].W(0, 3) = 0.46;      // layer 2: value of the destination
  store.pred[va][1].W(0, 1) = 0.44;          // prop 2: best onward move
  store.pred[va][1].W(0, 3) = 0.35;          // prop 2: skip from prop 1
  store.pred[va][1].b(0) = 6.45;
  store.schema[move][2].W(0, 3) = 1.12;      // logits: destination value
  return store;
}

net::ParameterStore cn_sparse_store() {
  rel::Flags flags;
  flags.landmarks = false;
  flags.history = true;
  flags.skip = true;
  net::ParameterStore store = zero_store(gen_cosanostra(1).domain, flags);

  const int ltb = index_of(store.sig.schema_names, "leave-toll-booth");
  const int loi = index_of(store.sig.schema_names, "leave-open-intersection");
  const int po = index_of(store.sig.schema_names, "pay-operator");
  const int lp = index_of(store.sig.schema_names, "load-pizza");
  const int up = index_of(store.sig.schema_names, "unload-pizza");
  const int da = index_of(store.sig.predicate_names, "deliverator-at");
  (void)loi;  // all leave-open-intersection weights stay zero

  // leave-toll-booth slots: [da(?from), road, tires-intact, operator-angry,
  // da(?to), open(?from)]; layer-1 inputs [v(6); g(6); applicable; count]
  store.schema[ltb][0].W(0, 10) = 0.28;  // goal flag of da(?to)
  store.schema[ltb][0].W(0, 13) = -1.31; // own action count
  store.schema[ltb][0].b(0) = 3.22;
  // pay-operator slots: [da(?booth), tires-intact, open(?booth)]
  store.schema[po][0].W(0, 2) = -0.61;   // open(?booth) truth value
  store.schema[po][0].W(0, 7) = -1.10;   // own action count
  store.schema[po][0].b(0) = 1.29;
  // deliverator-at groups, lexicographic:
  // [(loi,1),(loi,4),(ltb,1),(ltb,5),(load-pizza,1),(pay-operator,1),(unload-pizza,1)]
  store.pred[da][0].W(0, 2) = 0.40;   // pool over moves leaving ?loc
  store.pred[da][0].W(0, 3) = -1.46;  // pool over moves entering ?loc
  store.pred[da][0].W(0, 5) = -1.48;  // pool over pay-operator(?loc)
  store.pred[da][0].b(0) = 4.98;
  store.pred[da][1].W(0, 7) = 3.60;   // second layer: skip connection only
  // final layer
  store.schema[ltb][2].W(0, 0) = 1.25;   // da(?from)
  store.schema[ltb][2].W(0, 4) = -1.07;  // da(?to)
  store.schema[lp][2].W(0, 0) = -0.65;
  store.schema[lp][2].b(0) = 4.71;
  store.schema[po][2].b(0) = 4.99;
  store.schema[up][2].W(0, 0) = 0.66;
  store.schema[up][2].b(0) = -4.74;
  return store;
}

}  // namespace asnets::dom
