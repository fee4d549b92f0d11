#include <json.hpp>

#include "core/net/checkpoint.hpp"

namespace asnets::net {

using nlohmann::json;

namespace {

json tensor_json(const Tensor& t) {
  std::vector<double> w(t.W.size());
  for (int r = 0; r < t.W.rows(); ++r)
    for (int c = 0; c < t.W.cols(); ++c) w[r * t.W.cols() + c] = t.W(r, c);
  std::vector<double> b(t.b.data(), t.b.data() + t.b.size());
  return json{{"rows", t.W.rows()}, {"cols", t.W.cols()}, {"W", encode_doubles(w)},
              {"b", encode_doubles(b)}};
}

Tensor tensor_from_json(const json& j) {
  Tensor t;
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  std::vector<double> w = decode_doubles(j.at("W").get<std::string>());
  std::vector<double> b = decode_doubles(j.at("b").get<std::string>());
  if (static_cast<int>(w.size()) != rows * cols || static_cast<int>(b.size()) != rows)
    fail(ErrKind::corrupt_checkpoint, "tensor payload does not match its declared shape");
  t.W.resize(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t.W(r, c) = w[r * cols + c];
  t.b = Eigen::Map<Eigen::VectorXd>(b.data(), rows);
  return t;
}

}  // namespace

std::string checkpoint_to_json(const ParameterStore& store, const std::string& notes) {
  json j;
  j["format"] = "asnets-checkpoint";
  j["version"] = 1;
  if (!notes.empty()) j["notes"] = notes;
  j["hyper"] = {{"layers", store.L},
                {"hidden_dim", store.d_h},
                {"landmarks", store.flags.landmarks},
                {"history", store.flags.history},
                {"skip", store.flags.skip},
                {"pooling", store.flags.position_pooling ? "position" : "schema"}};
  json schemas = json::array();
  for (size_t si = 0; si < store.sig.schema_names.size(); ++si) {
    json slots = json::array();
    for (int pred : store.sig.slot_predicates[si]) slots.push_back(store.sig.predicate_names[pred]);
    schemas.push_back({{"name", store.sig.schema_names[si]}, {"slots", slots}});
  }
  json preds = json::array();
  for (size_t pi = 0; pi < store.sig.predicate_names.size(); ++pi) {
    json groups = json::array();
    for (const auto& [si, k] : store.sig.groups[pi])
      groups.push_back({store.sig.schema_names[si], k + 1});
    preds.push_back({{"name", store.sig.predicate_names[pi]}, {"groups", groups}});
  }
  j["signature"] = {{"schemas", schemas}, {"predicates", preds}};
  json tensors;
  for (size_t si = 0; si < store.schema.size(); ++si)
    for (size_t l = 0; l < store.schema[si].size(); ++l)
      tensors["schema/" + store.sig.schema_names[si] + "/" + std::to_string(l + 1)] =
          tensor_json(store.schema[si][l]);
  for (size_t pi = 0; pi < store.pred.size(); ++pi)
    for (size_t l = 0; l < store.pred[pi].size(); ++l)
      tensors["pred/" + store.sig.predicate_names[pi] + "/" + std::to_string(l + 1)] =
          tensor_json(store.pred[pi][l]);
  j["tensors"] = std::move(tensors);
  return j.dump(1);
}

void save_checkpoint(const ParameterStore& store, const std::string& path,
                     const std::string& notes) {
  write_file(path, checkpoint_to_json(store, notes));
}

ParameterStore checkpoint_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    fail(ErrKind::corrupt_checkpoint, std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "asnets-checkpoint")
      fail(ErrKind::corrupt_checkpoint, "unrecognised checkpoint format tag");
    ParameterStore store;
    const json& hyper = j.at("hyper");
    store.L = hyper.at("layers").get<int>();
    store.d_h = hyper.at("hidden_dim").get<int>();
    store.flags.landmarks = hyper.at("landmarks").get<bool>();
    store.flags.history = hyper.at("history").get<bool>();
    store.flags.skip = hyper.at("skip").get<bool>();
    store.flags.position_pooling = hyper.at("pooling").get<std::string>() == "position";

    const json& sig = j.at("signature");
    std::map<std::string, int> pred_id;
    for (const auto& p : sig.at("predicates")) {
      pred_id[p.at("name").get<std::string>()] =
          static_cast<int>(store.sig.predicate_names.size());
      store.sig.predicate_names.push_back(p.at("name").get<std::string>());
    }
    std::map<std::string, int> schema_id;
    for (const auto& s : sig.at("schemas")) {
      schema_id[s.at("name").get<std::string>()] = static_cast<int>(store.sig.schema_names.size());
      store.sig.schema_names.push_back(s.at("name").get<std::string>());
      std::vector<int> slots;
      for (const auto& slot : s.at("slots")) slots.push_back(pred_id.at(slot.get<std::string>()));
      store.sig.slot_predicates.push_back(std::move(slots));
    }
    for (const auto& p : sig.at("predicates")) {
      std::vector<std::pair<int, int>> groups;
      for (const auto& g : p.at("groups"))
        groups.emplace_back(schema_id.at(g.at(0).get<std::string>()), g.at(1).get<int>() - 1);
      store.sig.groups.push_back(std::move(groups));
    }

    const json& tensors = j.at("tensors");
    store.schema.resize(store.sig.schema_names.size());
    for (size_t si = 0; si < store.sig.schema_names.size(); ++si)
      for (int l = 1; l <= store.L + 1; ++l)
        store.schema[si].push_back(tensor_from_json(
            tensors.at("schema/" + store.sig.schema_names[si] + "/" + std::to_string(l))));
    store.pred.resize(store.sig.predicate_names.size());
    for (size_t pi = 0; pi < store.sig.predicate_names.size(); ++pi)
      for (int l = 1; l <= store.L; ++l)
        store.pred[pi].push_back(tensor_from_json(
            tensors.at("pred/" + store.sig.predicate_names[pi] + "/" + std::to_string(l))));
    return store;
  } catch (const json::exception& e) {
    fail(ErrKind::corrupt_checkpoint, std::string("malformed checkpoint: ") + e.what());
  }
}

ParameterStore load_checkpoint(const std::string& path) {
  return checkpoint_from_json(read_file(path));
}

void validate_against(const ParameterStore& store, const ppddl::DomainDef& domain) {
  rel::SchemaSignature expect = rel::schema_signature(domain, store.flags.position_pooling);
  if (!(expect == store.sig))
    fail(ErrKind::shape_mismatch,
         "checkpoint signature does not match domain '" + domain.name + "'");
}

}  // namespace asnets::net
