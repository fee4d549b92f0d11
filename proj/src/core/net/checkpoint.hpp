#pragma once

#include "core/net/network.hpp"

namespace asnets::net {

// JSON container, tensors as base64 little-endian binary64 row-major, keyed
// "schema/<name>/<layer>/W" and "pred/<name>/<layer>/W" (same for /b).
void save_checkpoint(const ParameterStore& store, const std::string& path,
                     const std::string& notes = "");
std::string checkpoint_to_json(const ParameterStore& store, const std::string& notes = "");

ParameterStore load_checkpoint(const std::string& path);
ParameterStore checkpoint_from_json(const std::string& json_text);

// ShapeMismatch unless the store was trained for this domain's signature.
void validate_against(const ParameterStore& store, const ppddl::DomainDef& domain);

}  // namespace asnets::net
