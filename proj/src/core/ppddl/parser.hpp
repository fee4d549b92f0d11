#pragma once

#include "core/ppddl/ast.hpp"

namespace asnets::ppddl {

DomainDef parse_domain(const std::string& text);

// The caller resolves the domain by name and passes it in; the problem's
// :domain declaration must match domain.name.
ProblemDef parse_problem(const std::string& text, const DomainDef& domain);

}  // namespace asnets::ppddl
