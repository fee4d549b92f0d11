#pragma once

#include "core/ppddl/ast.hpp"

namespace asnets::ppddl {

std::string write_domain(const DomainDef& dom);
std::string write_problem(const ProblemDef& prob, const DomainDef& dom);

}  // namespace asnets::ppddl
