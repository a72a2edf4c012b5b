#pragma once

#include <vector>

#include "clpslice/program.hpp"

namespace clpslice {

// Translation of a CLP program into CCP definitions: one definition per
// predicate whose body is a blind choice over the clauses.
std::vector<ProcDef> clp_to_ccp(const ClpProgram& program);
CcpProgram clp_to_ccp_program(const ClpProgram& program);

Process translate_literal(const Literal& lit);
Process translate_goal(const std::vector<Literal>& goal);

// Wraps `body` in one `local` per variable, outermost first.
Process wrap_locals(const std::vector<Symbol>& vars, Process body);

}  // namespace clpslice
