#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clpslice/program.hpp"
#include "clpslice/store.hpp"

namespace clpslice {

// One alternative of a builtin unfolding: fresh locals plus body literals.
struct BuiltinAlt {
    std::vector<Symbol> locals;
    std::vector<Literal> body;
};

// length/2, labeling/1,2 and fd_labeling/1,2.
bool is_builtin(Symbol name, std::size_t arity);

// Alternatives for a builtin call against the current store. An empty
// result is never returned; failure is an alternative whose body is `false`.
// Throws InstantiationError on malformed arguments.
std::vector<BuiltinAlt> builtin_alternatives(const ConstraintSystem& cs, const Store& store, Symbol name,
                                             const std::vector<Term>& args);

// The CCP image: a blind choice over the alternatives.
Process builtin_process(const std::vector<BuiltinAlt>& alts);

}  // namespace clpslice
