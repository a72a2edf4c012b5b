#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "clpslice/marking.hpp"
#include "clpslice/trace.hpp"

namespace clpslice {

enum class Criterion : std::uint8_t { Causality, Variables, Unexpected, Inconsistent };

struct MarkRequest {
    Criterion criterion = Criterion::Causality;
    std::vector<Cid> cids;      // causality
    std::vector<Symbol> vars;   // variables
    Constraint constraint;      // unexpected / inconsistent
    std::vector<Pid> pids;      // agents, any criterion
    bool var_closure = true;
};

class MarkingError : public std::runtime_error {
public:
    MarkingError(const std::string& msg, std::vector<std::string> invalid)
        : std::runtime_error(msg), invalid_(std::move(invalid)) {}
    const std::vector<std::string>& invalid() const { return invalid_; }

private:
    std::vector<std::string> invalid_;
};

// Throws MarkingError when the payload names cids, pids or variables absent
// from the configuration.
Marking mark(const ConstraintSystem& cs, const Configuration& last, const MarkRequest& req,
             MinimalOptions opts = {});

// Replacing substitution: pid -> sliced process (Hole for •).
using Replacements = std::map<Pid, Process>;

struct ProcessSlice {
    Replacements theta;
    Constraint guard;  // t unless a kept Sum branch
};

// Added atoms of the step, with those outside `relevant` turned into holes and
// the step's fresh variables existentially bound. Empty or all-hole yields a hole.
Constraint slice_constraints(const Store& before, const Store& after, const std::set<Cid>& relevant);

// One backward step for the agent `pid` reduced between `before` and `after`.
ProcessSlice slice_process(const Configuration& before, const Configuration& after, Pid pid,
                           std::optional<int> branch, const Replacements& theta, const std::set<Cid>& relevant);

struct SliceOptions {
    MinimalOptions minimal;
    // When set, receives the relevant cid set in force at each configuration.
    std::vector<std::set<Cid>>* history = nullptr;
};

// Backward trace slicer. The result mirrors the input with `sliced` set.
Trace slice_trace(const ConstraintSystem& cs, const Trace& trace, const Marking& marking, SliceOptions opts = {});

// Structural check that a sliced agent is the original with parts replaced by
// holes (locals may be renamed, tells may lose atoms).
bool refines(const Process& sliced, const Process& original);

}  // namespace clpslice
