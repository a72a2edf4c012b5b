#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clpslice/engine.hpp"
#include "clpslice/program.hpp"
#include "clpslice/trace.hpp"

namespace clpslice {

struct ClpOptions {
    std::uint64_t max_steps = 10'000;  // per derivation
    std::vector<Obligation> globals;  // whole-program assertions
};

// Goal literal with its process id.
struct Goal {
    Pid pid = 0;
    Literal lit;
};

// Snapshot seen by monitors after each derivation step.
struct ClpView {
    const Store& store;
    const std::vector<Agent>& agents;  // remaining goals as call/tell agents
    const std::vector<Obligation>& obligations;
    std::size_t step;
    bool answer;  // true when the goal list is empty
};

// Returns false to halt the derivation with an assertion violation.
using ClpHook = std::function<bool(const ClpView&)>;

struct ClpDerivation {
    Verdict verdict = Verdict::Running;
    Store store;
    std::vector<TransitionLabel> labels;
    std::vector<int> choices;  // branch per unfolding, in order
    std::vector<Obligation> obligations;
    std::optional<std::string> answer;
    std::optional<std::string> error;
    std::size_t steps = 0;
    std::size_t index = 0;  // 0-based position in the derivation stream
};

// Depth-first, leftmost-literal, clauses in textual order. Each call to
// next() resumes the search and returns the next finished derivation.
class ClpRun {
public:
    ClpRun(const ClpProgram& program, std::vector<Literal> goal, const ConstraintSystem& cs, ClpOptions opts = {},
           ClpHook hook = {});
    ~ClpRun();
    ClpRun(const ClpRun&) = delete;
    ClpRun& operator=(const ClpRun&) = delete;

    std::optional<ClpDerivation> next();
    bool halted() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Variables of the goal in first-occurrence order.
std::vector<Symbol> goal_vars(const std::vector<Literal>& goal);

// Answer constraint projected on `vars`, e.g. "Ans = 0, X = [1,2]"; "true" if empty.
std::string project_answer(const ConstraintSystem& cs, const Store& store, const std::vector<Symbol>& vars);

// Replays a CLP derivation on the translated program with leftmost
// scheduling. boundary[j] is the configuration index after j CLP steps.
struct Replay {
    Trace trace;
    std::vector<std::size_t> boundary;
};
Replay replay_derivation(const CcpEngine& engine, const Process& goal, const ClpDerivation& d,
                         std::vector<Obligation> globals = {});

}  // namespace clpslice
