#pragma once

#include <optional>
#include <vector>

#include "clpslice/assertion.hpp"
#include "clpslice/marking.hpp"
#include "clpslice/trace.hpp"

namespace clpslice {

// What the assertion formulas are evaluated against: one configuration.
struct EvalContext {
    const ConstraintSystem& cs;
    const Store& store;
    const std::vector<Agent>& agents;
};

bool eval(const EvalContext& ctx, const Assertion& f);
bool eval(const ConstraintSystem& cs, const Trace& trace, std::size_t i, const Assertion& f);

// Once false, stays false along a computation: neg/cons and their /\ \/ combinations,
// plus A -> B with A persistent and B stop-eligible.
bool stop_eligible(const Assertion& f);
// Once true, stays true: pos/icons and their /\ \/ combinations.
bool persistent(const Assertion& f);
bool has_quantifier(const Assertion& f);

enum class Event : std::uint8_t { Step, Answer };

// Indices of obligations to evaluate, in declaration order. Step events get
// stop-eligible invariants; answers get posts and the deferred invariants.
// Posts with quantifiers are never scheduled.
std::vector<std::size_t> schedule(const std::vector<Obligation>& obligations, Event event);

// First scheduled obligation that fails, if any.
std::optional<std::size_t> check(const EvalContext& ctx, const std::vector<Obligation>& obligations, Event event);

struct SympOptions {
    bool var_closure = true;
    MinimalOptions minimal;
};

// Testing hypothesis for a failed assertion at one configuration.
Marking symp(const EvalContext& ctx, const Assertion& f, const SympOptions& opts = {});

}  // namespace clpslice
