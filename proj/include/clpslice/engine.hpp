#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "clpslice/fresh.hpp"
#include "clpslice/program.hpp"
#include "clpslice/trace.hpp"

namespace clpslice {

// An enabled reduction: agent position plus branch for sums.
struct Move {
    std::size_t index = 0;
    Pid pid = 0;
    std::optional<int> branch;
};

class Policy {
public:
    virtual ~Policy() = default;
    // Index into `enabled`, or nullopt to stop.
    virtual std::optional<std::size_t> choose(const Configuration& config, const std::vector<Move>& enabled) = 0;
    virtual std::string name() const = 0;
};

class LeftmostPolicy : public Policy {
public:
    std::optional<std::size_t> choose(const Configuration&, const std::vector<Move>& enabled) override;
    std::string name() const override { return "leftmost"; }
};

class RandomPolicy : public Policy {
public:
    explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
    std::optional<std::size_t> choose(const Configuration&, const std::vector<Move>& enabled) override;
    std::string name() const override { return "random"; }

private:
    std::mt19937_64 rng_;
};

// Leftmost agent; sums take their branch from a fixed sequence. Used to
// replay a CLP derivation on the translated program.
class ReplayPolicy : public Policy {
public:
    explicit ReplayPolicy(std::vector<int> branches) : branches_(std::move(branches)) {}
    std::optional<std::size_t> choose(const Configuration&, const std::vector<Move>& enabled) override;
    std::string name() const override { return "replay"; }
    bool exhausted() const { return next_ >= branches_.size(); }

private:
    std::vector<int> branches_;
    std::size_t next_ = 0;
};

// Explicit (pid, branch) choices, for tests and exhaustive exploration drivers.
class InjectedPolicy : public Policy {
public:
    explicit InjectedPolicy(std::vector<TransitionLabel> choices) : choices_(std::move(choices)) {}
    std::optional<std::size_t> choose(const Configuration&, const std::vector<Move>& enabled) override;
    std::string name() const override { return "injected"; }

private:
    std::vector<TransitionLabel> choices_;
    std::size_t next_ = 0;
};

struct RunOptions {
    std::uint64_t max_steps = 10'000;
};

// Called after each step; returning false stops the run with the given verdict.
using StepHook = std::function<bool(const Trace&)>;

class CcpEngine {
public:
    struct State {
        Configuration config;
        NameGen names;
        Pid next_pid = 1;
        std::optional<std::string> error;  // instantiation errors and the like
    };

    CcpEngine(CcpProgram program, const ConstraintSystem& cs);

    const CcpProgram& program() const { return program_; }
    const ConstraintSystem& constraints() const { return cs_; }

    // Names of the program text plus `extra`, never produced by fresh().
    void reserve_names(const Process& p);

    State initial(const Process& p, std::vector<Obligation> globals = {}) const;
    std::vector<Move> enabled(const State& s) const;
    State apply(const State& s, const Move& m) const;
    std::optional<std::pair<State, TransitionLabel>> step(const State& s, Policy& policy) const;

    Trace run(const Process& p, Policy& policy, RunOptions opts = {}, const StepHook& hook = {},
              std::vector<Obligation> globals = {}) const;

private:
    void push_agents(const Process& p, State& s, std::vector<Agent>& out) const;

    CcpProgram program_;
    const ConstraintSystem& cs_;
    std::unordered_set<Symbol> reserved_;
};

// Every variable name occurring in a process, bound or free.
void collect_all_vars(const Process& p, std::unordered_set<Symbol>& out);

enum class Observed : std::uint8_t { Yes, No, BudgetExceeded };

struct ObservablesOptions {
    std::uint64_t budget = 200'000;   // explored states
    std::uint64_t max_depth = 10'000;  // steps along one execution
    // Only terminal configurations without agents count (successful runs).
    bool require_success = false;
};

// Some execution reaches a store entailing c. Without require_success an
// inconsistent store entails everything.
Observed observables_check(const CcpEngine& engine, const Process& p, const Constraint& c,
                           ObservablesOptions opts = {});

}  // namespace clpslice
