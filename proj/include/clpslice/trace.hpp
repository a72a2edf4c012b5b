#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clpslice/process.hpp"
#include "clpslice/store.hpp"

namespace clpslice {

using Pid = std::uint64_t;

struct Agent {
    Pid pid = 0;
    Process proc;
};

// An assertion instance that must hold; introduced by check agents or
// attached from a sidecar.
struct Obligation {
    ClassifiedAssertion assertion;
    Pid origin = 0;  // pid of the check agent, 0 if global
};

struct Configuration {
    std::vector<Agent> agents;
    Store store;
    std::vector<Obligation> obligations;

    const std::vector<Symbol>& hidden() const { return store.hidden(); }
    const Agent* find(Pid pid) const;
    std::ptrdiff_t index_of(Pid pid) const;
};

struct TransitionLabel {
    Pid pid = 0;
    std::optional<int> branch;  // 1-based, Sum reductions only

    friend bool operator==(const TransitionLabel&, const TransitionLabel&) = default;
};

enum class Verdict : std::uint8_t { Running, Success, Failure, BudgetExceeded, Suspended, AssertionViolation };
enum class Mode : std::uint8_t { Ccp, Clp };

const char* verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(std::string_view s);

struct Violation {
    std::size_t position = 0;
    std::string assertion;
    std::vector<Cid> cids;
    std::vector<Pid> pids;
    bool approximate = false;
};

struct TraceMeta {
    Mode mode = Mode::Ccp;
    std::uint64_t seed = 0;
    std::string policy = "leftmost";
    std::uint64_t max_steps = 10'000;
    std::uint64_t node_budget = 1'000'000;
    std::string program_hash;
    std::string goal;
};

struct Trace {
    TraceMeta meta;
    std::vector<Configuration> configs;
    std::vector<TransitionLabel> labels;
    Verdict verdict = Verdict::Running;
    std::optional<std::string> answer;
    std::optional<Violation> violation;
    bool sliced = false;

    const Configuration& last() const { return configs.back(); }
    std::size_t steps() const { return labels.size(); }
};

}  // namespace clpslice
