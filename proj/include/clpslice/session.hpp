#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clpslice/monitor.hpp"
#include "clpslice/slicer.hpp"
#include "clpslice/trace_io.hpp"

namespace clpslice {

struct SessionConfig {
    Mode mode = Mode::Clp;
    std::string program;                  // source text
    std::string goal;                     // CLP goal, or a CCP process replacing the main one
    std::vector<std::string> assertions;  // sidecar texts
    std::string policy = "leftmost";      // leftmost | random
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 10'000;
    std::uint64_t node_budget = 1'000'000;
    std::uint64_t answers = 1;  // CLP answers to collect; 0 means all
    bool var_closure = true;
    std::uint64_t subset_budget = 50'000;
};

enum class ExitCode : int { Ok = 0, Violation = 1, ParseError = 2, BudgetExceeded = 3 };

struct SessionReport {
    Verdict verdict = Verdict::Running;
    std::vector<std::string> answers;
    std::vector<std::string> trace_ids;  // one per derivation (CLP) or the single trace (CCP)
    std::vector<std::string> diagnostics;
    std::optional<Trace> trace;          // last trace produced
    // check only
    bool checked = false;
    std::optional<Violation> violation;
    std::optional<Trace> sliced;
    std::optional<std::string> sliced_id;

    ExitCode exit_code() const;
    nlohmann::json to_json() const;
};

// Throws ParseError for malformed programs, goals or sidecars.
SessionReport cmd_run(const SessionConfig& cfg, const TraceRepository* repo);
SessionReport cmd_check(const SessionConfig& cfg, const TraceRepository* repo);

// Marking payload shared by the CLI and the service:
//   {"criterion": "causality"|"variables"|"unexpected"|"inconsistent"|"all",
//    "cids": [..], "pids": [..], "vars": [..], "constraint": "..", "varClosure": bool}
struct MarkingSpec {
    bool all = false;
    MarkRequest request;
};
MarkingSpec marking_from_json(const nlohmann::json& j, Mode mode);

struct SliceOutcome {
    Marking marking;
    Trace sliced;
    nlohmann::json document;
    std::optional<std::string> id;
};
// Throws MarkingError on invalid references.
SliceOutcome cmd_slice(const Trace& trace, const MarkingSpec& spec, const TraceRepository* repo,
                       std::uint64_t subset_budget = 50'000);

SessionConfig session_from_json(const nlohmann::json& j);

}  // namespace clpslice
