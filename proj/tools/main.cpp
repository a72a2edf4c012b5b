#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "clpslice/parser.hpp"
#include "clpslice/render.hpp"
#include "clpslice/service.hpp"
#include "clpslice/session.hpp"

using namespace clpslice;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunArgs {
    std::string program;
    std::string mode;
    std::string goal;
    std::vector<std::string> asserts;
    SessionConfig cfg;
    std::string trace_dir;
    bool no_closure = false;
    bool show_trace = false;
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
    cmd->add_option("program", a.program, "Program file (.clp or .ccp)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--mode", a.mode, "clp or ccp (default: from the file extension)")
        ->check(CLI::IsMember({"clp", "ccp"}));
    cmd->add_option("--goal", a.goal, "CLP goal, or a CCP process replacing the program's main process");
    cmd->add_option("--assert", a.asserts, "Assertion sidecar file (repeatable)")->check(CLI::ExistingFile);
    cmd->add_option("--answers", a.cfg.answers, "CLP answers to compute (0 = all)");
    cmd->add_option("--seed", a.cfg.seed, "Seed for the random policy");
    cmd->add_option("--policy", a.cfg.policy, "CCP scheduling policy")->check(CLI::IsMember({"leftmost", "random"}));
    cmd->add_option("--max-steps", a.cfg.max_steps, "Step budget per derivation")->check(CLI::PositiveNumber);
    cmd->add_option("--node-budget", a.cfg.node_budget, "Solver search budget")->check(CLI::PositiveNumber);
    cmd->add_option("--subset-budget", a.cfg.subset_budget, "Minimal-subset search budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trace-dir", a.trace_dir, "Trace directory (default: $CLPSLICE_TRACE_DIR or ./traces)");
    cmd->add_flag("--no-var-closure", a.no_closure, "Use one-step variable sharing in markings");
    cmd->add_flag("--show-trace", a.show_trace, "Print the terse rendering of the last trace");
}

TraceRepository repository(const std::string& dir) {
    return dir.empty() ? TraceRepository::from_env() : TraceRepository(dir);
}

int finish_parse_error(const ParseError& e, const std::string& where) {
    std::cerr << where << ":" << e.what() << "\n";
    return static_cast<int>(ExitCode::ParseError);
}

int do_run(RunArgs& a, bool check) {
    SessionConfig cfg = a.cfg;
    std::string mode = a.mode;
    if (mode.empty()) mode = std::filesystem::path(a.program).extension() == ".ccp" ? "ccp" : "clp";
    cfg.mode = mode == "ccp" ? Mode::Ccp : Mode::Clp;
    cfg.goal = a.goal;
    cfg.var_closure = !a.no_closure;
    std::string where = a.program;
    try {
        cfg.program = read_file(a.program);
        for (const auto& f : a.asserts) cfg.assertions.push_back(read_file(f));
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return static_cast<int>(ExitCode::ParseError);
    }
    TraceRepository repo = repository(a.trace_dir);
    SessionReport rep;
    try {
        rep = check ? cmd_check(cfg, &repo) : cmd_run(cfg, &repo);
    } catch (const ParseError& e) {
        return finish_parse_error(e, where);
    }
    for (const auto& d : rep.diagnostics) std::cerr << d << "\n";
    for (const auto& ans : rep.answers) std::cout << ans << "\n";
    if (rep.answers.empty() && rep.verdict != Verdict::AssertionViolation) {
        std::cout << (rep.verdict == Verdict::BudgetExceeded ? "budget exceeded" : "no") << "\n";
    }
    if (a.show_trace && rep.trace) std::cout << render_trace(*rep.trace);
    if (check) {
        if (rep.violation) {
            const auto& v = *rep.violation;
            std::cout << "violation: " << v.assertion << " at configuration " << v.position << "\n";
            std::cout << "marking: cids [";
            for (std::size_t i = 0; i < v.cids.size(); ++i) std::cout << (i ? "," : "") << v.cids[i];
            std::cout << "] pids [";
            for (std::size_t i = 0; i < v.pids.size(); ++i) std::cout << (i ? "," : "") << v.pids[i];
            std::cout << "]" << (v.approximate ? " (approximate)" : "") << "\n";
            if (rep.trace) {
                for (Cid c : v.cids) {
                    if (const StoredAtom* at = rep.trace->last().store.find(c)) {
                        std::cout << "  " << c << ": " << at->atom.to_string() << "\n";
                    }
                }
            }
            if (rep.sliced) std::cout << render_trace(*rep.sliced);
            if (rep.sliced_id) std::cout << "sliced trace " << *rep.sliced_id << "\n";
        } else {
            std::cout << "no violations\n";
        }
    }
    for (const auto& id : rep.trace_ids) std::cerr << "trace " << id << "\n";
    return static_cast<int>(rep.exit_code());
}

struct SliceArgs {
    std::string trace;
    std::vector<Cid> cids;
    std::vector<Pid> pids;
    std::vector<std::string> vars;
    std::string unexpected, inconsistent, marking_file, trace_dir, output;
    bool all = false;
    bool no_closure = false;
};

int do_slice(const SliceArgs& a) {
    TraceRepository repo = repository(a.trace_dir);
    Trace trace;
    try {
        if (std::filesystem::exists(a.trace)) {
            trace = trace_from_json(json::parse(read_file(a.trace)));
        } else {
            trace = repo.load(a.trace);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return static_cast<int>(ExitCode::ParseError);
    }
    json spec;
    if (!a.marking_file.empty()) {
        spec = json::parse(read_file(a.marking_file));
    } else {
        int chosen = !a.cids.empty() + !a.vars.empty() + !a.unexpected.empty() + !a.inconsistent.empty() + a.all;
        if (chosen > 1) {
            std::cerr << "choose one marking criterion\n";
            return static_cast<int>(ExitCode::ParseError);
        }
        spec["criterion"] = a.all                    ? "all"
                            : !a.vars.empty()        ? "variables"
                            : !a.unexpected.empty()  ? "unexpected"
                            : !a.inconsistent.empty() ? "inconsistent"
                                                      : "causality";
        spec["cids"] = a.cids;
        spec["pids"] = a.pids;
        spec["vars"] = a.vars;
        if (!a.unexpected.empty()) spec["constraint"] = a.unexpected;
        if (!a.inconsistent.empty()) spec["constraint"] = a.inconsistent;
        spec["varClosure"] = !a.no_closure;
    }
    try {
        SliceOutcome out = cmd_slice(trace, marking_from_json(spec, trace.meta.mode), &repo);
        std::cout << render_trace(out.sliced);
        if (!a.output.empty()) {
            std::ofstream f(a.output, std::ios::binary);
            f << out.document.dump();
        }
        std::cerr << "sliced trace " << *out.id << "\n";
        if (out.marking.approximate) std::cerr << "warning: marking over-approximated (subset budget)\n";
        return 0;
    } catch (const MarkingError& e) {
        std::cerr << "invalid marking:\n";
        for (const auto& s : e.invalid()) std::cerr << "  " << s << "\n";
        return static_cast<int>(ExitCode::ParseError);
    } catch (const ParseError& e) {
        return finish_parse_error(e, "marking");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace slicer for constraint logic programs"};
    app.require_subcommand(1);

    RunArgs run_args, check_args;
    auto* run = app.add_subcommand("run", "Run a program and print its answers");
    add_run_options(run, run_args);
    auto* check = app.add_subcommand("check", "Run with assertion monitoring and slice on violation");
    add_run_options(check, check_args);

    SliceArgs sa;
    auto* slice = app.add_subcommand("slice", "Slice a stored trace with a marking");
    slice->add_option("trace", sa.trace, "Trace id or trace file")->required();
    slice->add_option("--mark-constraints", sa.cids, "Constraint ids to explain")->delimiter(',');
    slice->add_option("--mark-agents", sa.pids, "Agent ids of the final configuration to keep")->delimiter(',');
    slice->add_option("--vars", sa.vars, "Relevant variables")->delimiter(',');
    slice->add_option("--unexpected", sa.unexpected, "Constraint that should not be entailed");
    slice->add_option("--inconsistent", sa.inconsistent, "Constraint the store should stay consistent with");
    slice->add_flag("--mark-all", sa.all, "Mark the whole final configuration");
    slice->add_option("--marking", sa.marking_file, "Marking file (JSON)")->check(CLI::ExistingFile);
    slice->add_option("--trace-dir", sa.trace_dir, "Trace directory");
    slice->add_option("-o,--output", sa.output, "Also write the sliced document here");
    slice->add_flag("--no-var-closure", sa.no_closure, "One-step variable sharing for --vars");

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string serve_dir;
    auto* serve = app.add_subcommand("serve", "Serve the trace API over HTTP");
    serve->add_option("--host", host, "Interface to bind");
    serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
    serve->add_option("--trace-dir", serve_dir, "Trace directory");

    CLI11_PARSE(app, argc, argv);

    if (*run) return do_run(run_args, false);
    if (*check) return do_run(check_args, true);
    if (*slice) return do_slice(sa);
    if (*serve) {
        TraceService service(repository(serve_dir));
        std::cerr << "listening on " << host << ":" << port << "\n";
        if (!service.listen(host, port)) {
            std::cerr << "cannot listen on " << host << ":" << port << "\n";
            return 2;
        }
    }
    return 0;
}
