#include "clpslice/session.hpp"

#include <algorithm>
#include <map>

#include "clpslice/clp.hpp"
#include "clpslice/engine.hpp"
#include "clpslice/parser.hpp"
#include "clpslice/translate.hpp"

namespace clpslice {

using nlohmann::json;

namespace {

ParseOptions options_for(Mode m) { return {m == Mode::Ccp ? Convention::Ccp : Convention::Prolog, false}; }

std::string program_hash(const SessionConfig& cfg) {
    std::string all = cfg.program;
    for (const auto& a : cfg.assertions) all += '\0' + a;
    return sha256_hex(all);
}

struct Sidecars {
    std::vector<SidecarEntry> on;
    std::vector<Obligation> globals;
};

Sidecars load_sidecars(const SessionConfig& cfg) {
    Sidecars s;
    for (const auto& text : cfg.assertions) {
        for (auto& e : parse_sidecar(text, options_for(cfg.mode))) {
            if (e.target == "global") {
                s.globals.push_back({std::move(e.assertion), 0});
            } else {
                s.on.push_back(std::move(e));
            }
        }
    }
    return s;
}

void attach(ClpProgram& program, const std::vector<SidecarEntry>& entries, std::vector<std::string>& diags) {
    for (const auto& e : entries) {
        bool found = false;
        auto needed = e.assertion.body.free_vars();
        for (auto& r : program.rules) {
            if (r.key() != e.target) continue;
            found = true;
            // Clauses that do not mention the assertion's variables are exempt.
            auto vars = r.vars();
            bool covered = std::all_of(needed.begin(), needed.end(), [&](Symbol v) {
                return std::find(vars.begin(), vars.end(), v) != vars.end();
            });
            if (covered) r.body.push_back(Literal::of(e.assertion));
        }
        if (!found) diags.push_back("warning: no clauses for " + e.target + "; assertion ignored");
    }
}

void attach(CcpProgram& program, const std::vector<SidecarEntry>& entries, std::vector<std::string>& diags) {
    for (const auto& e : entries) {
        bool found = false;
        for (auto& d : program.defs) {
            if (pred_key(d.name, d.params.size()) != e.target) continue;
            d.body = Process::par({d.body, Process::check(e.assertion)});
            found = true;
        }
        if (!found) diags.push_back("warning: no definition for " + e.target + "; assertion ignored");
    }
}

bool has_obligations(const Process& p) {
    switch (p.kind()) {
    case Process::Kind::Check: return true;
    case Process::Kind::Par:
        for (const auto& q : p.parts()) {
            if (has_obligations(q)) return true;
        }
        return false;
    case Process::Kind::Sum:
        for (const auto& b : p.branches()) {
            if (!b.hole && has_obligations(*b.body)) return true;
        }
        return false;
    case Process::Kind::Local: return has_obligations(p.body());
    default: return false;
    }
}

void warn_quantified_posts(const std::vector<Obligation>& obligations, std::vector<std::string>& diags) {
    for (const auto& o : obligations) {
        if (o.assertion.kind == ClassifiedAssertion::Kind::Post && has_quantifier(o.assertion.body)) {
            diags.push_back("warning: quantified post-condition is never checked: " + o.assertion.to_string());
        }
    }
}

void fill_meta(Trace& t, const SessionConfig& cfg, const std::string& hash) {
    t.meta.mode = cfg.mode;
    t.meta.seed = cfg.seed;
    t.meta.max_steps = cfg.max_steps;
    t.meta.node_budget = cfg.node_budget;
    t.meta.program_hash = hash;
    t.meta.goal = cfg.goal;
}

// Marks the failed assertion, slices the truncated trace and records both.
void report_violation(SessionReport& rep, Trace& trace, const ConstraintSystem& cs, const ClassifiedAssertion& failed,
                      const SessionConfig& cfg, const TraceRepository* repo) {
    const Configuration& last = trace.last();
    SympOptions so;
    so.var_closure = cfg.var_closure;
    so.minimal.subset_budget = cfg.subset_budget;
    Marking m = symp(EvalContext{cs, last.store, last.agents}, failed.body, so);
    if (m.approximate) rep.diagnostics.push_back("warning: minimal-subset search over budget; marking over-approximated");
    Violation v;
    v.position = trace.configs.size() - 1;
    v.assertion = failed.to_string();
    v.cids.assign(m.cids.begin(), m.cids.end());
    v.pids.assign(m.pids.begin(), m.pids.end());
    v.approximate = m.approximate;
    trace.violation = v;
    SliceOptions sl;
    sl.minimal.subset_budget = cfg.subset_budget;
    Trace sliced = slice_trace(cs, trace, m, sl);
    if (repo) rep.sliced_id = repo->save(sliced);
    rep.violation = v;
    rep.sliced = std::move(sliced);
}

SessionReport run_clp(const SessionConfig& cfg, const TraceRepository* repo, bool monitor) {
    SessionReport rep;
    rep.checked = monitor;
    const std::string hash = program_hash(cfg);
    ClpProgram program = parse_clp(cfg.program);
    std::vector<Literal> goal = parse_goal(cfg.goal);
    Sidecars sc = load_sidecars(cfg);
    attach(program, sc.on, rep.diagnostics);

    ConstraintSystem cs(SolverOptions{true, cfg.node_budget},
                        [&](const std::string& d) { rep.diagnostics.push_back(d); });
    CcpEngine engine(clp_to_ccp_program(program), cs);
    Process ccp_goal = translate_goal(goal);
    engine.reserve_names(ccp_goal);

    std::optional<ClassifiedAssertion> failed;
    ClpHook hook;
    if (monitor) {
        hook = [&](const ClpView& v) {
            EvalContext ctx{cs, v.store, v.agents};
            if (auto i = check(ctx, v.obligations, Event::Step)) {
                failed = v.obligations[*i].assertion;
                return false;
            }
            if (v.answer) {
                if (auto i = check(ctx, v.obligations, Event::Answer)) {
                    failed = v.obligations[*i].assertion;
                    return false;
                }
            }
            return true;
        };
    }
    ClpOptions opts;
    opts.max_steps = cfg.max_steps;
    opts.globals = sc.globals;
    ClpRun run(program, goal, cs, opts, hook);
    bool any_success = false;
    while (auto d = run.next()) {
        Replay r = replay_derivation(engine, ccp_goal, *d, sc.globals);
        Trace& t = r.trace;
        fill_meta(t, cfg, hash);
        if (d->error) rep.diagnostics.push_back(*d->error);
        if (d->verdict == Verdict::AssertionViolation && failed) {
            warn_quantified_posts(t.last().obligations, rep.diagnostics);
            report_violation(rep, t, cs, *failed, cfg, repo);
        }
        if (repo) rep.trace_ids.push_back(repo->save(t));
        rep.verdict = d->verdict;
        if (d->verdict == Verdict::Success) {
            any_success = true;
            rep.answers.push_back(*d->answer);
        }
        rep.trace = std::move(t);
        if (d->verdict == Verdict::AssertionViolation || d->verdict == Verdict::BudgetExceeded) break;
        if (cfg.answers && rep.answers.size() >= cfg.answers) break;
    }
    if (rep.verdict != Verdict::AssertionViolation && rep.verdict != Verdict::BudgetExceeded) {
        rep.verdict = any_success ? Verdict::Success : Verdict::Failure;
    }
    return rep;
}

SessionReport run_ccp(const SessionConfig& cfg, const TraceRepository* repo, bool monitor) {
    SessionReport rep;
    rep.checked = monitor;
    const std::string hash = program_hash(cfg);
    CcpProgram program = parse_ccp(cfg.program, options_for(Mode::Ccp));
    Process main = cfg.goal.empty() ? program.main.value_or(Process::skip())
                                    : parse_process(cfg.goal, options_for(Mode::Ccp));
    Sidecars sc = load_sidecars(cfg);
    attach(program, sc.on, rep.diagnostics);

    ConstraintSystem cs(SolverOptions{true, cfg.node_budget},
                        [&](const std::string& d) { rep.diagnostics.push_back(d); });
    CcpEngine engine(program, cs);
    engine.reserve_names(main);
    std::unique_ptr<Policy> policy;
    if (cfg.policy == "random") {
        policy = std::make_unique<RandomPolicy>(cfg.seed);
    } else {
        policy = std::make_unique<LeftmostPolicy>();
    }
    std::optional<ClassifiedAssertion> failed;
    StepHook hook;
    if (monitor) {
        hook = [&](const Trace& t) {
            const Configuration& c = t.last();
            if (auto i = check(EvalContext{cs, c.store, c.agents}, c.obligations, Event::Step)) {
                failed = c.obligations[*i].assertion;
                return false;
            }
            return true;
        };
    }
    RunOptions ro;
    ro.max_steps = cfg.max_steps;
    Trace t = engine.run(main, *policy, ro, hook, sc.globals);
    fill_meta(t, cfg, hash);
    t.meta.policy = policy->name();
    const Configuration& last = t.last();
    if (t.verdict == Verdict::Success || t.verdict == Verdict::Suspended) {
        t.answer = project_answer(cs, last.store, main.free_vars());
        if (monitor) {
            if (auto i = check(EvalContext{cs, last.store, last.agents}, last.obligations, Event::Answer)) {
                failed = last.obligations[*i].assertion;
                t.verdict = Verdict::AssertionViolation;
            }
        }
    }
    if (t.verdict == Verdict::AssertionViolation && failed) {
        warn_quantified_posts(last.obligations, rep.diagnostics);
        report_violation(rep, t, cs, *failed, cfg, repo);
    }
    if (t.answer && t.verdict != Verdict::AssertionViolation) rep.answers.push_back(*t.answer);
    if (repo) rep.trace_ids.push_back(repo->save(t));
    rep.verdict = t.verdict;
    rep.trace = std::move(t);
    return rep;
}

}  // namespace

ExitCode SessionReport::exit_code() const {
    switch (verdict) {
    case Verdict::AssertionViolation: return ExitCode::Violation;
    case Verdict::BudgetExceeded: return ExitCode::BudgetExceeded;
    default: return ExitCode::Ok;
    }
}

json SessionReport::to_json() const {
    json j = {{"verdict", verdict_name(verdict)},
              {"answers", answers},
              {"traceIds", trace_ids},
              {"diagnostics", diagnostics}};
    if (checked) j["checked"] = true;
    if (violation) {
        j["violation"] = {{"position", violation->position},
                          {"assertion", violation->assertion},
                          {"cids", violation->cids},
                          {"pids", violation->pids},
                          {"approximate", violation->approximate}};
    }
    if (sliced_id) j["slicedId"] = *sliced_id;
    return j;
}

SessionReport cmd_run(const SessionConfig& cfg, const TraceRepository* repo) {
    return cfg.mode == Mode::Clp ? run_clp(cfg, repo, false) : run_ccp(cfg, repo, false);
}

SessionReport cmd_check(const SessionConfig& cfg, const TraceRepository* repo) {
    return cfg.mode == Mode::Clp ? run_clp(cfg, repo, true) : run_ccp(cfg, repo, true);
}

MarkingSpec marking_from_json(const json& j, Mode mode) {
    MarkingSpec spec;
    ParseOptions opts = options_for(mode);
    std::string crit = j.value("criterion", std::string("causality"));
    static const std::map<std::string, Criterion> names{{"causality", Criterion::Causality},
                                                        {"variables", Criterion::Variables},
                                                        {"unexpected", Criterion::Unexpected},
                                                        {"inconsistent", Criterion::Inconsistent}};
    if (crit == "all") {
        spec.all = true;
    } else {
        auto it = names.find(crit);
        if (it == names.end()) throw MarkingError("unknown criterion " + crit, {"criterion " + crit});
        spec.request.criterion = it->second;
    }
    if (j.contains("cids")) spec.request.cids = j["cids"].get<std::vector<Cid>>();
    if (j.contains("pids")) spec.request.pids = j["pids"].get<std::vector<Pid>>();
    if (j.contains("vars")) {
        for (const auto& v : j["vars"]) spec.request.vars.emplace_back(v.get<std::string>());
    }
    if (j.contains("constraint")) spec.request.constraint = parse_constraint(j["constraint"].get<std::string>(), opts);
    spec.request.var_closure = j.value("varClosure", true);
    return spec;
}

SliceOutcome cmd_slice(const Trace& trace, const MarkingSpec& spec, const TraceRepository* repo,
                       std::uint64_t subset_budget) {
    ConstraintSystem cs(SolverOptions{true, trace.meta.node_budget});
    MinimalOptions mo;
    mo.subset_budget = subset_budget;
    SliceOutcome out;
    if (spec.all) {
        for (const auto& a : trace.last().store.atoms()) out.marking.cids.insert(a.cid);
        for (const auto& a : trace.last().agents) out.marking.pids.insert(a.pid);
    } else {
        out.marking = mark(cs, trace.last(), spec.request, mo);
    }
    SliceOptions so;
    so.minimal = mo;
    out.sliced = slice_trace(cs, trace, out.marking, so);
    out.document = trace_to_json(out.sliced);
    if (repo) out.id = repo->save_json(out.document);
    return out;
}

SessionConfig session_from_json(const json& j) {
    SessionConfig cfg;
    std::string mode = j.value("mode", std::string("clp"));
    if (mode != "clp" && mode != "ccp") throw std::invalid_argument("mode must be clp or ccp");
    cfg.mode = mode == "clp" ? Mode::Clp : Mode::Ccp;
    cfg.program = j.at("program").get<std::string>();
    cfg.goal = j.value("goal", std::string());
    if (j.contains("assertions")) {
        const auto& a = j["assertions"];
        if (a.is_string()) {
            cfg.assertions.push_back(a.get<std::string>());
        } else {
            cfg.assertions = a.get<std::vector<std::string>>();
        }
    }
    cfg.policy = j.value("policy", cfg.policy);
    if (cfg.policy != "leftmost" && cfg.policy != "random") throw std::invalid_argument("unknown policy " + cfg.policy);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.max_steps = j.value("maxSteps", cfg.max_steps);
    cfg.node_budget = j.value("nodeBudget", cfg.node_budget);
    cfg.answers = j.value("answers", cfg.answers);
    cfg.var_closure = j.value("varClosure", cfg.var_closure);
    if (cfg.max_steps == 0 || cfg.node_budget == 0) throw std::invalid_argument("budgets must be positive");
    return cfg;
}

}  // namespace clpslice
