#include "clpslice/engine.hpp"

#include <algorithm>

#include "clpslice/builtins.hpp"

namespace clpslice {

const Agent* Configuration::find(Pid pid) const {
    for (const auto& a : agents) {
        if (a.pid == pid) return &a;
    }
    return nullptr;
}

std::ptrdiff_t Configuration::index_of(Pid pid) const {
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (agents[i].pid == pid) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Running: return "running";
    case Verdict::Success: return "success";
    case Verdict::Failure: return "failure";
    case Verdict::BudgetExceeded: return "budget-exceeded";
    case Verdict::Suspended: return "suspended";
    case Verdict::AssertionViolation: return "assertion-violation";
    }
    return "running";
}

std::optional<Verdict> verdict_from_name(std::string_view s) {
    for (Verdict v : {Verdict::Running, Verdict::Success, Verdict::Failure, Verdict::BudgetExceeded,
                      Verdict::Suspended, Verdict::AssertionViolation}) {
        if (s == verdict_name(v)) return v;
    }
    return std::nullopt;
}

std::optional<std::size_t> LeftmostPolicy::choose(const Configuration&, const std::vector<Move>& enabled) {
    if (enabled.empty()) return std::nullopt;
    return 0;
}

std::optional<std::size_t> RandomPolicy::choose(const Configuration&, const std::vector<Move>& enabled) {
    if (enabled.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, enabled.size() - 1);
    return pick(rng_);
}

std::optional<std::size_t> ReplayPolicy::choose(const Configuration&, const std::vector<Move>& enabled) {
    if (enabled.empty()) return std::nullopt;
    std::size_t first = enabled[0].index;
    if (!enabled[0].branch) return 0;
    if (next_ >= branches_.size()) return std::nullopt;
    int want = branches_[next_];
    for (std::size_t i = 0; i < enabled.size() && enabled[i].index == first; ++i) {
        if (enabled[i].branch == want) {
            ++next_;
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> InjectedPolicy::choose(const Configuration&, const std::vector<Move>& enabled) {
    if (next_ >= choices_.size()) return std::nullopt;
    const auto& want = choices_[next_];
    for (std::size_t i = 0; i < enabled.size(); ++i) {
        if (enabled[i].pid == want.pid && enabled[i].branch == want.branch) {
            ++next_;
            return i;
        }
    }
    return std::nullopt;
}

void collect_all_vars(const Process& p, std::unordered_set<Symbol>& out) {
    std::vector<Symbol> fv;
    p.collect_free_vars(fv);
    out.insert(fv.begin(), fv.end());
    switch (p.kind()) {
    case Process::Kind::Sum:
        for (const auto& b : p.branches()) {
            if (!b.hole) collect_all_vars(*b.body, out);
        }
        break;
    case Process::Kind::Par:
        for (const auto& q : p.parts()) collect_all_vars(q, out);
        break;
    case Process::Kind::Local:
        out.insert(p.var());
        collect_all_vars(p.body(), out);
        break;
    case Process::Kind::Tell:
        for (Symbol v : p.constraint().exists()) out.insert(v);
        break;
    default: break;
    }
}

CcpEngine::CcpEngine(CcpProgram program, const ConstraintSystem& cs) : program_(std::move(program)), cs_(cs) {
    for (const auto& d : program_.defs) {
        reserved_.insert(d.params.begin(), d.params.end());
        collect_all_vars(d.body, reserved_);
    }
    if (program_.main) collect_all_vars(*program_.main, reserved_);
}

void CcpEngine::reserve_names(const Process& p) { collect_all_vars(p, reserved_); }

void CcpEngine::push_agents(const Process& p, State& s, std::vector<Agent>& out) const {
    switch (p.kind()) {
    case Process::Kind::Skip: return;
    case Process::Kind::Par:
        for (const auto& q : p.parts()) push_agents(q, s, out);
        return;
    case Process::Kind::Check:
        s.config.obligations.push_back({p.assertion(), s.next_pid++});
        return;
    default: out.push_back({s.next_pid++, p});
    }
}

CcpEngine::State CcpEngine::initial(const Process& p, std::vector<Obligation> globals) const {
    std::unordered_set<Symbol> reserved = reserved_;
    collect_all_vars(p, reserved);
    State s;
    s.names = NameGen(std::move(reserved));
    s.config.obligations = std::move(globals);
    std::vector<Agent> agents;
    push_agents(p, s, agents);
    s.config.agents = std::move(agents);
    return s;
}

std::vector<Move> CcpEngine::enabled(const State& s) const {
    std::vector<Move> out;
    const auto& agents = s.config.agents;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const Process& p = agents[i].proc;
        switch (p.kind()) {
        case Process::Kind::Tell:
        case Process::Kind::Local: out.push_back({i, agents[i].pid, std::nullopt}); break;
        case Process::Kind::Call:
            if (program_.find(p.name(), p.args().size()) || is_builtin(p.name(), p.args().size())) {
                out.push_back({i, agents[i].pid, std::nullopt});
            }
            break;
        case Process::Kind::Sum:
            for (std::size_t k = 0; k < p.branches().size(); ++k) {
                const auto& b = p.branches()[k];
                if (b.hole) continue;
                if (b.guard.is_true() || cs_.entails_raw(s.config.store, b.guard)) {
                    out.push_back({i, agents[i].pid, static_cast<int>(k + 1)});
                }
            }
            break;
        default: break;
        }
    }
    return out;
}

CcpEngine::State CcpEngine::apply(const State& s, const Move& m) const {
    State n = s;
    const Agent agent = n.config.agents.at(m.index);
    const Process& p = agent.proc;
    std::vector<Agent> fresh_agents;
    switch (p.kind()) {
    case Process::Kind::Tell:
        try {
            Atomized a = cs_.atomize(p.constraint(), n.names, &n.config.store);
            n.config.store = cs_.add_all(n.config.store, a.atoms);
            if (!a.fresh.empty()) n.config.store = cs_.hide(n.config.store, a.fresh);
        } catch (const InstantiationError& e) {
            n.error = e.what();
            return n;
        }
        break;
    case Process::Kind::Sum: {
        const auto& b = p.branches().at(static_cast<std::size_t>(*m.branch - 1));
        push_agents(*b.body, n, fresh_agents);
        break;
    }
    case Process::Kind::Local: {
        Symbol x = n.names.fresh(p.var().name());
        Substitution sub{{p.var(), Term::var(x)}};
        n.config.store = cs_.hide(n.config.store, {x});
        push_agents(p.body().substitute(sub), n, fresh_agents);
        break;
    }
    case Process::Kind::Call: {
        if (const ProcDef* d = program_.find(p.name(), p.args().size())) {
            Substitution sub;
            for (std::size_t a = 0; a < d->params.size(); ++a) sub[d->params[a]] = p.args()[a];
            push_agents(d->body.substitute(sub), n, fresh_agents);
        } else {
            try {
                push_agents(builtin_process(builtin_alternatives(cs_, n.config.store, p.name(), p.args())), n,
                            fresh_agents);
            } catch (const InstantiationError& e) {
                n.error = e.what();
                return n;
            }
        }
        break;
    }
    default: break;
    }
    auto& agents = n.config.agents;
    agents.erase(agents.begin() + static_cast<std::ptrdiff_t>(m.index));
    agents.insert(agents.begin() + static_cast<std::ptrdiff_t>(m.index), fresh_agents.begin(), fresh_agents.end());
    return n;
}

std::optional<std::pair<CcpEngine::State, TransitionLabel>> CcpEngine::step(const State& s, Policy& policy) const {
    std::vector<Move> moves = enabled(s);
    auto pick = policy.choose(s.config, moves);
    if (!pick) return std::nullopt;
    const Move& m = moves.at(*pick);
    return std::make_pair(apply(s, m), TransitionLabel{m.pid, m.branch});
}

Trace CcpEngine::run(const Process& p, Policy& policy, RunOptions opts, const StepHook& hook,
                     std::vector<Obligation> globals) const {
    Trace trace;
    trace.meta.mode = Mode::Ccp;
    trace.meta.policy = policy.name();
    trace.meta.max_steps = opts.max_steps;
    trace.meta.node_budget = cs_.options().node_budget;
    State s = initial(p, std::move(globals));
    trace.configs.push_back(s.config);
    if (hook && !hook(trace)) {
        trace.verdict = Verdict::AssertionViolation;
        return trace;
    }
    for (;;) {
        if (!s.config.store.consistent() || s.error) {
            trace.verdict = Verdict::Failure;
            break;
        }
        if (trace.labels.size() >= opts.max_steps) {
            trace.verdict = Verdict::BudgetExceeded;
            break;
        }
        std::optional<std::pair<State, TransitionLabel>> next;
        try {
            next = step(s, policy);
        } catch (const BudgetExceeded&) {
            trace.verdict = Verdict::BudgetExceeded;
            break;
        }
        if (!next) {
            trace.verdict = s.config.agents.empty() ? Verdict::Success : Verdict::Suspended;
            break;
        }
        s = std::move(next->first);
        trace.configs.push_back(s.config);
        trace.labels.push_back(next->second);
        if (hook && !hook(trace)) {
            trace.verdict = Verdict::AssertionViolation;
            break;
        }
    }
    return trace;
}

namespace {

struct Explorer {
    const CcpEngine& engine;
    const Constraint& goal;
    ObservablesOptions opts;
    std::uint64_t states = 0;
    bool over_budget = false;

    bool observed(const CcpEngine::State& s) const {
        const Store& st = s.config.store;
        if (opts.require_success) {
            return s.config.agents.empty() && !s.error && st.consistent() &&
                   engine.constraints().entails(st, goal);
        }
        if (!st.consistent()) return true;
        return engine.constraints().entails(st, goal);
    }

    bool dead(const CcpEngine::State& s) const { return s.error.has_value() || !s.config.store.consistent(); }

    // Deterministic moves never disable or get disabled by others, so they
    // run eagerly in leftmost order.
    bool saturate(CcpEngine::State& s, std::uint64_t& depth) {
        for (;;) {
            if (dead(s)) return false;
            std::vector<Move> moves = engine.enabled(s);
            auto it = std::find_if(moves.begin(), moves.end(), [](const Move& m) { return !m.branch; });
            if (it == moves.end()) return true;
            if (++states > opts.budget || ++depth > opts.max_depth) {
                over_budget = true;
                return false;
            }
            s = engine.apply(s, *it);
        }
    }

    bool explore(CcpEngine::State s, std::uint64_t depth) {
        bool alive = saturate(s, depth);
        if (!opts.require_success && !s.error && !s.config.store.consistent()) return true;
        if (!alive) return false;
        if (observed(s)) return true;
        std::vector<Move> moves = engine.enabled(s);
        if (moves.empty()) return false;
        // A sum whose branches are all enabled can be chosen first without loss.
        std::vector<Move> chosen;
        for (std::size_t i = 0; i < moves.size();) {
            std::size_t j = i;
            while (j < moves.size() && moves[j].index == moves[i].index) ++j;
            const Process& p = s.config.agents[moves[i].index].proc;
            std::size_t live = 0;
            for (const auto& b : p.branches()) live += b.hole ? 0 : 1;
            if (j - i == live) {
                chosen.assign(moves.begin() + static_cast<std::ptrdiff_t>(i),
                              moves.begin() + static_cast<std::ptrdiff_t>(j));
                break;
            }
            i = j;
        }
        if (chosen.empty()) chosen = moves;
        for (const auto& m : chosen) {
            if (++states > opts.budget || depth + 1 > opts.max_depth) {
                over_budget = true;
                return false;
            }
            if (explore(engine.apply(s, m), depth + 1)) return true;
        }
        return false;
    }
};

}  // namespace

Observed observables_check(const CcpEngine& engine, const Process& p, const Constraint& c, ObservablesOptions opts) {
    Explorer ex{engine, c, opts};
    try {
        if (ex.explore(engine.initial(p), 0)) return Observed::Yes;
    } catch (const BudgetExceeded&) {
        return Observed::BudgetExceeded;
    }
    return ex.over_budget ? Observed::BudgetExceeded : Observed::No;
}

}  // namespace clpslice
