#include "clpslice/clp.hpp"

#include <algorithm>
#include <unordered_set>

#include "clpslice/builtins.hpp"
#include "clpslice/translate.hpp"

namespace clpslice {

std::vector<Symbol> goal_vars(const std::vector<Literal>& goal) {
    std::vector<Symbol> out;
    for (const auto& l : goal) {
        if (l.kind != Literal::Kind::Assertion) l.collect_vars(out);
    }
    return out;
}

std::string project_answer(const ConstraintSystem& cs, const Store& store, const std::vector<Symbol>& vars) {
    std::vector<std::string> parts;
    for (Symbol v : vars) {
        Term t = cs.resolve(store, Term::var(v));
        if (t.is_var()) {
            auto b = cs.bounds(store, t);
            if (b && b->first == b->second) {
                parts.push_back(v.name() + " = " + std::to_string(b->first));
            } else if (b) {
                parts.push_back(v.name() + " in " + std::to_string(b->first) + ".." + std::to_string(b->second));
            } else if (t.name() != v) {
                parts.push_back(v.name() + " = " + t.to_string());
            }
            continue;
        }
        parts.push_back(v.name() + " = " + t.to_string());
    }
    if (parts.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
    return s;
}

namespace {

Agent agent_of(const Goal& g) { return {g.pid, translate_literal(g.lit)}; }

}  // namespace

struct ClpRun::Impl {
    const ClpProgram& program;
    std::vector<Literal> goal;
    std::vector<Symbol> gvars;
    const ConstraintSystem& cs;
    ClpOptions opts;
    ClpHook hook;

    struct State {
        std::vector<Goal> goals;  // reversed: back is the leftmost literal
        Store store;
        NameGen names;
        Pid next_pid = 1;
        std::vector<Obligation> obligations;
        std::vector<TransitionLabel> labels;
        std::vector<int> choices;
        std::size_t steps = 0;
    };

    struct ChoicePoint {
        State base;  // call already removed
        Goal call;
        std::vector<const Rule*> clauses;
        std::vector<BuiltinAlt> builtin;
        std::size_t next = 0;
        std::size_t count = 0;
    };

    std::optional<State> current;
    std::vector<ChoicePoint> stack;
    bool halted = false;
    std::size_t produced = 0;

    Impl(const ClpProgram& p, std::vector<Literal> g, const ConstraintSystem& c, ClpOptions o, ClpHook h)
        : program(p), goal(std::move(g)), gvars(goal_vars(goal)), cs(c), opts(o), hook(std::move(h)) {
        std::unordered_set<Symbol> reserved;
        for (const auto& d : clp_to_ccp(program)) {
            reserved.insert(d.params.begin(), d.params.end());
            collect_all_vars(d.body, reserved);
        }
        collect_all_vars(translate_goal(goal), reserved);
        State s;
        s.names = NameGen(std::move(reserved));
        s.obligations = opts.globals;
        std::vector<Goal> fwd;
        push_literals(s, goal, fwd);
        s.goals.assign(fwd.rbegin(), fwd.rend());
        current = std::move(s);
        started = false;
    }

    bool started = false;

    void push_literals(State& s, const std::vector<Literal>& lits, std::vector<Goal>& out) const {
        for (const auto& l : lits) {
            if (l.kind == Literal::Kind::Assertion) {
                s.obligations.push_back({l.assertion, s.next_pid++});
            } else {
                out.push_back({s.next_pid++, l});
            }
        }
    }

    std::vector<Agent> agents_of(const State& s) const {
        std::vector<Agent> out;
        for (auto it = s.goals.rbegin(); it != s.goals.rend(); ++it) out.push_back(agent_of(*it));
        return out;
    }

    bool monitor(const State& s, bool answer) const {
        if (!hook) return true;
        std::vector<Agent> agents = agents_of(s);
        return hook(ClpView{s.store, agents, s.obligations, s.steps, answer});
    }

    ClpDerivation finish(const State& s, Verdict v, std::optional<std::string> error = std::nullopt) {
        ClpDerivation d;
        d.verdict = v;
        d.store = s.store;
        d.labels = s.labels;
        d.choices = s.choices;
        d.obligations = s.obligations;
        d.steps = s.steps;
        d.error = std::move(error);
        d.index = produced++;
        if (v == Verdict::Success) d.answer = project_answer(cs, s.store, gvars);
        if (v == Verdict::AssertionViolation) halted = true;
        return d;
    }

    State expand(ChoicePoint& cp, std::size_t k) {
        State s = cp.base;
        const Goal& call = cp.call;
        std::vector<Literal> lits;
        if (!cp.clauses.empty()) {
            const Rule& r = *cp.clauses[k];
            Substitution sub;
            for (Symbol v : r.vars()) sub[v] = Term::var(s.names.fresh(v.name()));
            for (std::size_t a = 0; a < r.head.size(); ++a) {
                lits.push_back(Literal::of(
                    Constraint::of(AtomicConstraint::equal(call.lit.args[a], r.head[a].substitute(sub)))));
            }
            for (const auto& l : r.body) lits.push_back(l.substitute(sub));
        } else {
            const BuiltinAlt& alt = cp.builtin[k];
            Substitution sub;
            for (Symbol v : alt.locals) sub[v] = Term::var(s.names.fresh(v.name()));
            for (const auto& l : alt.body) lits.push_back(l.substitute(sub));
        }
        std::vector<Goal> fwd;
        push_literals(s, lits, fwd);
        for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) s.goals.push_back(*it);
        s.labels.push_back({call.pid, static_cast<int>(k + 1)});
        s.choices.push_back(static_cast<int>(k + 1));
        ++s.steps;
        return s;
    }

    // Runs `current` forward until the derivation finishes.
    ClpDerivation forward() {
        if (!started) {
            State& s = *current;
            started = true;
            if (!monitor(s, false)) return finish(s, Verdict::AssertionViolation);
        }
        for (;;) {
            State& s = *current;
            if (s.goals.empty()) {
                if (!monitor(s, true)) return finish(s, Verdict::AssertionViolation);
                return finish(s, Verdict::Success);
            }
            if (s.steps >= opts.max_steps) return finish(s, Verdict::BudgetExceeded);
            Goal g = s.goals.back();
            s.goals.pop_back();
            if (g.lit.kind == Literal::Kind::Constraint) {
                try {
                    Atomized a = cs.atomize(g.lit.constraint, s.names, &s.store);
                    s.store = cs.add_all(s.store, a.atoms);
                    if (!a.fresh.empty()) s.store = cs.hide(s.store, a.fresh);
                } catch (const InstantiationError& e) {
                    return finish(s, Verdict::Failure, e.what());
                }
                s.labels.push_back({g.pid, std::nullopt});
                ++s.steps;
                if (!s.store.consistent()) return finish(s, Verdict::Failure);
                if (!monitor(s, false)) return finish(s, Verdict::AssertionViolation);
                continue;
            }
            ChoicePoint cp;
            cp.call = g;
            cp.clauses = program.clauses(g.lit.pred, g.lit.args.size());
            if (cp.clauses.empty()) {
                if (!is_builtin(g.lit.pred, g.lit.args.size())) {
                    s.goals.push_back(g);
                    return finish(s, Verdict::Failure,
                                  "undefined predicate " + pred_key(g.lit.pred, g.lit.args.size()));
                }
                try {
                    cp.builtin = builtin_alternatives(cs, s.store, g.lit.pred, g.lit.args);
                } catch (const InstantiationError& e) {
                    s.goals.push_back(g);
                    return finish(s, Verdict::Failure, e.what());
                }
            }
            cp.count = cp.clauses.empty() ? cp.builtin.size() : cp.clauses.size();
            cp.base = std::move(s);
            cp.next = 1;
            State first = expand(cp, 0);
            if (cp.next < cp.count) stack.push_back(std::move(cp));
            current = std::move(first);
            if (!monitor(*current, false)) return finish(*current, Verdict::AssertionViolation);
        }
    }

    std::optional<ClpDerivation> next() {
        if (halted) return std::nullopt;
        if (!current) {
            if (!stack.empty()) {
                ChoicePoint& cp = stack.back();
                std::size_t k = cp.next++;
                State s = expand(cp, k);
                if (cp.next >= cp.count) stack.pop_back();
                current = std::move(s);
                if (!monitor(*current, false)) {
                    ClpDerivation d = finish(*current, Verdict::AssertionViolation);
                    current.reset();
                    return d;
                }
            }
            if (!current) return std::nullopt;
        }
        ClpDerivation d;
        try {
            d = forward();
        } catch (const BudgetExceeded&) {
            d = finish(*current, Verdict::BudgetExceeded, "solver node budget exceeded");
        }
        current.reset();
        return d;
    }
};

ClpRun::ClpRun(const ClpProgram& program, std::vector<Literal> goal, const ConstraintSystem& cs, ClpOptions opts,
               ClpHook hook)
    : impl_(std::make_unique<Impl>(program, std::move(goal), cs, opts, std::move(hook))) {}

ClpRun::~ClpRun() = default;

std::optional<ClpDerivation> ClpRun::next() { return impl_->next(); }
bool ClpRun::halted() const { return impl_->halted; }

Replay replay_derivation(const CcpEngine& engine, const Process& goal, const ClpDerivation& d,
                         std::vector<Obligation> globals) {
    Replay r;
    r.trace.meta.mode = Mode::Clp;
    r.trace.meta.policy = "leftmost";
    CcpEngine::State s = engine.initial(goal, std::move(globals));
    r.trace.configs.push_back(s.config);
    r.boundary.push_back(0);
    std::size_t choice = 0;
    auto advance = [&](const Move& m) {
        s = engine.apply(s, m);
        r.trace.configs.push_back(s.config);
        r.trace.labels.push_back({m.pid, m.branch});
    };
    for (std::size_t j = 0; j < d.steps; ++j) {
        if (s.config.agents.empty()) break;
        const Agent& a = s.config.agents[0];
        if (a.proc.kind() == Process::Kind::Tell) {
            advance({0, a.pid, std::nullopt});
        } else if (a.proc.kind() == Process::Kind::Call) {
            advance({0, a.pid, std::nullopt});
            if (s.error || s.config.agents.empty()) break;
            const Agent& sum = s.config.agents[0];
            if (sum.proc.kind() != Process::Kind::Sum || choice >= d.choices.size()) break;
            advance({0, sum.pid, d.choices[choice++]});
            while (!s.config.agents.empty() && s.config.agents[0].proc.kind() == Process::Kind::Local) {
                advance({0, s.config.agents[0].pid, std::nullopt});
            }
        } else {
            break;
        }
        r.boundary.push_back(r.trace.configs.size() - 1);
    }
    r.trace.verdict = d.verdict;
    r.trace.answer = d.answer;
    return r;
}

}  // namespace clpslice
