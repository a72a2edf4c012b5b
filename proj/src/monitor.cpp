#include "clpslice/monitor.hpp"

#include <algorithm>

namespace clpslice {

namespace {

using K = Assertion::Kind;

template <class F>
void for_calls(const EvalContext& ctx, const Assertion& f, F&& fn) {
    for (const auto& a : ctx.agents) {
        if (a.proc.kind() != Process::Kind::Call) continue;
        if (a.proc.name() != f.pred() || a.proc.args().size() != f.formals().size()) continue;
        Substitution sub;
        for (std::size_t i = 0; i < f.formals().size(); ++i) sub[f.formals()[i]] = a.proc.args()[i];
        fn(a, f.body().substitute(sub));
    }
}

}  // namespace

bool eval(const EvalContext& ctx, const Assertion& f) {
    switch (f.kind()) {
    case K::Pos: return ctx.cs.entails_raw(ctx.store, f.constraint());
    case K::Neg: return !ctx.cs.entails_raw(ctx.store, f.constraint());
    case K::Cons: return ctx.cs.consistent(ctx.store, f.constraint());
    case K::Icons: return !ctx.cs.consistent(ctx.store, f.constraint());
    case K::And: return eval(ctx, f.left()) && eval(ctx, f.right());
    case K::Or: return eval(ctx, f.left()) || eval(ctx, f.right());
    case K::Implies: return !eval(ctx, f.left()) || eval(ctx, f.right());
    case K::ForAll: {
        bool ok = true;
        for_calls(ctx, f, [&](const Agent&, const Assertion& g) { ok = ok && eval(ctx, g); });
        return ok;
    }
    case K::Exists: {
        bool ok = false;
        for_calls(ctx, f, [&](const Agent&, const Assertion& g) { ok = ok || eval(ctx, g); });
        return ok;
    }
    }
    return true;
}

bool eval(const ConstraintSystem& cs, const Trace& trace, std::size_t i, const Assertion& f) {
    const Configuration& c = trace.configs.at(i);
    return eval(EvalContext{cs, c.store, c.agents}, f);
}

bool persistent(const Assertion& f) {
    switch (f.kind()) {
    case K::Pos:
    case K::Icons: return true;
    case K::And:
    case K::Or: return persistent(f.left()) && persistent(f.right());
    default: return false;
    }
}

bool stop_eligible(const Assertion& f) {
    switch (f.kind()) {
    case K::Neg:
    case K::Cons: return true;
    case K::And:
    case K::Or: return stop_eligible(f.left()) && stop_eligible(f.right());
    case K::Implies: return persistent(f.left()) && stop_eligible(f.right());
    default: return false;
    }
}

bool has_quantifier(const Assertion& f) {
    if (f.is_quantified()) return true;
    if (f.is_binary()) return has_quantifier(f.left()) || has_quantifier(f.right());
    return false;
}

std::vector<std::size_t> schedule(const std::vector<Obligation>& obligations, Event event) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < obligations.size(); ++i) {
        const auto& a = obligations[i].assertion;
        bool inv = a.kind == ClassifiedAssertion::Kind::Inv;
        if (event == Event::Step) {
            if (inv && stop_eligible(a.body)) out.push_back(i);
        } else if (inv) {
            if (!stop_eligible(a.body)) out.push_back(i);
        } else if (!has_quantifier(a.body)) {
            out.push_back(i);
        }
    }
    return out;
}

std::optional<std::size_t> check(const EvalContext& ctx, const std::vector<Obligation>& obligations, Event event) {
    for (std::size_t i : schedule(obligations, event)) {
        if (!eval(ctx, obligations[i].assertion.body)) return i;
    }
    return std::nullopt;
}

Marking symp(const EvalContext& ctx, const Assertion& f, const SympOptions& opts) {
    Marking m;
    switch (f.kind()) {
    case K::Pos:
    case K::Icons: m.cids = var_sharing(ctx.store, f.constraint().free_vars(), opts.var_closure); break;
    case K::Neg: {
        auto r = s_minimal(ctx.cs, ctx.store, f.constraint(), opts.minimal);
        m.cids = std::move(r.cids);
        m.approximate = r.approximate;
        break;
    }
    case K::Cons: {
        auto r = s_minimal_inconsistent(ctx.cs, ctx.store, f.constraint(), opts.minimal);
        m.cids = std::move(r.cids);
        m.approximate = r.approximate;
        break;
    }
    case K::And: m = symp(ctx, f.left(), opts).unite(symp(ctx, f.right(), opts)); break;
    case K::Or: m = Marking::intersect(symp(ctx, f.left(), opts), symp(ctx, f.right(), opts)); break;
    case K::Implies: m = symp(ctx, negate(f.left()), opts).unite(symp(ctx, f.right(), opts)); break;
    case K::ForAll:
        for_calls(ctx, f, [&](const Agent& a, const Assertion& g) {
            if (!eval(ctx, g)) m.pids.insert(a.pid);
        });
        break;
    case K::Exists: {
        std::vector<Symbol> vars;
        for (Symbol v : f.body().free_vars()) {
            if (std::find(f.formals().begin(), f.formals().end(), v) == f.formals().end()) vars.push_back(v);
        }
        m.cids = var_sharing(ctx.store, vars, false);
        for_calls(ctx, f, [&](const Agent& a, const Assertion&) { m.pids.insert(a.pid); });
        break;
    }
    }
    return m;
}

}  // namespace clpslice
