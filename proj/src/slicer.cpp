#include "clpslice/slicer.hpp"

#include <algorithm>
#include <unordered_set>

namespace clpslice {

namespace {

std::vector<Symbol> all_vars(const Configuration& c) {
    std::vector<Symbol> out;
    for (const auto& a : c.store.atoms()) a.atom.collect_vars(out);
    for (const auto& a : c.agents) a.proc.collect_free_vars(out);
    return out;
}

Process applied(const Agent& a, const Replacements& theta) {
    auto it = theta.find(a.pid);
    return it == theta.end() ? a.proc : it->second;
}

// Agents of `after` created by the step.
std::vector<Agent> new_agents(const Configuration& before, const Configuration& after) {
    std::unordered_set<Pid> old;
    for (const auto& a : before.agents) old.insert(a.pid);
    std::vector<Agent> out;
    for (const auto& a : after.agents) {
        if (!old.count(a.pid)) out.push_back(a);
    }
    return out;
}

// Γ_Q θ, or nullopt when it is •.
std::optional<Process> residual(const std::vector<Agent>& gq, const Replacements& theta) {
    std::vector<Process> parts;
    bool any = false;
    for (const auto& a : gq) {
        Process p = applied(a, theta);
        any = any || !p.is_hole();
        parts.push_back(std::move(p));
    }
    if (!any) return std::nullopt;
    if (parts.size() == 1) return parts[0];
    return Process::par(std::move(parts));
}

std::vector<Symbol> fresh_hidden(const Store& before, const Store& after) {
    std::vector<Symbol> out;
    for (Symbol v : after.hidden()) {
        if (!before.is_hidden(v)) out.push_back(v);
    }
    return out;
}

void flatten(const Process& p, std::vector<Process>& out) {
    switch (p.kind()) {
    case Process::Kind::Par:
        for (const auto& q : p.parts()) flatten(q, out);
        break;
    case Process::Kind::Skip:
    case Process::Kind::Check: break;
    default: out.push_back(p);
    }
}

}  // namespace

Marking mark(const ConstraintSystem& cs, const Configuration& last, const MarkRequest& req, MinimalOptions opts) {
    std::vector<std::string> invalid;
    Marking m;
    for (Pid p : req.pids) {
        if (!last.find(p)) invalid.push_back("pid " + std::to_string(p));
        m.pids.insert(p);
    }
    switch (req.criterion) {
    case Criterion::Causality:
        for (Cid c : req.cids) {
            if (!last.store.find(c)) invalid.push_back("cid " + std::to_string(c));
            m.cids.insert(c);
        }
        break;
    case Criterion::Variables: {
        auto known = all_vars(last);
        for (Symbol v : req.vars) {
            if (std::find(known.begin(), known.end(), v) == known.end()) invalid.push_back("variable " + v.name());
        }
        m.cids = var_sharing(last.store, req.vars, req.var_closure);
        break;
    }
    case Criterion::Unexpected: {
        auto r = s_minimal(cs, last.store, req.constraint, opts);
        m.cids = std::move(r.cids);
        m.approximate = r.approximate;
        break;
    }
    case Criterion::Inconsistent: {
        auto r = s_minimal_inconsistent(cs, last.store, req.constraint, opts);
        m.cids = std::move(r.cids);
        m.approximate = r.approximate;
        break;
    }
    }
    if (!invalid.empty()) {
        std::string msg = "marking references unknown elements:";
        for (const auto& s : invalid) msg += " " + s;
        throw MarkingError(msg, std::move(invalid));
    }
    return m;
}

Constraint slice_constraints(const Store& before, const Store& after, const std::set<Cid>& relevant) {
    const Cid first_new = before.next_cid();
    Constraint out;
    bool any = false;
    for (const auto& a : after.atoms()) {
        if (a.cid < first_new) continue;
        if (relevant.count(a.cid)) {
            out.add(a.atom);
            any = true;
        } else {
            out.add_hole();
        }
    }
    if (!any) return Constraint::hole();
    out.set_exists(fresh_hidden(before, after));
    return out;
}

ProcessSlice slice_process(const Configuration& before, const Configuration& after, Pid pid,
                           std::optional<int> branch, const Replacements& theta, const std::set<Cid>& relevant) {
    const Agent* agent = before.find(pid);
    if (!agent) throw std::invalid_argument("label pid " + std::to_string(pid) + " not in configuration");
    const Process& p = agent->proc;
    ProcessSlice r;
    auto drop = [&] { r.theta.emplace(pid, Process::hole()); };
    switch (p.kind()) {
    case Process::Kind::Tell: {
        Constraint c = slice_constraints(before.store, after.store, relevant);
        if (c.all_holes()) {
            drop();
        } else if (!c.has_hole()) {
            r.theta.emplace(pid, p);
        } else {
            r.theta.emplace(pid, Process::tell(std::move(c)));
        }
        break;
    }
    case Process::Kind::Sum: {
        if (!branch) throw std::invalid_argument("sum step without branch for pid " + std::to_string(pid));
        auto res = residual(new_agents(before, after), theta);
        if (!res) {
            drop();
            break;
        }
        std::vector<Process::Branch> bs;
        const auto& orig = p.branches();
        std::size_t k = static_cast<std::size_t>(*branch - 1);
        for (std::size_t j = 0; j < orig.size(); ++j) {
            bs.push_back(j == k ? Process::branch(orig[j].guard, *res) : Process::hole_branch());
        }
        r.theta.emplace(pid, Process::sum(std::move(bs)));
        r.guard = orig.at(k).guard;
        break;
    }
    case Process::Kind::Local: {
        auto res = residual(new_agents(before, after), theta);
        if (!res) {
            drop();
            break;
        }
        auto fresh = fresh_hidden(before.store, after.store);
        Symbol x = fresh.empty() ? p.var() : fresh.front();
        r.theta.emplace(pid, Process::local(x, *res));
        break;
    }
    case Process::Kind::Call:
        if (!residual(new_agents(before, after), theta)) drop();
        break;
    case Process::Kind::Hole: drop(); break;
    default: break;
    }
    return r;
}

Trace slice_trace(const ConstraintSystem& cs, const Trace& trace, const Marking& marking, SliceOptions opts) {
    if (trace.configs.empty()) return trace;
    if (trace.labels.size() + 1 != trace.configs.size()) throw std::invalid_argument("malformed trace");
    const std::size_t n = trace.labels.size();
    const Configuration& last = trace.configs[n];

    Replacements theta;
    for (const auto& a : last.agents) {
        if (!marking.pids.count(a.pid)) theta.emplace(a.pid, Process::hole());
    }
    std::set<Cid> relevant = marking.cids;

    Trace out = trace;
    out.sliced = true;

    std::vector<Symbol> marked_agent_vars;
    for (const auto& a : last.agents) {
        if (marking.pids.count(a.pid)) a.proc.collect_free_vars(marked_agent_vars);
    }
    auto sliced_config = [&](const Configuration& c) {
        std::unordered_set<Symbol> vars(marked_agent_vars.begin(), marked_agent_vars.end());
        for (Cid id : relevant) {
            if (const StoredAtom* a = last.store.find(id)) {
                for (Symbol v : a->atom.vars()) vars.insert(v);
            }
        }
        std::vector<StoredAtom> atoms;
        for (const auto& a : c.store.atoms()) {
            if (relevant.count(a.cid)) atoms.push_back(a);
        }
        std::vector<Symbol> hidden;
        for (Symbol v : c.store.hidden()) {
            if (vars.count(v)) hidden.push_back(v);
        }
        Configuration s;
        s.store = Store::from_parts(std::move(atoms), std::move(hidden), c.store.consistent());
        for (const auto& a : c.agents) s.agents.push_back({a.pid, applied(a, theta)});
        s.obligations = c.obligations;
        return s;
    };

    out.configs[n] = sliced_config(last);
    if (opts.history) opts.history->assign(n + 1, {});
    if (opts.history) (*opts.history)[n] = relevant;
    for (std::size_t l = n; l-- > 0;) {
        const auto& label = trace.labels[l];
        ProcessSlice ps = slice_process(trace.configs[l], trace.configs[l + 1], label.pid, label.branch, theta,
                                        relevant);
        if (!ps.guard.is_true()) {
            auto r = s_minimal(cs, trace.configs[l].store, ps.guard, opts.minimal);
            relevant.insert(r.cids.begin(), r.cids.end());
        }
        for (auto& [pid, proc] : ps.theta) theta.insert_or_assign(pid, std::move(proc));
        out.configs[l] = sliced_config(trace.configs[l]);
        if (opts.history) (*opts.history)[l] = relevant;
    }
    return out;
}

bool refines(const Process& sliced, const Process& original) {
    if (sliced.is_hole() || sliced == original) return true;
    auto composite = [](const Process& p) {
        return p.kind() == Process::Kind::Par || p.kind() == Process::Kind::Skip || p.kind() == Process::Kind::Check;
    };
    if (composite(sliced) || composite(original)) {
        std::vector<Process> a, b;
        flatten(sliced, a);
        flatten(original, b);
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!refines(a[i], b[i])) return false;
        }
        return true;
    }
    if (sliced.kind() != original.kind()) return false;
    switch (sliced.kind()) {
    case Process::Kind::Tell:
        return sliced.constraint().has_hole() || !sliced.constraint().exists().empty();
    case Process::Kind::Sum: {
        const auto& a = sliced.branches();
        const auto& b = original.branches();
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].hole) continue;
            if (b[i].hole || !(a[i].guard == b[i].guard)) return false;
            if (!refines(a[i].process(), b[i].process())) return false;
        }
        return true;
    }
    case Process::Kind::Local: {
        Substitution sub{{original.var(), Term::var(sliced.var())}};
        return refines(sliced.body(), original.body().substitute(sub));
    }
    default: return false;
    }
}

}  // namespace clpslice
