#include "clpslice/marking.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace clpslice {

Marking& Marking::unite(const Marking& o) {
    cids.insert(o.cids.begin(), o.cids.end());
    pids.insert(o.pids.begin(), o.pids.end());
    approximate = approximate || o.approximate;
    return *this;
}

Marking Marking::intersect(const Marking& a, const Marking& b) {
    Marking m;
    std::set_intersection(a.cids.begin(), a.cids.end(), b.cids.begin(), b.cids.end(),
                          std::inserter(m.cids, m.cids.end()));
    std::set_intersection(a.pids.begin(), a.pids.end(), b.pids.begin(), b.pids.end(),
                          std::inserter(m.pids, m.pids.end()));
    m.approximate = a.approximate || b.approximate;
    return m;
}

std::set<Cid> var_sharing(const Store& store, const std::vector<Symbol>& vars, bool closure) {
    std::unordered_set<Symbol> live(vars.begin(), vars.end());
    std::set<Cid> out;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : store.atoms()) {
            if (out.count(a.cid)) continue;
            auto vs = a.atom.vars();
            if (std::none_of(vs.begin(), vs.end(), [&](Symbol v) { return live.count(v) > 0; })) continue;
            out.insert(a.cid);
            if (closure) {
                live.insert(vs.begin(), vs.end());
                changed = true;
            }
        }
    }
    return out;
}

namespace {

using Index = std::vector<std::uint16_t>;
using Test = std::function<bool(const std::vector<AtomicConstraint>&)>;

bool contains_subset(const Index& big, const std::vector<Index>& found) {
    for (const auto& f : found) {
        if (std::includes(big.begin(), big.end(), f.begin(), f.end())) return true;
    }
    return false;
}

std::vector<AtomicConstraint> pick(const std::vector<StoredAtom>& atoms, const Index& idx) {
    std::vector<AtomicConstraint> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(atoms[i].atom);
    return out;
}

MinimalResult finish(const std::vector<StoredAtom>& atoms, const std::vector<Index>& found) {
    MinimalResult r;
    for (const auto& f : found) {
        std::vector<Cid> s;
        for (auto i : f) s.push_back(atoms[i].cid);
        std::sort(s.begin(), s.end());
        r.cids.insert(s.begin(), s.end());
        r.subsets.push_back(std::move(s));
    }
    return r;
}

// Cardinality-ascending search over subsets grown through shared variables.
// When `connected`, growth must also start at the seed variables.
MinimalResult search(const std::vector<StoredAtom>& atoms, const std::vector<Symbol>& seed, bool connected,
                     const Test& test, std::uint64_t budget) {
    std::uint64_t checks = 1;
    if (test({})) {
        MinimalResult r;
        r.subsets.emplace_back();
        return r;
    }
    std::vector<Index> found;
    const std::size_t n = atoms.size();
    // Both tests are monotone: if the whole store fails, every subset does.
    std::vector<AtomicConstraint> everything;
    for (const auto& a : atoms) everything.push_back(a.atom);
    ++checks;
    if (!test(everything)) return {};
    std::vector<std::vector<Symbol>> avars(n);
    for (std::size_t i = 0; i < n; ++i) avars[i] = atoms[i].atom.vars();
    std::unordered_set<Symbol> seedset(seed.begin(), seed.end());
    auto touches = [&](std::size_t i, const std::unordered_set<Symbol>& vs) {
        return std::any_of(avars[i].begin(), avars[i].end(), [&](Symbol v) { return vs.count(v) > 0; });
    };

    auto overflow = [&]() {
        std::set<Cid> comp;
        if (connected) {
            comp = var_sharing(Store::from_parts(atoms, {}, true), seed, true);
        } else {
            for (const auto& a : atoms) comp.insert(a.cid);
        }
        MinimalResult r = finish(atoms, found);
        r.cids.insert(comp.begin(), comp.end());
        r.approximate = true;
        return r;
    };

    std::set<Index> level{Index{}};
    for (std::size_t k = 1; k <= n && !level.empty(); ++k) {
        std::set<Index> next;
        for (const auto& base : level) {
            std::unordered_set<Symbol> vs = seedset;
            for (auto i : base) vs.insert(avars[i].begin(), avars[i].end());
            for (std::size_t i = 0; i < n; ++i) {
                if (std::binary_search(base.begin(), base.end(), i)) continue;
                // Minimal sets are connected through shared variables, on
                // their own or via the seed, so growth follows sharing.
                if ((connected || !base.empty()) && !touches(i, vs)) continue;
                Index cand = base;
                cand.insert(std::upper_bound(cand.begin(), cand.end(), i), static_cast<std::uint16_t>(i));
                if (next.count(cand) || contains_subset(cand, found)) continue;
                next.insert(std::move(cand));
            }
        }
        std::set<Index> survivors;
        for (const auto& cand : next) {
            if (contains_subset(cand, found)) continue;
            if (++checks > budget) return overflow();
            if (test(pick(atoms, cand))) {
                found.push_back(cand);
            } else {
                survivors.insert(cand);
            }
        }
        level = std::move(survivors);
    }
    return finish(atoms, found);
}

}  // namespace

MinimalResult s_minimal(const ConstraintSystem& cs, const Store& store, const Constraint& c, MinimalOptions opts) {
    const auto& atoms = store.atoms();
    Test test = [&](const std::vector<AtomicConstraint>& s) { return cs.entails_atoms(s, c); };
    return search(atoms, c.free_vars(), store.consistent(), test, opts.subset_budget);
}

MinimalResult s_minimal_inconsistent(const ConstraintSystem& cs, const Store& store, const Constraint& c,
                                     MinimalOptions opts) {
    const auto& atoms = store.atoms();
    std::unordered_set<Symbol> reserved;
    for (const auto& a : atoms) {
        for (Symbol v : a.atom.vars()) reserved.insert(v);
    }
    for (Symbol v : c.free_vars()) reserved.insert(v);
    NameGen names(std::move(reserved));
    Atomized ca = cs.atomize(c, names, &store);
    std::vector<Symbol> seed = c.free_vars();
    for (const auto& a : ca.atoms) a.collect_vars(seed);
    Test test = [&](std::vector<AtomicConstraint> s) {
        s.insert(s.end(), ca.atoms.begin(), ca.atoms.end());
        return cs.satisfiable(s) == Satisfiability::Unsat;
    };
    return search(atoms, seed, store.consistent(), test, opts.subset_budget);
}

}  // namespace clpslice
