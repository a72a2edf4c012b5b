#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "clpslice/store.hpp"
#include "clpslice/trace.hpp"

namespace clpslice {

// Relevant constraints (by cid) and agents (by pid).
struct Marking {
    std::set<Cid> cids;
    std::set<Pid> pids;
    bool approximate = false;

    Marking& unite(const Marking& o);
    static Marking intersect(const Marking& a, const Marking& b);
    bool empty() const { return cids.empty() && pids.empty(); }
    friend bool operator==(const Marking& a, const Marking& b) {
        return a.cids == b.cids && a.pids == b.pids;
    }
};

struct MinimalOptions {
    std::uint64_t subset_budget = 50'000;  // subset checks before over-approximating
};

struct MinimalResult {
    std::vector<std::vector<Cid>> subsets;  // each set-minimal, sorted
    std::set<Cid> cids;                     // their union
    bool approximate = false;
};

// Union of set-minimal S' ⊆ atoms with ⊔S' ⊨ c.
MinimalResult s_minimal(const ConstraintSystem& cs, const Store& store, const Constraint& c,
                        MinimalOptions opts = {});

// Union of set-minimal S' ⊆ atoms with ⊔S' ⊔ c inconsistent.
MinimalResult s_minimal_inconsistent(const ConstraintSystem& cs, const Store& store, const Constraint& c,
                                     MinimalOptions opts = {});

// Atoms mentioning any of `vars`; with `closure`, iterate over the variables
// of the atoms found until nothing changes.
std::set<Cid> var_sharing(const Store& store, const std::vector<Symbol>& vars, bool closure);

}  // namespace clpslice
