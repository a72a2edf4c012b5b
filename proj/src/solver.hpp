#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clpslice/store.hpp"

namespace clpslice::detail {

using Witness = std::unordered_map<Symbol, std::int64_t>;

struct SolvedForm {
    Substitution bindings;  // triangular mgu of the Eq atoms
    bool herbrand_ok = true;
    std::vector<AtomicConstraint> fd;  // InDomain / Lin atoms, unresolved
    bool has_false = false;
    Satisfiability status = Satisfiability::Sat;
    Witness witness;
};

class Budget {
public:
    explicit Budget(std::uint64_t limit) : limit_(limit) {}
    void tick();
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

Term walk(const Substitution& b, Term t);
Term resolve(const Substitution& b, const Term& t);
// `bindable` marks variables that should be bound in preference to others.
bool unify(Substitution& b, const Term& x, const Term& y, bool occurs_check,
           const std::vector<Symbol>* bindable = nullptr, std::vector<Symbol>* bound = nullptr);

// Extend `base` with `atoms` and recompute the status.
SolvedForm extend(const SolvedForm& base, const std::vector<AtomicConstraint>& atoms, const SolverOptions& opts,
                  Budget& budget);

// Satisfiability of the FD part of `form` plus `extra` (Lin/InDomain atoms).
Satisfiability fd_check(const SolvedForm& form, const std::vector<AtomicConstraint>& extra, Budget& budget,
                        Witness* witness_out = nullptr);

std::optional<std::pair<std::int64_t, std::int64_t>> fd_bounds(const SolvedForm& form, const Term& t, Budget& budget);

}  // namespace clpslice::detail
