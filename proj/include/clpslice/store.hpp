#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clpslice/constraint.hpp"
#include "clpslice/fresh.hpp"

namespace clpslice {

using Cid = std::uint64_t;

enum class Satisfiability : std::uint8_t { Sat, Unsat, Unknown };

struct SolverOptions {
    bool occurs_check = true;
    std::uint64_t node_budget = 1'000'000;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when sugar such as all_different meets an unbound list.
class InstantiationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StoredAtom {
    Cid cid = 0;
    AtomicConstraint atom;
};

namespace detail {
struct SolvedForm;
}

// Immutable store value: atoms with ids, hidden variables, cached status.
class Store {
public:
    Store();

    const std::vector<StoredAtom>& atoms() const { return *atoms_; }
    const std::vector<Symbol>& hidden() const { return *hidden_; }
    bool is_hidden(Symbol v) const;
    bool consistent() const { return status_ != Satisfiability::Unsat; }
    Satisfiability status() const { return status_; }
    Cid next_cid() const { return next_cid_; }
    const StoredAtom* find(Cid cid) const;
    std::vector<AtomicConstraint> atom_values() const;

    // Construct a store directly, e.g. from a trace document. Status is not computed.
    static Store from_parts(std::vector<StoredAtom> atoms, std::vector<Symbol> hidden, bool consistent);

private:
    friend class ConstraintSystem;
    std::shared_ptr<const std::vector<StoredAtom>> atoms_;
    std::shared_ptr<const std::vector<Symbol>> hidden_;
    Satisfiability status_ = Satisfiability::Sat;
    Cid next_cid_ = 1;
    std::shared_ptr<const detail::SolvedForm> solved_;
};

struct Atomized {
    std::vector<AtomicConstraint> atoms;
    std::vector<Symbol> fresh;
};

// Decision procedures over stores: Herbrand unification plus bounded-integer
// finite domains. Methods are const and reentrant; the diagnostic handler is
// the only shared hook.
class ConstraintSystem {
public:
    using DiagnosticHandler = std::function<void(const std::string&)>;

    explicit ConstraintSystem(SolverOptions options = {}, DiagnosticHandler diag = {});

    const SolverOptions& options() const { return options_; }
    void set_diagnostic_handler(DiagnosticHandler diag) { diag_ = std::move(diag); }

    // `context` resolves lists and bounds of global sugar (fd_domain, all_different).
    Atomized atomize(const Constraint& c, NameGen& names, const Store* context = nullptr) const;

    Store add(const Store& s, const AtomicConstraint& a) const;
    Store add_all(const Store& s, const std::vector<AtomicConstraint>& atoms) const;
    Store hide(const Store& s, const std::vector<Symbol>& vars) const;

    // ∃hidden.⊔atoms ⊨ c
    bool entails(const Store& s, const Constraint& c) const;
    // ⊔atoms ⊨ c, ignoring hiding (ask guards see local variables).
    bool entails_raw(const Store& s, const Constraint& c) const;
    bool consistent(const Store& s, const Constraint& c) const;

    // Plain atom lists, used by minimal-subset search.
    bool entails_atoms(const std::vector<AtomicConstraint>& atoms, const Constraint& c) const;
    Satisfiability satisfiable(const std::vector<AtomicConstraint>& atoms) const;

    // Term under the store's most general unifier.
    Term resolve(const Store& s, const Term& t) const;
    // Propagated integer bounds of a term, if finite.
    std::optional<std::pair<std::int64_t, std::int64_t>> bounds(const Store& s, const Term& t) const;

private:
    bool entails_impl(const Store& s, const Constraint& c, bool respect_hidden) const;
    void diagnose(const std::string& msg) const;

    SolverOptions options_;
    DiagnosticHandler diag_;
};

}  // namespace clpslice
