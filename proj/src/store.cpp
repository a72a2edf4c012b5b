#include "clpslice/store.hpp"

#include <algorithm>

#include "solver.hpp"

namespace clpslice {

using detail::Budget;
using detail::SolvedForm;

namespace {

const std::shared_ptr<const std::vector<StoredAtom>>& empty_atoms() {
    static const auto p = std::make_shared<const std::vector<StoredAtom>>();
    return p;
}

const std::shared_ptr<const std::vector<Symbol>>& empty_hidden() {
    static const auto p = std::make_shared<const std::vector<Symbol>>();
    return p;
}

const std::shared_ptr<const SolvedForm>& empty_form() {
    static const auto p = std::make_shared<const SolvedForm>();
    return p;
}

bool mentions_any(const std::vector<AtomicConstraint>& atoms, const std::vector<Symbol>& vars) {
    if (vars.empty()) return false;
    std::vector<Symbol> vs;
    for (const auto& a : atoms) a.collect_vars(vs);
    return std::any_of(vs.begin(), vs.end(),
                       [&](Symbol v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); });
}

}  // namespace

Store::Store() : atoms_(empty_atoms()), hidden_(empty_hidden()), solved_(empty_form()) {}

bool Store::is_hidden(Symbol v) const {
    return std::find(hidden_->begin(), hidden_->end(), v) != hidden_->end();
}

const StoredAtom* Store::find(Cid cid) const {
    for (const auto& a : *atoms_) {
        if (a.cid == cid) return &a;
    }
    return nullptr;
}

std::vector<AtomicConstraint> Store::atom_values() const {
    std::vector<AtomicConstraint> out;
    out.reserve(atoms_->size());
    for (const auto& a : *atoms_) out.push_back(a.atom);
    return out;
}

Store Store::from_parts(std::vector<StoredAtom> atoms, std::vector<Symbol> hidden, bool consistent) {
    Store s;
    Cid next = 1;
    for (const auto& a : atoms) next = std::max(next, a.cid + 1);
    s.atoms_ = std::make_shared<const std::vector<StoredAtom>>(std::move(atoms));
    s.hidden_ = std::make_shared<const std::vector<Symbol>>(std::move(hidden));
    s.status_ = consistent ? Satisfiability::Sat : Satisfiability::Unsat;
    s.next_cid_ = next;
    s.solved_.reset();
    return s;
}

ConstraintSystem::ConstraintSystem(SolverOptions options, DiagnosticHandler diag)
    : options_(options), diag_(std::move(diag)) {}

void ConstraintSystem::diagnose(const std::string& msg) const {
    if (diag_) diag_(msg);
}

namespace {

std::shared_ptr<const SolvedForm> solved_of(const Store&, const std::vector<AtomicConstraint>& atoms,
                                            const std::shared_ptr<const SolvedForm>& cached,
                                            const SolverOptions& opts) {
    if (cached) return cached;
    Budget b(opts.node_budget);
    return std::make_shared<const SolvedForm>(detail::extend(SolvedForm{}, atoms, opts, b));
}

void expand_global(const GlobalConstraint& g, const SolvedForm* ctx, std::vector<AtomicConstraint>& out) {
    auto res = [&](const Term& t) { return ctx ? detail::resolve(ctx->bindings, t) : t; };
    auto int_of = [&](const Term& t, const char* what) {
        Term r = res(t);
        if (!r.is_int()) throw InstantiationError(std::string(what) + ": bound is not an integer: " + r.to_string());
        return r.value();
    };
    auto list_of = [&](const Term& t, const char* what) {
        Term tail;
        Term r = res(t);
        auto items = r.list_items(&tail);
        if (!tail.is_nil()) throw InstantiationError(std::string(what) + ": not a proper list: " + r.to_string());
        return items;
    };
    switch (g.kind) {
    case GlobalConstraint::Kind::AllDifferent: {
        auto items = list_of(g.args.at(0), "all_different");
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                out.push_back(AtomicConstraint::linear(RelOp::Ne, items[i], items[j]));
            }
        }
        break;
    }
    case GlobalConstraint::Kind::FdDomain: {
        auto items = list_of(g.args.at(0), "fd_domain");
        std::int64_t lo = int_of(g.args.at(1), "fd_domain");
        std::int64_t hi = int_of(g.args.at(2), "fd_domain");
        for (const auto& x : items) out.push_back(AtomicConstraint::in_domain(x, lo, hi));
        break;
    }
    case GlobalConstraint::Kind::In:
        out.push_back(
            AtomicConstraint::in_domain(g.args.at(0), int_of(g.args.at(1), "in"), int_of(g.args.at(2), "in")));
        break;
    }
}

void atomize_rec(const Constraint& c, NameGen& names, const SolvedForm* ctx, Atomized& out) {
    Constraint body = c;
    if (!c.exists().empty()) {
        Substitution ren;
        for (Symbol v : c.exists()) {
            Symbol f = names.fresh(v.name());
            ren[v] = Term::var(f);
            out.fresh.push_back(f);
        }
        body.set_exists({});
        body = body.substitute(ren);
    }
    for (const auto& it : body.items()) {
        switch (it.kind) {
        case Constraint::Item::Kind::Atom: out.atoms.push_back(it.atom); break;
        case Constraint::Item::Kind::Global: expand_global(it.global, ctx, out.atoms); break;
        case Constraint::Item::Kind::Hole: throw std::logic_error("cannot atomize a sliced constraint");
        case Constraint::Item::Kind::Nested: atomize_rec(*it.nested, names, ctx, out); break;
        }
    }
}

}  // namespace

Atomized ConstraintSystem::atomize(const Constraint& c, NameGen& names, const Store* context) const {
    Atomized out;
    std::shared_ptr<const SolvedForm> form;
    if (context) form = solved_of(*context, context->atom_values(), context->solved_, options_);
    atomize_rec(c, names, form.get(), out);
    return out;
}

Store ConstraintSystem::add(const Store& s, const AtomicConstraint& a) const { return add_all(s, {a}); }

Store ConstraintSystem::add_all(const Store& s, const std::vector<AtomicConstraint>& atoms) const {
    Store out = s;
    auto list = std::make_shared<std::vector<StoredAtom>>(*s.atoms_);
    for (const auto& a : atoms) list->push_back({out.next_cid_++, a});
    out.atoms_ = std::move(list);
    auto base = solved_of(s, s.atom_values(), s.solved_, options_);
    Budget b(options_.node_budget);
    auto form = std::make_shared<SolvedForm>(detail::extend(*base, atoms, options_, b));
    if (!s.consistent()) form->status = Satisfiability::Unsat;
    out.status_ = form->status;
    if (out.status_ == Satisfiability::Unknown && s.status_ != Satisfiability::Unknown) {
        diagnose("consistency unknown (unbounded domains); treated as consistent");
    }
    out.solved_ = std::move(form);
    return out;
}

Store ConstraintSystem::hide(const Store& s, const std::vector<Symbol>& vars) const {
    Store out = s;
    auto h = std::make_shared<std::vector<Symbol>>(*s.hidden_);
    for (Symbol v : vars) {
        if (std::find(h->begin(), h->end(), v) == h->end()) h->push_back(v);
    }
    out.hidden_ = std::move(h);
    return out;
}

namespace {

struct GoalChecker {
    const SolvedForm& form;
    const SolverOptions& opts;
    const std::vector<Symbol>& aliases;
    const ConstraintSystem::DiagnosticHandler& diag;

    bool is_alias(Symbol v) const { return std::find(aliases.begin(), aliases.end(), v) != aliases.end(); }

    void note(const std::string& m) const {
        if (diag) diag(m);
    }

    // True iff S ∧ negation is unsatisfiable, for each negation in the list.
    bool refutes(const std::vector<AtomicConstraint>& negations, const AtomicConstraint& goal) const {
        for (const auto& n : negations) {
            Budget b(opts.node_budget);
            auto r = detail::fd_check(form, {n}, b);
            if (r == Satisfiability::Sat) return false;
            if (r == Satisfiability::Unknown) {
                note("entailment unknown for " + goal.to_string() + "; treated as not entailed");
                return false;
            }
        }
        return true;
    }

    bool check(const AtomicConstraint& g) const {
        switch (g.kind()) {
        case AtomicConstraint::Kind::True: return true;
        case AtomicConstraint::Kind::False: return false;
        case AtomicConstraint::Kind::Eq: {
            Substitution theta = form.bindings;
            std::vector<Symbol> bound;
            if (!detail::unify(theta, g.lhs(), g.rhs(), opts.occurs_check, &aliases, &bound)) return false;
            for (Symbol v : bound) {
                if (is_alias(v)) continue;
                Term t = detail::resolve(theta, theta.at(v));
                auto tv = t.vars();
                if (std::any_of(tv.begin(), tv.end(), [&](Symbol x) { return is_alias(x); })) {
                    note("entailment unknown for " + g.to_string() + " (existential in arithmetic)");
                    return false;
                }
                if (t.is_compound() && !t.is_arith()) return false;
                if (!refutes({AtomicConstraint::linear(RelOp::Ne, Term::var(v), t)}, g)) return false;
            }
            return true;
        }
        case AtomicConstraint::Kind::InDomain:
        case AtomicConstraint::Kind::Lin: {
            auto vs = g.vars();
            if (std::any_of(vs.begin(), vs.end(), [&](Symbol x) { return is_alias(x); })) {
                note("entailment unknown for " + g.to_string() + " (existential in arithmetic)");
                return false;
            }
            if (g.kind() == AtomicConstraint::Kind::InDomain) {
                return refutes({AtomicConstraint::linear(RelOp::Lt, g.lhs(), Term::integer(g.lo())),
                                AtomicConstraint::linear(RelOp::Gt, g.lhs(), Term::integer(g.hi()))},
                               g);
            }
            return refutes({AtomicConstraint::linear(negate(g.op()), g.lhs(), g.rhs())}, g);
        }
        }
        return false;
    }
};

}  // namespace

bool ConstraintSystem::entails_impl(const Store& s, const Constraint& c, bool respect_hidden) const {
    if (!s.consistent()) return true;
    if (c.has_hole()) throw std::logic_error("cannot decide entailment of a sliced constraint");
    NameGen alias_names;
    Atomized goal = atomize(c, alias_names, &s);
    std::shared_ptr<const SolvedForm> form;
    if (respect_hidden && mentions_any(goal.atoms, s.hidden())) {
        Substitution ren;
        std::size_t k = 0;
        for (Symbol h : s.hidden()) ren[h] = Term::var("$h" + std::to_string(++k));
        std::vector<AtomicConstraint> renamed;
        for (const auto& a : s.atoms()) renamed.push_back(a.atom.substitute(ren));
        Budget b(options_.node_budget);
        form = std::make_shared<const SolvedForm>(detail::extend(SolvedForm{}, renamed, options_, b));
        if (form->status == Satisfiability::Unsat) return true;
    } else {
        form = solved_of(s, s.atom_values(), s.solved_, options_);
    }
    GoalChecker checker{*form, options_, goal.fresh, diag_};
    return std::all_of(goal.atoms.begin(), goal.atoms.end(), [&](const AtomicConstraint& g) { return checker.check(g); });
}

bool ConstraintSystem::entails(const Store& s, const Constraint& c) const { return entails_impl(s, c, true); }

bool ConstraintSystem::entails_raw(const Store& s, const Constraint& c) const { return entails_impl(s, c, false); }

bool ConstraintSystem::consistent(const Store& s, const Constraint& c) const {
    if (!s.consistent()) return false;
    NameGen alias_names;
    Atomized goal = atomize(c, alias_names, &s);
    auto base = solved_of(s, s.atom_values(), s.solved_, options_);
    Budget b(options_.node_budget);
    auto form = detail::extend(*base, goal.atoms, options_, b);
    if (form.status == Satisfiability::Unknown) {
        diagnose("consistency unknown for " + c.to_string() + "; treated as consistent");
    }
    return form.status != Satisfiability::Unsat;
}

bool ConstraintSystem::entails_atoms(const std::vector<AtomicConstraint>& atoms, const Constraint& c) const {
    return entails_raw(add_all(Store(), atoms), c);
}

Satisfiability ConstraintSystem::satisfiable(const std::vector<AtomicConstraint>& atoms) const {
    Budget b(options_.node_budget);
    return detail::extend(SolvedForm{}, atoms, options_, b).status;
}

Term ConstraintSystem::resolve(const Store& s, const Term& t) const {
    auto form = solved_of(s, s.atom_values(), s.solved_, options_);
    return detail::resolve(form->bindings, t);
}

std::optional<std::pair<std::int64_t, std::int64_t>> ConstraintSystem::bounds(const Store& s, const Term& t) const {
    auto form = solved_of(s, s.atom_values(), s.solved_, options_);
    Budget b(options_.node_budget);
    return detail::fd_bounds(*form, t, b);
}

}  // namespace clpslice
