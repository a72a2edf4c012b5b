#include "clpslice/builtins.hpp"

#include "clpslice/translate.hpp"

namespace clpslice {

namespace {

Literal eq(Term a, Term b) { return Literal::of(Constraint::of(AtomicConstraint::equal(std::move(a), std::move(b)))); }

Literal lin(RelOp op, Term a, Term b) {
    return Literal::of(Constraint::of(AtomicConstraint::linear(op, std::move(a), std::move(b))));
}

BuiltinAlt failure() { return {{}, {Literal::of(Constraint::of(AtomicConstraint::falsity()))}}; }

std::vector<BuiltinAlt> length_alts(const ConstraintSystem& cs, const Store& store, const std::vector<Term>& args) {
    Term list = cs.resolve(store, args[0]);
    Term n = cs.resolve(store, args[1]);
    Term tail;
    std::vector<Term> items = list.list_items(&tail);
    if (tail.is_nil()) return {{{}, {eq(args[1], Term::integer(static_cast<std::int64_t>(items.size())))}}};
    if (!tail.is_var()) throw InstantiationError("length/2: not a list: " + list.to_string());
    if (n.is_int()) {
        std::int64_t missing = n.value() - static_cast<std::int64_t>(items.size());
        if (missing < 0) return {failure()};
        BuiltinAlt alt;
        std::vector<Term> elems;
        // Distinct placeholder names; each local is freshened when unfolded.
        for (std::int64_t i = 0; i < missing; ++i) {
            alt.locals.push_back(Symbol("E" + std::string(static_cast<std::size_t>(i + 1), '\'')));
            elems.push_back(Term::var(alt.locals.back()));
        }
        alt.body.push_back(eq(items.empty() ? args[0] : tail, Term::list(elems)));
        return {alt};
    }
    if (!n.is_var()) throw InstantiationError("length/2: length is not an integer: " + n.to_string());
    BuiltinAlt empty{{}, {eq(args[0], Term::nil()), eq(args[1], Term::integer(0))}};
    Symbol h("H"), t("T"), m("M");
    BuiltinAlt more{{h, t, m},
                    {eq(args[0], Term::cons(Term::var(h), Term::var(t))),
                     lin(RelOp::Eq, args[1], Term::compound("+", {Term::var(m), Term::integer(1)})),
                     lin(RelOp::Ge, Term::var(m), Term::integer(0)),
                     Literal::atom(Symbol("length"), {Term::var(t), Term::var(m)})}};
    return {empty, more};
}

std::vector<BuiltinAlt> labeling_alts(const ConstraintSystem& cs, const Store& store, Symbol name,
                                      const std::vector<Term>& args) {
    Term list = cs.resolve(store, args[0]);
    Term tail;
    std::vector<Term> items = list.list_items(&tail);
    if (!tail.is_nil()) throw InstantiationError(name.name() + ": not a proper list: " + list.to_string());
    std::optional<Term> best;
    std::int64_t best_lo = 0, best_hi = 0;
    for (const auto& it : items) {
        if (it.is_int()) continue;
        if (!it.is_var()) throw InstantiationError(name.name() + ": not an integer variable: " + it.to_string());
        auto b = cs.bounds(store, it);
        if (!b) throw InstantiationError(name.name() + ": variable " + it.to_string() + " has no finite domain");
        if (!best || b->second - b->first < best_hi - best_lo) {
            best = it;
            best_lo = b->first;
            best_hi = b->second;
        }
    }
    if (!best) return {{{}, {}}};
    std::vector<BuiltinAlt> alts;
    for (std::int64_t v = best_lo; v <= best_hi; ++v) {
        Constraint c = Constraint::of(AtomicConstraint::equal(*best, Term::integer(v)));
        if (!cs.consistent(store, c)) continue;
        alts.push_back({{}, {eq(*best, Term::integer(v)), Literal::atom(name, args)}});
    }
    if (alts.empty()) return {failure()};
    return alts;
}

}  // namespace

bool is_builtin(Symbol name, std::size_t arity) {
    const std::string& n = name.name();
    if (n == "length") return arity == 2;
    if (n == "labeling" || n == "fd_labeling") return arity == 1 || arity == 2;
    return false;
}

std::vector<BuiltinAlt> builtin_alternatives(const ConstraintSystem& cs, const Store& store, Symbol name,
                                             const std::vector<Term>& args) {
    if (name.name() == "length") return length_alts(cs, store, args);
    return labeling_alts(cs, store, name, args);
}

Process builtin_process(const std::vector<BuiltinAlt>& alts) {
    std::vector<Process::Branch> branches;
    for (const auto& alt : alts) {
        branches.push_back(Process::branch(Constraint::truth(), wrap_locals(alt.locals, translate_goal(alt.body))));
    }
    return Process::sum(std::move(branches));
}

}  // namespace clpslice
