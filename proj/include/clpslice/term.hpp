#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clpslice/symbol.hpp"

namespace clpslice {

class Term;
using Substitution = std::unordered_map<Symbol, Term>;

// Immutable first-order term. Lists use the functor '.'/2 and the atom [].
class Term {
public:
    enum class Kind : std::uint8_t { Var, Int, Compound };

    Term();  // the integer 0

    static Term var(Symbol name);
    static Term var(std::string_view name) { return var(Symbol(name)); }
    static Term integer(std::int64_t value);
    static Term compound(Symbol functor, std::vector<Term> args);
    static Term compound(std::string_view functor, std::vector<Term> args) {
        return compound(Symbol(functor), std::move(args));
    }
    static Term atom(std::string_view name) { return compound(Symbol(name), {}); }
    static Term nil();
    static Term cons(Term head, Term tail);
    static Term list(const std::vector<Term>& items, Term tail = nil());

    Kind kind() const;
    bool is_var() const { return kind() == Kind::Var; }
    bool is_int() const { return kind() == Kind::Int; }
    bool is_compound() const { return kind() == Kind::Compound; }
    bool is_atom() const { return is_compound() && arity() == 0; }
    bool is_nil() const;
    bool is_cons() const;
    // Arithmetic node: +/2, -/2, */2 or -/1.
    bool is_arith() const;

    Symbol name() const;  // variable name or functor
    std::int64_t value() const;
    const std::vector<Term>& args() const;
    std::size_t arity() const { return args().size(); }

    bool occurs(Symbol v) const;
    bool ground() const;
    // Variables in first-occurrence order, without duplicates.
    std::vector<Symbol> vars() const;
    void collect_vars(std::vector<Symbol>& out) const;
    // One-pass substitution; bindings are not chased.
    Term substitute(const Substitution& s) const;
    std::size_t depth() const;

    // Elements of a list term; `tail` receives the final non-cons tail.
    std::vector<Term> list_items(Term* tail) const;

    std::string to_string() const;
    std::size_t hash() const;

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Symbol cons_functor();
Symbol nil_functor();

}  // namespace clpslice

template <>
struct std::hash<clpslice::Term> {
    std::size_t operator()(const clpslice::Term& t) const noexcept { return t.hash(); }
};
