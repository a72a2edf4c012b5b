#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clpslice/assertion.hpp"
#include "clpslice/constraint.hpp"
#include "clpslice/process.hpp"

namespace clpslice {

struct SourceSpan {
    int line = 0;
    int col = 0;
};

// A CLP body literal: a predicate call, a constraint, or an assertion annotation.
struct Literal {
    enum class Kind : std::uint8_t { Atom, Constraint, Assertion };
    Kind kind = Kind::Atom;
    Symbol pred;
    std::vector<Term> args;
    Constraint constraint;
    ClassifiedAssertion assertion;
    SourceSpan span;

    static Literal atom(Symbol pred, std::vector<Term> args);
    static Literal of(Constraint c);
    static Literal of(ClassifiedAssertion a);

    std::vector<Symbol> vars() const;
    void collect_vars(std::vector<Symbol>& out) const;
    Literal substitute(const Substitution& s) const;
    std::string to_string() const;

    friend bool operator==(const Literal& a, const Literal& b);
};

struct Rule {
    Symbol pred;
    std::vector<Term> head;
    std::vector<Literal> body;
    SourceSpan span;

    std::size_t arity() const { return head.size(); }
    std::string key() const;  // "p/2"
    std::vector<Symbol> vars() const;  // head then body, first occurrence
    std::string to_string() const;
};

struct SidecarEntry {
    std::string target;  // "p/2" or "global"
    ClassifiedAssertion assertion;
};

struct ClpProgram {
    std::vector<Rule> rules;

    std::vector<const Rule*> clauses(Symbol pred, std::size_t arity) const;
    bool defines(Symbol pred, std::size_t arity) const;
    // Predicate keys in order of first definition.
    std::vector<std::string> predicates() const;
    std::string to_string() const;
};

struct CcpProgram {
    std::vector<ProcDef> defs;
    std::optional<Process> main;

    const ProcDef* find(Symbol name, std::size_t arity) const;
    std::string to_string() const;
};

std::string pred_key(Symbol pred, std::size_t arity);

}  // namespace clpslice
