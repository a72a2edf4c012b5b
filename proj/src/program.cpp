#include "clpslice/program.hpp"

#include <algorithm>

namespace clpslice {

Literal Literal::atom(Symbol pred, std::vector<Term> args) {
    Literal l;
    l.kind = Kind::Atom;
    l.pred = pred;
    l.args = std::move(args);
    return l;
}

Literal Literal::of(Constraint c) {
    Literal l;
    l.kind = Kind::Constraint;
    l.constraint = std::move(c);
    return l;
}

Literal Literal::of(ClassifiedAssertion a) {
    Literal l;
    l.kind = Kind::Assertion;
    l.assertion = std::move(a);
    return l;
}

void Literal::collect_vars(std::vector<Symbol>& out) const {
    switch (kind) {
    case Kind::Atom:
        for (const auto& t : args) t.collect_vars(out);
        break;
    case Kind::Constraint: constraint.collect_free_vars(out); break;
    case Kind::Assertion:
        for (Symbol v : assertion.body.free_vars()) {
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
        break;
    }
}

std::vector<Symbol> Literal::vars() const {
    std::vector<Symbol> out;
    collect_vars(out);
    return out;
}

Literal Literal::substitute(const Substitution& s) const {
    Literal l = *this;
    switch (kind) {
    case Kind::Atom:
        for (auto& t : l.args) t = t.substitute(s);
        break;
    case Kind::Constraint: l.constraint = constraint.substitute(s); break;
    case Kind::Assertion: l.assertion.body = assertion.body.substitute(s); break;
    }
    return l;
}

std::string Literal::to_string() const {
    switch (kind) {
    case Kind::Atom: return Term::compound(pred, args).to_string();
    case Kind::Constraint: return constraint.to_string();
    case Kind::Assertion: return assertion.to_string();
    }
    return "?";
}

bool operator==(const Literal& a, const Literal& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Literal::Kind::Atom: return a.pred == b.pred && a.args == b.args;
    case Literal::Kind::Constraint: return a.constraint == b.constraint;
    case Literal::Kind::Assertion: return a.assertion == b.assertion;
    }
    return false;
}

std::string pred_key(Symbol pred, std::size_t arity) { return pred.name() + "/" + std::to_string(arity); }

std::string Rule::key() const { return pred_key(pred, head.size()); }

std::vector<Symbol> Rule::vars() const {
    std::vector<Symbol> out;
    for (const auto& t : head) t.collect_vars(out);
    for (const auto& l : body) l.collect_vars(out);
    return out;
}

std::string Rule::to_string() const {
    std::string s = Term::compound(pred, head).to_string();
    if (!body.empty()) {
        s += " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) s += ", ";
            // Conjunctions inside a body literal would be ambiguous without parentheses.
            std::string lit = body[i].to_string();
            if (body[i].kind == Literal::Kind::Constraint && body[i].constraint.items().size() > 1) lit = "(" + lit + ")";
            s += lit;
        }
    }
    return s + ".";
}

std::vector<const Rule*> ClpProgram::clauses(Symbol pred, std::size_t arity) const {
    std::vector<const Rule*> out;
    for (const auto& r : rules) {
        if (r.pred == pred && r.head.size() == arity) out.push_back(&r);
    }
    return out;
}

bool ClpProgram::defines(Symbol pred, std::size_t arity) const {
    return std::any_of(rules.begin(), rules.end(),
                       [&](const Rule& r) { return r.pred == pred && r.head.size() == arity; });
}

std::vector<std::string> ClpProgram::predicates() const {
    std::vector<std::string> out;
    for (const auto& r : rules) {
        std::string k = r.key();
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    return out;
}

std::string ClpProgram::to_string() const {
    std::string s;
    for (const auto& r : rules) s += r.to_string() + "\n";
    return s;
}

const ProcDef* CcpProgram::find(Symbol name, std::size_t arity) const {
    for (const auto& d : defs) {
        if (d.name == name && d.params.size() == arity) return &d;
    }
    return nullptr;
}

std::string CcpProgram::to_string() const {
    std::string s;
    for (const auto& d : defs) s += d.to_string() + "\n";
    if (main) s += main->to_string() + ".\n";
    return s;
}

}  // namespace clpslice
