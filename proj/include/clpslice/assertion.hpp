#pragma once

#include <memory>
#include <string>
#include <vector>

#include "clpslice/constraint.hpp"

namespace clpslice {

// Assertion formulas: pos/neg/cons/icons over constraints, connectives and
// quantification over predicate calls.
class Assertion {
public:
    enum class Kind : std::uint8_t { Pos, Neg, Cons, Icons, And, Or, Implies, ForAll, Exists };

    Assertion();  // pos(true)

    static Assertion literal(Kind k, Constraint c);
    static Assertion pos(Constraint c) { return literal(Kind::Pos, std::move(c)); }
    static Assertion neg(Constraint c) { return literal(Kind::Neg, std::move(c)); }
    static Assertion cons(Constraint c) { return literal(Kind::Cons, std::move(c)); }
    static Assertion icons(Constraint c) { return literal(Kind::Icons, std::move(c)); }
    static Assertion binary(Kind k, Assertion l, Assertion r);
    static Assertion quantified(Kind k, Symbol pred, std::vector<Symbol> formals, Assertion body);

    Kind kind() const;
    bool is_literal() const;
    bool is_binary() const;
    bool is_quantified() const;
    const Constraint& constraint() const;
    const Assertion& left() const;
    const Assertion& right() const;
    const Assertion& body() const { return left(); }
    Symbol pred() const;
    const std::vector<Symbol>& formals() const;

    std::vector<Symbol> free_vars() const;
    Assertion substitute(const Substitution& s) const;
    std::string to_string() const;

    friend bool operator==(const Assertion& a, const Assertion& b);

private:
    struct Node;
    explicit Assertion(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Dual formula: pos<->neg, cons<->icons, forall<->exists, De Morgan; ~(F->G) = F /\ ~G.
Assertion negate(const Assertion& f);

struct ClassifiedAssertion {
    enum class Kind : std::uint8_t { Post, Inv };
    Kind kind = Kind::Inv;
    Assertion body;
    std::string attach = "global";  // predicate name/arity or "global"

    std::string to_string() const;  // inv(F) / post(F)
    friend bool operator==(const ClassifiedAssertion& a, const ClassifiedAssertion& b) {
        return a.kind == b.kind && a.body == b.body;
    }
};

}  // namespace clpslice
