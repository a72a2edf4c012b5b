#include "clpslice/assertion.hpp"

#include <algorithm>

namespace clpslice {

struct Assertion::Node {
    Kind kind = Kind::Pos;
    Constraint c;
    std::vector<Assertion> children;  // binary: {l, r}; quantified: {body}
    Symbol pred;
    std::vector<Symbol> formals;
};

Assertion::Assertion() : Assertion(pos(Constraint::truth())) {}

Assertion Assertion::literal(Kind k, Constraint c) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->c = std::move(c);
    return Assertion(std::move(n));
}

Assertion Assertion::binary(Kind k, Assertion l, Assertion r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->children = {std::move(l), std::move(r)};
    return Assertion(std::move(n));
}

Assertion Assertion::quantified(Kind k, Symbol pred, std::vector<Symbol> formals, Assertion body) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->pred = pred;
    n->formals = std::move(formals);
    n->children = {std::move(body)};
    return Assertion(std::move(n));
}

Assertion::Kind Assertion::kind() const { return node_->kind; }

bool Assertion::is_literal() const {
    auto k = kind();
    return k == Kind::Pos || k == Kind::Neg || k == Kind::Cons || k == Kind::Icons;
}

bool Assertion::is_binary() const {
    auto k = kind();
    return k == Kind::And || k == Kind::Or || k == Kind::Implies;
}

bool Assertion::is_quantified() const { return kind() == Kind::ForAll || kind() == Kind::Exists; }

const Constraint& Assertion::constraint() const { return node_->c; }

const Assertion& Assertion::left() const { return node_->children.at(0); }
const Assertion& Assertion::right() const { return node_->children.at(1); }

Symbol Assertion::pred() const { return node_->pred; }
const std::vector<Symbol>& Assertion::formals() const { return node_->formals; }

std::vector<Symbol> Assertion::free_vars() const {
    std::vector<Symbol> out;
    if (is_literal()) return constraint().free_vars();
    auto add = [&](const std::vector<Symbol>& vs) {
        for (Symbol v : vs) {
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    };
    if (is_binary()) {
        add(left().free_vars());
        add(right().free_vars());
        return out;
    }
    for (Symbol v : body().free_vars()) {
        if (std::find(formals().begin(), formals().end(), v) == formals().end()) add({v});
    }
    return out;
}

Assertion Assertion::substitute(const Substitution& s) const {
    if (s.empty()) return *this;
    if (is_literal()) return literal(kind(), constraint().substitute(s));
    if (is_binary()) return binary(kind(), left().substitute(s), right().substitute(s));
    Substitution local = s;
    for (Symbol f : formals()) local.erase(f);
    std::vector<Symbol> range;
    for (Symbol v : body().free_vars()) {
        auto it = local.find(v);
        if (it != local.end()) it->second.collect_vars(range);
    }
    std::vector<Symbol> renamed;
    for (Symbol f : formals()) {
        Symbol r = f;
        while (std::find(range.begin(), range.end(), r) != range.end()) r = Symbol(r.name() + "'");
        if (r != f) local[f] = Term::var(r);
        renamed.push_back(r);
    }
    return quantified(kind(), pred(), std::move(renamed), body().substitute(local));
}

namespace {

int prec(const Assertion& f) {
    switch (f.kind()) {
    case Assertion::Kind::Implies: return 3;
    case Assertion::Kind::Or: return 2;
    case Assertion::Kind::And: return 1;
    case Assertion::Kind::ForAll:
    case Assertion::Kind::Exists: return 4;
    default: return 0;
    }
}

std::string print(const Assertion& f);

std::string operand(const Assertion& f, int max_prec) {
    std::string s = print(f);
    return prec(f) > max_prec ? "(" + s + ")" : s;
}

std::string print(const Assertion& f) {
    switch (f.kind()) {
    case Assertion::Kind::Pos: return "pos(" + f.constraint().to_string() + ")";
    case Assertion::Kind::Neg: return "neg(" + f.constraint().to_string() + ")";
    case Assertion::Kind::Cons: return "cons(" + f.constraint().to_string() + ")";
    case Assertion::Kind::Icons: return "icons(" + f.constraint().to_string() + ")";
    case Assertion::Kind::And: return operand(f.left(), 1) + " /\\ " + operand(f.right(), 0);
    case Assertion::Kind::Or: return operand(f.left(), 2) + " \\/ " + operand(f.right(), 1);
    case Assertion::Kind::Implies: return operand(f.left(), 2) + " -> " + operand(f.right(), 3);
    case Assertion::Kind::ForAll:
    case Assertion::Kind::Exists: {
        std::string s = f.kind() == Assertion::Kind::ForAll ? "forall " : "exists ";
        s += f.pred().name() + "(";
        for (std::size_t i = 0; i < f.formals().size(); ++i) {
            if (i) s += ",";
            s += f.formals()[i].name();
        }
        return s + "): " + print(f.body());
    }
    }
    return "?";
}

}  // namespace

std::string Assertion::to_string() const { return print(*this); }

bool operator==(const Assertion& a, const Assertion& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.is_literal()) return a.constraint() == b.constraint();
    if (a.is_binary()) return a.left() == b.left() && a.right() == b.right();
    return a.pred() == b.pred() && a.formals() == b.formals() && a.body() == b.body();
}

Assertion negate(const Assertion& f) {
    using K = Assertion::Kind;
    switch (f.kind()) {
    case K::Pos: return Assertion::neg(f.constraint());
    case K::Neg: return Assertion::pos(f.constraint());
    case K::Cons: return Assertion::icons(f.constraint());
    case K::Icons: return Assertion::cons(f.constraint());
    case K::And: return Assertion::binary(K::Or, negate(f.left()), negate(f.right()));
    case K::Or: return Assertion::binary(K::And, negate(f.left()), negate(f.right()));
    case K::Implies: return Assertion::binary(K::And, f.left(), negate(f.right()));
    case K::ForAll: return Assertion::quantified(K::Exists, f.pred(), f.formals(), negate(f.body()));
    case K::Exists: return Assertion::quantified(K::ForAll, f.pred(), f.formals(), negate(f.body()));
    }
    return f;
}

std::string ClassifiedAssertion::to_string() const {
    return std::string(kind == Kind::Post ? "post(" : "inv(") + body.to_string() + ")";
}

}  // namespace clpslice
