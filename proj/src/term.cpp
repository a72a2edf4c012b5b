#include "clpslice/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace clpslice {

struct Term::Node {
    Kind kind;
    Symbol sym;
    std::int64_t value = 0;
    std::vector<Term> args;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::vector<Term>& no_args() {
    static const std::vector<Term> empty;
    return empty;
}

}  // namespace

Symbol cons_functor() {
    static const Symbol s(".");
    return s;
}

Symbol nil_functor() {
    static const Symbol s("[]");
    return s;
}

Term::Term() : Term(integer(0)) {}

Term Term::var(Symbol name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->sym = name;
    n->hash = mix(1, name.id());
    return Term(std::move(n));
}

Term Term::integer(std::int64_t value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Int;
    n->value = value;
    n->hash = mix(2, std::hash<std::int64_t>{}(value));
    return Term(std::move(n));
}

Term Term::compound(Symbol functor, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Compound;
    n->sym = functor;
    std::size_t h = mix(3, functor.id());
    for (const auto& a : args) h = mix(h, a.hash());
    n->args = std::move(args);
    n->hash = h;
    return Term(std::move(n));
}

Term Term::nil() {
    static const Term t = compound(nil_functor(), {});
    return t;
}

Term Term::cons(Term head, Term tail) { return compound(cons_functor(), {std::move(head), std::move(tail)}); }

Term Term::list(const std::vector<Term>& items, Term tail) {
    Term out = std::move(tail);
    for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
    return out;
}

Term::Kind Term::kind() const { return node_->kind; }
Symbol Term::name() const { return node_->sym; }
std::int64_t Term::value() const { return node_->value; }
const std::vector<Term>& Term::args() const { return is_compound() ? node_->args : no_args(); }
std::size_t Term::hash() const { return node_->hash; }

bool Term::is_nil() const { return is_compound() && node_->sym == nil_functor() && node_->args.empty(); }
bool Term::is_cons() const { return is_compound() && node_->sym == cons_functor() && node_->args.size() == 2; }

bool Term::is_arith() const {
    if (!is_compound()) return false;
    const auto& f = node_->sym.name();
    if (node_->args.size() == 2) return f == "+" || f == "-" || f == "*";
    if (node_->args.size() == 1) return f == "-";
    return false;
}

bool Term::occurs(Symbol v) const {
    switch (kind()) {
    case Kind::Var: return node_->sym == v;
    case Kind::Int: return false;
    case Kind::Compound:
        return std::any_of(node_->args.begin(), node_->args.end(), [&](const Term& a) { return a.occurs(v); });
    }
    return false;
}

bool Term::ground() const {
    switch (kind()) {
    case Kind::Var: return false;
    case Kind::Int: return true;
    case Kind::Compound:
        return std::all_of(node_->args.begin(), node_->args.end(), [](const Term& a) { return a.ground(); });
    }
    return true;
}

void Term::collect_vars(std::vector<Symbol>& out) const {
    switch (kind()) {
    case Kind::Var:
        if (std::find(out.begin(), out.end(), node_->sym) == out.end()) out.push_back(node_->sym);
        break;
    case Kind::Int: break;
    case Kind::Compound:
        for (const auto& a : node_->args) a.collect_vars(out);
        break;
    }
}

std::vector<Symbol> Term::vars() const {
    std::vector<Symbol> out;
    collect_vars(out);
    return out;
}

Term Term::substitute(const Substitution& s) const {
    if (s.empty()) return *this;
    switch (kind()) {
    case Kind::Var: {
        auto it = s.find(node_->sym);
        return it == s.end() ? *this : it->second;
    }
    case Kind::Int: return *this;
    case Kind::Compound: {
        if (node_->args.empty()) return *this;
        std::vector<Term> args;
        args.reserve(node_->args.size());
        bool changed = false;
        for (const auto& a : node_->args) {
            args.push_back(a.substitute(s));
            changed = changed || args.back().node_ != a.node_;
        }
        return changed ? compound(node_->sym, std::move(args)) : *this;
    }
    }
    return *this;
}

std::size_t Term::depth() const {
    if (!is_compound() || node_->args.empty()) return 0;
    std::size_t d = 0;
    for (const auto& a : node_->args) d = std::max(d, a.depth());
    return d + 1;
}

std::vector<Term> Term::list_items(Term* tail) const {
    std::vector<Term> items;
    Term cur = *this;
    while (cur.is_cons()) {
        items.push_back(cur.args()[0]);
        cur = cur.args()[1];
    }
    if (tail) *tail = cur;
    return items;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
    switch (a.kind()) {
    case Term::Kind::Var: return a.node_->sym == b.node_->sym;
    case Term::Kind::Int: return a.node_->value == b.node_->value;
    case Term::Kind::Compound:
        return a.node_->sym == b.node_->sym && a.node_->args == b.node_->args;
    }
    return false;
}

namespace {

bool plain_atom(const std::string& s) {
    if (s == "[]") return true;
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string atom_text(const std::string& s) {
    if (plain_atom(s)) return s;
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    return out + "'";
}

int precedence(const Term& t) {
    if (t.is_arith()) {
        if (t.arity() == 1) return 200;
        return t.name().name() == "*" ? 400 : 500;
    }
    return 0;
}

void print(const Term& t, std::string& out, int max_prec);

void print_list(const Term& t, std::string& out) {
    Term tail;
    auto items = t.list_items(&tail);
    out += '[';
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        print(items[i], out, 999);
    }
    if (!tail.is_nil()) {
        out += '|';
        print(tail, out, 999);
    }
    out += ']';
}

void print(const Term& t, std::string& out, int max_prec) {
    switch (t.kind()) {
    case Term::Kind::Var: out += t.name().name(); return;
    case Term::Kind::Int:
        if (t.value() < 0 && max_prec < 999) {
            out += '(' + std::to_string(t.value()) + ')';
        } else {
            out += std::to_string(t.value());
        }
        return;
    case Term::Kind::Compound: break;
    }
    if (t.is_cons()) return print_list(t, out);
    if (t.is_arith()) {
        int p = precedence(t);
        bool paren = p > max_prec;
        if (paren) out += '(';
        if (t.arity() == 1) {
            out += '-';
            print(t.args()[0], out, 200);
        } else {
            // yfx: left operand may share the precedence, right may not
            print(t.args()[0], out, p);
            out += t.name().name();
            print(t.args()[1], out, p - 1);
        }
        if (paren) out += ')';
        return;
    }
    out += atom_text(t.name().name());
    if (t.arity() == 0) return;
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        print(t.args()[i], out, 999);
    }
    out += ')';
}

}  // namespace

std::string Term::to_string() const {
    std::string out;
    print(*this, out, 999);
    return out;
}

}  // namespace clpslice
