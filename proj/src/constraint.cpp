#include "clpslice/constraint.hpp"

#include <algorithm>
#include <cctype>

namespace clpslice {

const char* relop_text(RelOp op) {
    switch (op) {
    case RelOp::Eq: return "#=";
    case RelOp::Ne: return "#\\=";
    case RelOp::Lt: return "#<";
    case RelOp::Le: return "#=<";
    case RelOp::Gt: return "#>";
    case RelOp::Ge: return "#>=";
    }
    return "?";
}

RelOp negate(RelOp op) {
    switch (op) {
    case RelOp::Eq: return RelOp::Ne;
    case RelOp::Ne: return RelOp::Eq;
    case RelOp::Lt: return RelOp::Ge;
    case RelOp::Le: return RelOp::Gt;
    case RelOp::Gt: return RelOp::Le;
    case RelOp::Ge: return RelOp::Lt;
    }
    return op;
}

AtomicConstraint AtomicConstraint::falsity() {
    AtomicConstraint a;
    a.kind_ = Kind::False;
    return a;
}

AtomicConstraint AtomicConstraint::equal(Term lhs, Term rhs) {
    AtomicConstraint a;
    a.kind_ = Kind::Eq;
    a.lhs_ = std::move(lhs);
    a.rhs_ = std::move(rhs);
    return a;
}

AtomicConstraint AtomicConstraint::in_domain(Term var, std::int64_t lo, std::int64_t hi) {
    AtomicConstraint a;
    a.kind_ = Kind::InDomain;
    a.lhs_ = std::move(var);
    a.lo_ = lo;
    a.hi_ = hi;
    return a;
}

AtomicConstraint AtomicConstraint::linear(RelOp op, Term lhs, Term rhs) {
    AtomicConstraint a;
    a.kind_ = Kind::Lin;
    a.op_ = op;
    a.lhs_ = std::move(lhs);
    a.rhs_ = std::move(rhs);
    return a;
}

Symbol token_value() {
    static const Symbol s("$present");
    return s;
}

AtomicConstraint AtomicConstraint::token(std::string_view name) {
    return equal(Term::var(name), Term::compound(token_value(), {}));
}

bool AtomicConstraint::is_token() const {
    return kind_ == Kind::Eq && lhs_.is_var() && rhs_.is_compound() && rhs_.arity() == 0 &&
           rhs_.name() == token_value();
}

void AtomicConstraint::collect_vars(std::vector<Symbol>& out) const {
    switch (kind_) {
    case Kind::True:
    case Kind::False: break;
    case Kind::InDomain: lhs_.collect_vars(out); break;
    case Kind::Eq:
    case Kind::Lin:
        lhs_.collect_vars(out);
        rhs_.collect_vars(out);
        break;
    }
}

std::vector<Symbol> AtomicConstraint::vars() const {
    std::vector<Symbol> out;
    collect_vars(out);
    return out;
}

AtomicConstraint AtomicConstraint::substitute(const Substitution& s) const {
    AtomicConstraint a = *this;
    if (kind_ == Kind::True || kind_ == Kind::False) return a;
    a.lhs_ = lhs_.substitute(s);
    if (kind_ != Kind::InDomain) a.rhs_ = rhs_.substitute(s);
    return a;
}

std::string AtomicConstraint::to_string() const {
    switch (kind_) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Eq:
        if (is_token()) return lhs_.name().name();
        return lhs_.to_string() + "=" + rhs_.to_string();
    case Kind::InDomain:
        return lhs_.to_string() + " in " + std::to_string(lo_) + ".." + std::to_string(hi_);
    case Kind::Lin: return lhs_.to_string() + " " + relop_text(op_) + " " + rhs_.to_string();
    }
    return "?";
}

bool operator==(const AtomicConstraint& a, const AtomicConstraint& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
    case AtomicConstraint::Kind::True:
    case AtomicConstraint::Kind::False: return true;
    case AtomicConstraint::Kind::Eq: return a.lhs_ == b.lhs_ && a.rhs_ == b.rhs_;
    case AtomicConstraint::Kind::InDomain: return a.lhs_ == b.lhs_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
    case AtomicConstraint::Kind::Lin: return a.op_ == b.op_ && a.lhs_ == b.lhs_ && a.rhs_ == b.rhs_;
    }
    return false;
}

std::string GlobalConstraint::to_string() const {
    switch (kind) {
    case Kind::AllDifferent: return "all_different(" + args.at(0).to_string() + ")";
    case Kind::FdDomain:
        return "fd_domain(" + args.at(0).to_string() + "," + args.at(1).to_string() + "," + args.at(2).to_string() + ")";
    case Kind::In: {
        auto bound = [](const Term& t) {
            std::string s = t.to_string();
            return t.is_var() || t.is_int() ? s : "(" + s + ")";
        };
        return args.at(0).to_string() + " in " + bound(args.at(1)) + ".." + bound(args.at(2));
    }
    }
    return "?";
}

bool operator==(const Constraint::Item& a, const Constraint::Item& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Constraint::Item::Kind::Atom: return a.atom == b.atom;
    case Constraint::Item::Kind::Global: return a.global == b.global;
    case Constraint::Item::Kind::Hole: return true;
    case Constraint::Item::Kind::Nested: return *a.nested == *b.nested;
    }
    return false;
}

Constraint Constraint::of(AtomicConstraint a) {
    Constraint c;
    c.add(std::move(a));
    return c;
}

Constraint Constraint::hole() {
    Constraint c;
    c.add_hole();
    return c;
}

Constraint& Constraint::add(AtomicConstraint a) {
    Item it;
    it.kind = Item::Kind::Atom;
    it.atom = std::move(a);
    items_.push_back(std::move(it));
    return *this;
}

Constraint& Constraint::add(GlobalConstraint g) {
    Item it;
    it.kind = Item::Kind::Global;
    it.global = std::move(g);
    items_.push_back(std::move(it));
    return *this;
}

Constraint& Constraint::add_hole() {
    Item it;
    it.kind = Item::Kind::Hole;
    items_.push_back(std::move(it));
    return *this;
}

Constraint& Constraint::add(Constraint nested) {
    if (nested.exists_.empty()) {
        for (auto& it : nested.items_) items_.push_back(std::move(it));
        return *this;
    }
    Item it;
    it.kind = Item::Kind::Nested;
    it.nested = std::make_shared<const Constraint>(std::move(nested));
    items_.push_back(std::move(it));
    return *this;
}

bool Constraint::is_true() const {
    return std::all_of(items_.begin(), items_.end(), [](const Item& it) {
        return (it.kind == Item::Kind::Atom && it.atom.kind() == AtomicConstraint::Kind::True) ||
               (it.kind == Item::Kind::Nested && it.nested->is_true());
    });
}

bool Constraint::has_hole() const {
    return std::any_of(items_.begin(), items_.end(), [](const Item& it) {
        return it.kind == Item::Kind::Hole || (it.kind == Item::Kind::Nested && it.nested->has_hole());
    });
}

bool Constraint::all_holes() const {
    return std::all_of(items_.begin(), items_.end(), [](const Item& it) {
        return it.kind == Item::Kind::Hole || (it.kind == Item::Kind::Nested && it.nested->all_holes());
    });
}

bool Constraint::is_atomic() const {
    return exists_.empty() && items_.size() == 1 && items_[0].kind == Item::Kind::Atom;
}

void Constraint::collect_free_vars(std::vector<Symbol>& out) const {
    std::vector<Symbol> inner;
    for (const auto& it : items_) {
        switch (it.kind) {
        case Item::Kind::Atom: it.atom.collect_vars(inner); break;
        case Item::Kind::Global:
            for (const auto& t : it.global.args) t.collect_vars(inner);
            break;
        case Item::Kind::Hole: break;
        case Item::Kind::Nested: it.nested->collect_free_vars(inner); break;
        }
    }
    for (Symbol v : inner) {
        if (std::find(exists_.begin(), exists_.end(), v) != exists_.end()) continue;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
}

std::vector<Symbol> Constraint::free_vars() const {
    std::vector<Symbol> out;
    collect_free_vars(out);
    return out;
}

Constraint Constraint::substitute(const Substitution& s) const {
    if (s.empty()) return *this;
    Substitution local = s;
    Constraint out;
    if (!exists_.empty()) {
        for (Symbol v : exists_) local.erase(v);
        std::vector<Symbol> range;
        for (Symbol v : free_vars()) {
            auto it = local.find(v);
            if (it != local.end()) it->second.collect_vars(range);
        }
        std::vector<Symbol> avoid = range;
        for (Symbol v : free_vars()) avoid.push_back(v);
        for (Symbol v : exists_) {
            Symbol renamed = v;
            while (std::find(range.begin(), range.end(), renamed) != range.end() ||
                   (renamed != v && std::find(avoid.begin(), avoid.end(), renamed) != avoid.end())) {
                renamed = Symbol(renamed.name() + "'");
            }
            if (renamed != v) local[v] = Term::var(renamed);
            out.exists_.push_back(renamed);
        }
    }
    for (const auto& it : items_) {
        Item n = it;
        switch (it.kind) {
        case Item::Kind::Atom: n.atom = it.atom.substitute(local); break;
        case Item::Kind::Global:
            for (auto& t : n.global.args) t = t.substitute(local);
            break;
        case Item::Kind::Hole: break;
        case Item::Kind::Nested: n.nested = std::make_shared<const Constraint>(it.nested->substitute(local)); break;
        }
        out.items_.push_back(std::move(n));
    }
    return out;
}

namespace {

std::string item_text(const Constraint::Item& it) {
    switch (it.kind) {
    case Constraint::Item::Kind::Atom: return it.atom.to_string();
    case Constraint::Item::Kind::Global: return it.global.to_string();
    case Constraint::Item::Kind::Hole: return "*";
    case Constraint::Item::Kind::Nested: return it.nested->to_string();
    }
    return "?";
}

}  // namespace

std::string Constraint::to_string() const {
    std::string body;
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) body += ", ";
        body += item_text(items_[i]);
    }
    if (items_.empty()) body = "true";
    if (exists_.empty()) return body;
    std::string out = "exists";
    for (Symbol v : exists_) out += " " + v.name();
    return out + " : (" + body + ")";
}

bool operator==(const Constraint& a, const Constraint& b) {
    return a.exists_ == b.exists_ && a.items_ == b.items_;
}

}  // namespace clpslice
