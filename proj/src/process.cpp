#include "clpslice/process.hpp"

#include <algorithm>

namespace clpslice {

struct Process::Node {
    Kind kind = Kind::Skip;
    Constraint c;
    std::vector<Branch> branches;
    std::vector<Process> parts;  // Par parts, or the Local body as parts[0]
    Symbol sym;
    std::vector<Term> args;
    ClassifiedAssertion assertion;
};

bool operator==(const Process::Branch& a, const Process::Branch& b) {
    if (a.hole != b.hole) return false;
    if (a.hole) return true;
    return a.guard == b.guard && *a.body == *b.body;
}

Process::Process() : node_(std::make_shared<const Node>()) {}

Process Process::tell(Constraint c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Tell;
    n->c = std::move(c);
    return Process(std::move(n));
}

Process::Branch Process::branch(Constraint guard, Process body) {
    Branch b;
    b.guard = std::move(guard);
    b.body = std::make_shared<const Process>(std::move(body));
    return b;
}

Process::Branch Process::hole_branch() {
    Branch b;
    b.hole = true;
    b.body = std::make_shared<const Process>(hole());
    return b;
}

Process Process::ask(Constraint guard, Process body) { return sum({branch(std::move(guard), std::move(body))}); }

Process Process::sum(std::vector<Branch> branches) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->branches = std::move(branches);
    return Process(std::move(n));
}

Process Process::par(std::vector<Process> parts) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Par;
    n->parts = std::move(parts);
    return Process(std::move(n));
}

Process Process::local(Symbol var, Process body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Local;
    n->sym = var;
    n->parts = {std::move(body)};
    return Process(std::move(n));
}

Process Process::call(Symbol name, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->sym = name;
    n->args = std::move(args);
    return Process(std::move(n));
}

Process Process::check(ClassifiedAssertion a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Check;
    n->assertion = std::move(a);
    return Process(std::move(n));
}

Process Process::hole() {
    static const Process h = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Hole;
        return Process(std::move(n));
    }();
    return h;
}

Process::Kind Process::kind() const { return node_->kind; }
const Constraint& Process::constraint() const { return node_->c; }
const std::vector<Process::Branch>& Process::branches() const { return node_->branches; }
const std::vector<Process>& Process::parts() const { return node_->parts; }
Symbol Process::var() const { return node_->sym; }
const Process& Process::body() const { return node_->parts.at(0); }
Symbol Process::name() const { return node_->sym; }
const std::vector<Term>& Process::args() const { return node_->args; }
const ClassifiedAssertion& Process::assertion() const { return node_->assertion; }

namespace {

void add_unique(std::vector<Symbol>& out, Symbol v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

void Process::collect_free_vars(std::vector<Symbol>& out) const {
    switch (kind()) {
    case Kind::Skip:
    case Kind::Hole: break;
    case Kind::Tell: constraint().collect_free_vars(out); break;
    case Kind::Sum:
        for (const auto& b : branches()) {
            if (b.hole) continue;
            b.guard.collect_free_vars(out);
            b.body->collect_free_vars(out);
        }
        break;
    case Kind::Par:
        for (const auto& p : parts()) p.collect_free_vars(out);
        break;
    case Kind::Local: {
        std::vector<Symbol> inner;
        body().collect_free_vars(inner);
        for (Symbol v : inner) {
            if (v != var()) add_unique(out, v);
        }
        break;
    }
    case Kind::Call:
        for (const auto& t : args()) t.collect_vars(out);
        break;
    case Kind::Check:
        for (Symbol v : assertion().body.free_vars()) add_unique(out, v);
        break;
    }
}

std::vector<Symbol> Process::free_vars() const {
    std::vector<Symbol> out;
    collect_free_vars(out);
    return out;
}

Process Process::substitute(const Substitution& s) const {
    if (s.empty()) return *this;
    switch (kind()) {
    case Kind::Skip:
    case Kind::Hole: return *this;
    case Kind::Tell: return tell(constraint().substitute(s));
    case Kind::Sum: {
        std::vector<Branch> bs;
        for (const auto& b : branches()) {
            if (b.hole) {
                bs.push_back(b);
            } else {
                bs.push_back(branch(b.guard.substitute(s), b.body->substitute(s)));
            }
        }
        return sum(std::move(bs));
    }
    case Kind::Par: {
        std::vector<Process> ps;
        for (const auto& p : parts()) ps.push_back(p.substitute(s));
        return par(std::move(ps));
    }
    case Kind::Local: {
        Substitution local = s;
        local.erase(var());
        std::vector<Symbol> range;
        std::vector<Symbol> fv = body().free_vars();
        for (Symbol v : fv) {
            auto it = local.find(v);
            if (it != local.end()) it->second.collect_vars(range);
        }
        Symbol x = var();
        if (std::find(range.begin(), range.end(), x) != range.end()) {
            Symbol r = x;
            do {
                r = Symbol(r.name() + "'");
            } while (std::find(range.begin(), range.end(), r) != range.end() ||
                     std::find(fv.begin(), fv.end(), r) != fv.end());
            local[x] = Term::var(r);
            x = r;
        }
        if (local.empty()) return *this;
        return Process::local(x, body().substitute(local));
    }
    case Kind::Call: {
        std::vector<Term> as;
        for (const auto& t : args()) as.push_back(t.substitute(s));
        return call(name(), std::move(as));
    }
    case Kind::Check: {
        ClassifiedAssertion a = assertion();
        a.body = a.body.substitute(s);
        return check(std::move(a));
    }
    }
    return *this;
}

namespace {

std::string print(const Process& p);

// Operand of `then` / `in`: sums with several branches and parallel
// compositions need parentheses.
std::string prefix_operand(const Process& p) {
    std::string s = print(p);
    if (p.kind() == Process::Kind::Par || (p.kind() == Process::Kind::Sum && p.branches().size() > 1)) {
        return "(" + s + ")";
    }
    return s;
}

std::string print(const Process& p) {
    switch (p.kind()) {
    case Process::Kind::Skip: return "skip";
    case Process::Kind::Hole: return "*";
    case Process::Kind::Tell: return "tell(" + p.constraint().to_string() + ")";
    case Process::Kind::Sum: {
        std::string s;
        for (std::size_t i = 0; i < p.branches().size(); ++i) {
            if (i) s += " + ";
            const auto& b = p.branches()[i];
            if (b.hole) {
                s += "*";
            } else {
                s += "ask(" + b.guard.to_string() + ") then " + prefix_operand(*b.body);
            }
        }
        return s;
    }
    case Process::Kind::Par: {
        std::string s;
        for (std::size_t i = 0; i < p.parts().size(); ++i) {
            if (i) s += " || ";
            const auto& q = p.parts()[i];
            s += q.kind() == Process::Kind::Par ? "(" + print(q) + ")" : print(q);
        }
        return s;
    }
    case Process::Kind::Local: return "local " + p.var().name() + " in " + prefix_operand(p.body());
    case Process::Kind::Call: {
        std::string s = Term::compound(p.name(), p.args()).to_string();
        return s;
    }
    case Process::Kind::Check: return p.assertion().to_string();
    }
    return "?";
}

}  // namespace

std::string Process::to_string() const { return print(*this); }

bool operator==(const Process& a, const Process& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Process::Kind::Skip:
    case Process::Kind::Hole: return true;
    case Process::Kind::Tell: return a.constraint() == b.constraint();
    case Process::Kind::Sum: return a.branches() == b.branches();
    case Process::Kind::Par: return a.parts() == b.parts();
    case Process::Kind::Local: return a.var() == b.var() && a.body() == b.body();
    case Process::Kind::Call: return a.name() == b.name() && a.args() == b.args();
    case Process::Kind::Check: return a.assertion() == b.assertion();
    }
    return false;
}

std::string ProcDef::to_string() const {
    std::vector<Term> ps;
    for (Symbol v : params) ps.push_back(Term::var(v));
    return "def " + Term::compound(name, ps).to_string() + " = " + body.to_string() + ".";
}

}  // namespace clpslice
