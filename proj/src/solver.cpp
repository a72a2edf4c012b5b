#include "solver.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace clpslice::detail {

namespace {

using i128 = __int128;
constexpr std::int64_t kInf = std::int64_t{1} << 60;

bool is_inf(std::int64_t v) { return v <= -kInf || v >= kInf; }

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

bool occurs_in(const Substitution& b, Symbol v, const Term& t0) {
    Term t = walk(b, t0);
    if (t.is_var()) return t.name() == v;
    if (!t.is_compound()) return false;
    for (const auto& a : t.args()) {
        if (occurs_in(b, v, a)) return true;
    }
    return false;
}

bool contains(const std::vector<Symbol>* set, Symbol v) {
    return set && std::find(set->begin(), set->end(), v) != set->end();
}

// ---------------------------------------------------------------------------
// Linear expressions

struct LinExpr {
    std::vector<std::pair<Symbol, std::int64_t>> coef;
    std::int64_t k = 0;

    void add(Symbol v, std::int64_t c) {
        for (auto& [s, x] : coef) {
            if (s == v) {
                x += c;
                return;
            }
        }
        coef.emplace_back(v, c);
    }
    void scale(std::int64_t c) {
        for (auto& e : coef) e.second *= c;
        k *= c;
    }
    void absorb(const LinExpr& o) {
        for (const auto& [v, c] : o.coef) add(v, c);
        k += o.k;
    }
    void prune() {
        coef.erase(std::remove_if(coef.begin(), coef.end(), [](const auto& e) { return e.second == 0; }), coef.end());
    }
};

enum class LinStatus { Ok, Clash, Nonlinear };

LinStatus linearize(const Term& t, LinExpr& out) {
    switch (t.kind()) {
    case Term::Kind::Var: out.add(t.name(), 1); return LinStatus::Ok;
    case Term::Kind::Int: out.k += t.value(); return LinStatus::Ok;
    case Term::Kind::Compound: break;
    }
    if (!t.is_arith()) return LinStatus::Clash;
    const std::string& f = t.name().name();
    if (t.arity() == 1) {
        LinExpr e;
        auto st = linearize(t.args()[0], e);
        if (st != LinStatus::Ok) return st;
        e.scale(-1);
        out.absorb(e);
        return LinStatus::Ok;
    }
    LinExpr a, b;
    auto sa = linearize(t.args()[0], a);
    if (sa == LinStatus::Clash) return sa;
    auto sb = linearize(t.args()[1], b);
    if (sb == LinStatus::Clash) return sb;
    if (sa != LinStatus::Ok || sb != LinStatus::Ok) return LinStatus::Nonlinear;
    if (f == "+") {
        out.absorb(a);
        out.absorb(b);
        return LinStatus::Ok;
    }
    if (f == "-") {
        b.scale(-1);
        out.absorb(a);
        out.absorb(b);
        return LinStatus::Ok;
    }
    a.prune();
    b.prune();
    if (a.coef.empty()) {
        b.scale(a.k);
        out.absorb(b);
        return LinStatus::Ok;
    }
    if (b.coef.empty()) {
        a.scale(b.k);
        out.absorb(a);
        return LinStatus::Ok;
    }
    return LinStatus::Nonlinear;
}

// Integer value of an arithmetic term under an assignment.
bool eval_int(const Term& t, const Witness& values, std::int64_t& out) {
    switch (t.kind()) {
    case Term::Kind::Var: {
        auto it = values.find(t.name());
        if (it == values.end()) return false;
        out = it->second;
        return true;
    }
    case Term::Kind::Int: out = t.value(); return true;
    case Term::Kind::Compound: break;
    }
    if (!t.is_arith()) return false;
    std::int64_t a = 0, b = 0;
    if (!eval_int(t.args()[0], values, a)) return false;
    if (t.arity() == 1) {
        out = -a;
        return true;
    }
    if (!eval_int(t.args()[1], values, b)) return false;
    const std::string& f = t.name().name();
    out = f == "+" ? a + b : f == "-" ? a - b : a * b;
    return true;
}

bool compare(RelOp op, std::int64_t a, std::int64_t b) {
    switch (op) {
    case RelOp::Eq: return a == b;
    case RelOp::Ne: return a != b;
    case RelOp::Lt: return a < b;
    case RelOp::Le: return a <= b;
    case RelOp::Gt: return a > b;
    case RelOp::Ge: return a >= b;
    }
    return false;
}

// Truth of a resolved FD atom under an assignment; false if some value is missing.
bool holds(const AtomicConstraint& a, const Witness& values) {
    std::int64_t x = 0, y = 0;
    switch (a.kind()) {
    case AtomicConstraint::Kind::True: return true;
    case AtomicConstraint::Kind::False: return false;
    case AtomicConstraint::Kind::InDomain:
        return eval_int(a.lhs(), values, x) && x >= a.lo() && x <= a.hi();
    case AtomicConstraint::Kind::Lin:
        return eval_int(a.lhs(), values, x) && eval_int(a.rhs(), values, y) && compare(a.op(), x, y);
    case AtomicConstraint::Kind::Eq: return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Finite-domain problem

struct Problem {
    enum class Op { Le, Eq, Ne };
    struct Lin {
        std::vector<std::pair<int, std::int64_t>> terms;
        std::int64_t k = 0;
        Op op = Op::Le;
    };
    struct Raw {
        AtomicConstraint atom;
    };

    std::vector<Symbol> vars;
    std::unordered_map<Symbol, int> index;
    std::vector<std::int64_t> lo, hi;
    std::vector<Lin> cons;
    std::vector<Raw> raw;
    bool failed = false;

    int var(Symbol v) {
        auto [it, inserted] = index.try_emplace(v, static_cast<int>(vars.size()));
        if (inserted) {
            vars.push_back(v);
            lo.push_back(-kInf);
            hi.push_back(kInf);
        }
        return it->second;
    }

    void add_lin(LinExpr e, Op op) {
        e.prune();
        if (e.coef.empty()) {
            bool ok = op == Op::Le ? e.k <= 0 : op == Op::Eq ? e.k == 0 : e.k != 0;
            if (!ok) failed = true;
            return;
        }
        Lin l;
        l.k = e.k;
        l.op = op;
        for (const auto& [v, c] : e.coef) l.terms.emplace_back(var(v), c);
        cons.push_back(std::move(l));
    }

    void add_raw(const AtomicConstraint& a) {
        for (Symbol v : a.vars()) var(v);
        raw.push_back({a});
    }

    // `a` must already be resolved.
    void add_atom(const AtomicConstraint& a) {
        switch (a.kind()) {
        case AtomicConstraint::Kind::True: return;
        case AtomicConstraint::Kind::False: failed = true; return;
        case AtomicConstraint::Kind::Eq: return;
        case AtomicConstraint::Kind::InDomain: {
            LinExpr e;
            auto st = linearize(a.lhs(), e);
            if (st == LinStatus::Clash) {
                failed = true;
                return;
            }
            if (st == LinStatus::Nonlinear) return add_raw(a);
            e.prune();
            if (e.coef.size() == 1 && e.coef[0].second == 1 && e.k == 0) {
                int i = var(e.coef[0].first);
                lo[i] = std::max(lo[i], a.lo());
                hi[i] = std::min(hi[i], a.hi());
                return;
            }
            LinExpr upper = e;
            upper.k -= a.hi();
            add_lin(upper, Op::Le);
            LinExpr lower = e;
            lower.scale(-1);
            lower.k += a.lo();
            add_lin(lower, Op::Le);
            return;
        }
        case AtomicConstraint::Kind::Lin: {
            LinExpr l, r;
            auto sl = linearize(a.lhs(), l);
            auto sr = sl == LinStatus::Clash ? sl : linearize(a.rhs(), r);
            if (sl == LinStatus::Clash || sr == LinStatus::Clash) {
                failed = true;
                return;
            }
            if (sl == LinStatus::Nonlinear || sr == LinStatus::Nonlinear) return add_raw(a);
            r.scale(-1);
            l.absorb(r);
            switch (a.op()) {
            case RelOp::Eq: return add_lin(l, Op::Eq);
            case RelOp::Ne: return add_lin(l, Op::Ne);
            case RelOp::Le: return add_lin(l, Op::Le);
            case RelOp::Lt: l.k += 1; return add_lin(l, Op::Le);
            case RelOp::Ge: l.scale(-1); return add_lin(l, Op::Le);
            case RelOp::Gt: l.scale(-1); l.k += 1; return add_lin(l, Op::Le);
            }
        }
        }
    }
};

using Domains = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;

enum class Prop { Ok, Fail };

// sign * (Σ a x + k) <= 0
Prop prop_le(const Problem::Lin& c, int sign, Domains& d, bool& changed) {
    auto& lo = d.first;
    auto& hi = d.second;
    i128 finite = 0;
    int ninf = 0;
    std::size_t inf_at = 0;
    std::vector<i128> mins(c.terms.size());
    for (std::size_t j = 0; j < c.terms.size(); ++j) {
        auto [v, a0] = c.terms[j];
        i128 a = static_cast<i128>(a0) * sign;
        std::int64_t bound = a > 0 ? lo[v] : hi[v];
        if (is_inf(bound)) {
            ++ninf;
            inf_at = j;
            continue;
        }
        mins[j] = a * bound;
        finite += mins[j];
    }
    i128 rhs = -static_cast<i128>(c.k) * sign;
    if (ninf == 0 && finite > rhs) return Prop::Fail;
    if (ninf > 1) return Prop::Ok;
    for (std::size_t j = 0; j < c.terms.size(); ++j) {
        if (ninf == 1 && j != inf_at) continue;
        auto [v, a0] = c.terms[j];
        i128 a = static_cast<i128>(a0) * sign;
        i128 rest = ninf == 0 ? finite - mins[j] : finite;
        i128 r = rhs - rest;
        if (a > 0) {
            i128 nb = floor_div(r, a);
            if (nb < hi[v] && nb > -kInf) {
                hi[v] = static_cast<std::int64_t>(nb);
                changed = true;
            } else if (nb <= -kInf) {
                return Prop::Fail;
            }
        } else {
            i128 nb = ceil_div(r, a);
            if (nb > lo[v] && nb < kInf) {
                lo[v] = static_cast<std::int64_t>(nb);
                changed = true;
            } else if (nb >= kInf) {
                return Prop::Fail;
            }
        }
        if (lo[v] > hi[v]) return Prop::Fail;
    }
    return Prop::Ok;
}

Prop prop_ne(const Problem::Lin& c, Domains& d, bool& changed) {
    auto& lo = d.first;
    auto& hi = d.second;
    i128 fixed_sum = c.k;
    int open = -1;
    for (std::size_t j = 0; j < c.terms.size(); ++j) {
        auto [v, a] = c.terms[j];
        if (lo[v] == hi[v]) {
            fixed_sum += static_cast<i128>(a) * lo[v];
        } else if (open == -1) {
            open = static_cast<int>(j);
        } else {
            return Prop::Ok;
        }
    }
    if (open == -1) return fixed_sum == 0 ? Prop::Fail : Prop::Ok;
    auto [v, a] = c.terms[open];
    i128 target = -fixed_sum;
    if (target % a != 0) return Prop::Ok;
    i128 val = target / a;
    if (val == lo[v]) {
        ++lo[v];
        changed = true;
    }
    if (val == hi[v]) {
        --hi[v];
        changed = true;
    }
    return lo[v] > hi[v] ? Prop::Fail : Prop::Ok;
}

// Fourier-Motzkin over the rationals on the linear rows plus current bounds.
// Used when propagation stalls on cyclic constraints it cannot close.
bool rational_infeasible(const Problem& p, const Domains& d) {
    struct Row {
        std::vector<i128> a;
        i128 k = 0;  // a.x + k <= 0
    };
    constexpr std::size_t kMaxRows = 4000;
    constexpr i128 kLimit = i128{1} << 100;
    const std::size_t n = p.vars.size();
    std::vector<Row> rows;
    auto push = [&](Row r, int sign) {
        for (auto& x : r.a) x *= sign;
        r.k *= sign;
        rows.push_back(std::move(r));
    };
    for (const auto& c : p.cons) {
        if (c.op == Problem::Op::Ne) continue;
        Row r;
        r.a.assign(n, 0);
        r.k = c.k;
        for (auto [v, a] : c.terms) r.a[v] += a;
        if (c.op == Problem::Op::Eq) push(r, -1);
        push(std::move(r), 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
        Row r;
        r.a.assign(n, 0);
        if (!is_inf(d.first[i])) {
            r.a[i] = -1;
            r.k = d.first[i];
            rows.push_back(r);
        }
        if (!is_inf(d.second[i])) {
            r.a[i] = 1;
            r.k = -d.second[i];
            rows.push_back(r);
        }
    }
    auto abs128 = [](i128 x) { return x < 0 ? -x : x; };
    auto normalize = [&](Row& r) {
        i128 g = 0;
        for (i128 x : r.a) g = std::gcd(g, abs128(x));
        if (g > 1) {
            for (auto& x : r.a) x /= g;
            r.k = ceil_div(r.k, g);
        }
    };
    std::vector<bool> gone(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        for (const auto& r : rows) {
            if (std::all_of(r.a.begin(), r.a.end(), [](i128 x) { return x == 0; }) && r.k > 0) return true;
        }
        std::size_t best = n;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (gone[v]) continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& r : rows) {
                if (r.a[v] > 0) ++pos;
                if (r.a[v] < 0) ++neg;
            }
            std::size_t cost = pos * neg;
            if (best == n || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        if (best == n) break;
        gone[best] = true;
        std::vector<Row> keep, pos, neg;
        for (auto& r : rows) {
            if (r.a[best] > 0) pos.push_back(std::move(r));
            else if (r.a[best] < 0) neg.push_back(std::move(r));
            else keep.push_back(std::move(r));
        }
        for (const auto& rp : pos) {
            for (const auto& rn : neg) {
                if (keep.size() >= kMaxRows) return false;
                i128 mp = -rn.a[best], mn = rp.a[best];
                Row r;
                r.a.resize(n);
                for (std::size_t j = 0; j < n; ++j) {
                    r.a[j] = rp.a[j] * mp + rn.a[j] * mn;
                    if (abs128(r.a[j]) > kLimit) return false;
                }
                r.k = rp.k * mp + rn.k * mn;
                if (abs128(r.k) > kLimit) return false;
                normalize(r);
                keep.push_back(std::move(r));
            }
        }
        rows = std::move(keep);
    }
    return std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.k > 0; });
}

// Every bound that moved belongs to a variable whose opposite bound is
// infinite, so further passes only walk it toward infinity.
bool half_open_creep(const Domains& before, const Domains& after) {
    for (std::size_t i = 0; i < after.first.size(); ++i) {
        bool lo_moved = before.first[i] != after.first[i];
        bool hi_moved = before.second[i] != after.second[i];
        if (lo_moved && !is_inf(after.second[i])) return false;
        if (hi_moved && !is_inf(after.first[i])) return false;
    }
    return true;
}

Prop propagate(const Problem& p, Domains& d, Budget& budget) {
    for (std::size_t i = 0; i < p.vars.size(); ++i) {
        if (d.first[i] > d.second[i]) return Prop::Fail;
    }
    constexpr int kMaxPasses = 1000;
    constexpr int kCreepCheck = 32;
    Domains before;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        bool changed = false;
        if (pass >= kCreepCheck) before = d;
        for (const auto& c : p.cons) {
            Prop r = Prop::Ok;
            switch (c.op) {
            case Problem::Op::Le: r = prop_le(c, 1, d, changed); break;
            case Problem::Op::Eq:
                r = prop_le(c, 1, d, changed);
                if (r == Prop::Ok) r = prop_le(c, -1, d, changed);
                break;
            case Problem::Op::Ne: r = prop_ne(c, d, changed); break;
            }
            if (r == Prop::Fail) return Prop::Fail;
        }
        if (!changed) return Prop::Ok;
        if (pass == kCreepCheck && rational_infeasible(p, d)) return Prop::Fail;
        if (pass >= kCreepCheck && half_open_creep(before, d)) return Prop::Ok;
        if (pass % 16 == 15) budget.tick();
    }
    return Prop::Ok;
}

bool leaf_ok(const Problem& p, const Domains& d, Witness* out) {
    Witness values;
    for (std::size_t i = 0; i < p.vars.size(); ++i) values[p.vars[i]] = d.first[i];
    for (const auto& r : p.raw) {
        if (!holds(r.atom, values)) return false;
    }
    if (out) *out = std::move(values);
    return true;
}

Satisfiability search(const Problem& p, Domains d, Budget& budget, Witness* out) {
    budget.tick();
    if (propagate(p, d, budget) == Prop::Fail) return Satisfiability::Unsat;
    int best = -1;
    i128 best_size = 0;
    int unbounded = -1;
    for (std::size_t i = 0; i < p.vars.size(); ++i) {
        std::int64_t l = d.first[i], h = d.second[i];
        if (l == h) continue;
        if (is_inf(l) || is_inf(h)) {
            if (unbounded == -1) unbounded = static_cast<int>(i);
            continue;
        }
        i128 size = static_cast<i128>(h) - l + 1;
        if (best == -1 || size < best_size) {
            best = static_cast<int>(i);
            best_size = size;
        }
    }
    if (best == -1 && unbounded == -1) {
        return leaf_ok(p, d, out) ? Satisfiability::Sat : Satisfiability::Unsat;
    }
    bool unknown = false;
    auto try_value = [&](int v, std::int64_t lo, std::int64_t hi) {
        Domains next = d;
        next.first[v] = lo;
        next.second[v] = hi;
        auto r = search(p, std::move(next), budget, out);
        if (r == Satisfiability::Unknown) unknown = true;
        return r == Satisfiability::Sat;
    };
    if (best != -1) {
        std::int64_t l = d.first[best], h = d.second[best];
        if (best_size > 16) {
            std::int64_t mid = l + (h - l) / 2;
            if (try_value(best, l, mid) || try_value(best, mid + 1, h)) return Satisfiability::Sat;
        } else {
            for (std::int64_t x = l; x <= h; ++x) {
                if (try_value(best, x, x)) return Satisfiability::Sat;
            }
        }
        return unknown ? Satisfiability::Unknown : Satisfiability::Unsat;
    }
    // Unbounded variable: try a few witnesses; failure proves nothing.
    std::int64_t l = d.first[unbounded], h = d.second[unbounded];
    std::vector<std::int64_t> candidates;
    if (!is_inf(l)) candidates.push_back(l);
    if (!is_inf(h)) candidates.push_back(h);
    for (std::int64_t c : {0, 1, -1, 2, -2, 7, -7, 1000, -1000, 1000003, -1000003}) candidates.push_back(c);
    std::vector<std::int64_t> tried;
    for (std::int64_t c : candidates) {
        if (c < l || c > h) continue;
        if (std::find(tried.begin(), tried.end(), c) != tried.end()) continue;
        tried.push_back(c);
        if (try_value(unbounded, c, c)) return Satisfiability::Sat;
    }
    return Satisfiability::Unknown;
}

Problem build(const SolvedForm& form, const std::vector<AtomicConstraint>& extra) {
    Problem p;
    for (const auto* list : {&form.fd, &extra}) {
        for (const auto& a : *list) {
            AtomicConstraint r = a;
            if (a.kind() == AtomicConstraint::Kind::InDomain) {
                r = AtomicConstraint::in_domain(resolve(form.bindings, a.lhs()), a.lo(), a.hi());
            } else if (a.kind() == AtomicConstraint::Kind::Lin) {
                r = AtomicConstraint::linear(a.op(), resolve(form.bindings, a.lhs()), resolve(form.bindings, a.rhs()));
            }
            p.add_atom(r);
            if (p.failed) return p;
        }
    }
    return p;
}

bool witness_satisfies(const SolvedForm& form, const Witness& w) {
    if (w.empty() && !form.fd.empty()) return false;
    for (const auto& a : form.fd) {
        AtomicConstraint r = a;
        if (a.kind() == AtomicConstraint::Kind::InDomain) {
            r = AtomicConstraint::in_domain(resolve(form.bindings, a.lhs()), a.lo(), a.hi());
        } else if (a.kind() == AtomicConstraint::Kind::Lin) {
            r = AtomicConstraint::linear(a.op(), resolve(form.bindings, a.lhs()), resolve(form.bindings, a.rhs()));
        }
        if (!holds(r, w)) return false;
    }
    return true;
}

}  // namespace

void Budget::tick() {
    if (++used_ > limit_) {
        throw BudgetExceeded("solver node budget exceeded (" + std::to_string(limit_) + " nodes)");
    }
}

Term walk(const Substitution& b, Term t) {
    while (t.is_var()) {
        auto it = b.find(t.name());
        if (it == b.end()) break;
        t = it->second;
    }
    return t;
}

Term resolve(const Substitution& b, const Term& t0) {
    if (b.empty()) return t0;
    Term t = walk(b, t0);
    if (!t.is_compound() || t.arity() == 0) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(resolve(b, a));
        changed = changed || !(args.back() == a);
    }
    return changed ? Term::compound(t.name(), std::move(args)) : t;
}

bool unify(Substitution& b, const Term& x, const Term& y, bool occurs_check, const std::vector<Symbol>* bindable,
           std::vector<Symbol>* bound) {
    std::vector<std::pair<Term, Term>> stack{{x, y}};
    while (!stack.empty()) {
        auto [p, q] = stack.back();
        stack.pop_back();
        p = walk(b, p);
        q = walk(b, q);
        if (p == q) continue;
        if (p.is_var() || q.is_var()) {
            Term v = p, t = q;
            if (!p.is_var() || (q.is_var() && contains(bindable, q.name()) && !contains(bindable, p.name()))) {
                v = q;
                t = p;
            }
            if (occurs_check && !t.is_var() && occurs_in(b, v.name(), t)) return false;
            b[v.name()] = t;
            if (bound) bound->push_back(v.name());
            continue;
        }
        if (p.is_int() || q.is_int()) return false;
        if (p.name() != q.name() || p.arity() != q.arity()) return false;
        for (std::size_t i = 0; i < p.arity(); ++i) stack.emplace_back(p.args()[i], q.args()[i]);
    }
    return true;
}

SolvedForm extend(const SolvedForm& base, const std::vector<AtomicConstraint>& atoms, const SolverOptions& opts,
                  Budget& budget) {
    SolvedForm f = base;
    bool touched = false;
    for (const auto& a : atoms) {
        switch (a.kind()) {
        case AtomicConstraint::Kind::True: break;
        case AtomicConstraint::Kind::False: f.has_false = true; break;
        case AtomicConstraint::Kind::Eq:
            if (f.herbrand_ok && !unify(f.bindings, a.lhs(), a.rhs(), opts.occurs_check)) f.herbrand_ok = false;
            touched = true;
            break;
        case AtomicConstraint::Kind::InDomain:
        case AtomicConstraint::Kind::Lin:
            f.fd.push_back(a);
            touched = true;
            break;
        }
    }
    if (base.status == Satisfiability::Unsat || f.has_false || !f.herbrand_ok) {
        f.status = Satisfiability::Unsat;
        f.witness.clear();
        return f;
    }
    if (f.fd.empty()) {
        f.status = Satisfiability::Sat;
        return f;
    }
    if (!touched) return f;
    if (base.status == Satisfiability::Sat && witness_satisfies(f, base.witness)) {
        f.status = Satisfiability::Sat;
        return f;
    }
    f.witness.clear();
    f.status = fd_check(f, {}, budget, &f.witness);
    return f;
}

Satisfiability fd_check(const SolvedForm& form, const std::vector<AtomicConstraint>& extra, Budget& budget,
                        Witness* witness_out) {
    if (!form.herbrand_ok || form.has_false) return Satisfiability::Unsat;
    Problem p = build(form, extra);
    if (p.failed) return Satisfiability::Unsat;
    return search(p, Domains{p.lo, p.hi}, budget, witness_out);
}

std::optional<std::pair<std::int64_t, std::int64_t>> fd_bounds(const SolvedForm& form, const Term& t, Budget& budget) {
    Term r = resolve(form.bindings, t);
    if (r.is_int()) return std::make_pair(r.value(), r.value());
    if (!r.is_var()) return std::nullopt;
    Problem p = build(form, {});
    if (p.failed) return std::nullopt;
    auto it = p.index.find(r.name());
    if (it == p.index.end()) return std::nullopt;
    Domains d{p.lo, p.hi};
    if (propagate(p, d, budget) == Prop::Fail) return std::nullopt;
    std::int64_t l = d.first[it->second], h = d.second[it->second];
    if (is_inf(l) || is_inf(h)) return std::nullopt;
    return std::make_pair(l, h);
}

}  // namespace clpslice::detail
