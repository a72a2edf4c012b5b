#include <catch_amalgamated.hpp>

#include <chrono>
#include <functional>
#include <map>

#include "fixtures.hpp"

using namespace clpslice;
using fixtures::con;
using fixtures::make_store;

TEST_CASE("herbrand unification binds list structure") {
    ConstraintSystem cs;
    Store s = make_store(cs, "[10,20] = [A|L], L = [B|T], T = []");
    REQUIRE(s.consistent());
    CHECK(cs.entails(s, con("A = 10")));
    CHECK(cs.entails(s, con("B = 20")));
    CHECK(cs.resolve(s, Term::var(Symbol("L"))).to_string() == "[20]");
    CHECK_FALSE(cs.entails(s, con("A = 20")));
}

TEST_CASE("clashing functors and the occurs check make the store inconsistent") {
    ConstraintSystem cs;
    CHECK_FALSE(make_store(cs, "f(X) = g(X)").consistent());
    CHECK_FALSE(make_store(cs, "X = f(X)").consistent());
    CHECK_FALSE(make_store(cs, "X = 1, X = 2").consistent());
    ConstraintSystem no_occurs(SolverOptions{false, 1'000'000});
    CHECK(make_store(no_occurs, "X = f(X)").consistent());
}

TEST_CASE("finite domain propagation and entailment") {
    ConstraintSystem cs;
    Store s = make_store(cs, "X in 0..10, X #> 42");
    CHECK_FALSE(s.consistent());

    Store t = make_store(cs, "X #> 42");
    CHECK(cs.entails(t, con("X #> 37")));
    CHECK_FALSE(cs.entails(t, con("X #> 50")));

    Store u = make_store(cs, "X in 1..3, Y in 1..3, X #< Y, Y #< 3");
    CHECK(cs.entails(u, con("X = 1")));
    CHECK(cs.entails(u, con("Y = 2")));
    auto b = cs.bounds(u, Term::var(Symbol("X")));
    REQUIRE(b);
    CHECK(b->first == 1);
    CHECK(b->second == 1);
}

TEST_CASE("all_different needs search to refute pigeonhole stores") {
    ConstraintSystem cs;
    CHECK_FALSE(make_store(cs, "fd_domain([X,Y,Z],1,2), all_different([X,Y,Z])").consistent());
    CHECK(make_store(cs, "fd_domain([X,Y,Z],1,3), all_different([X,Y,Z])").consistent());
}

TEST_CASE("hiding: entails sees through only with entails_raw") {
    ConstraintSystem cs;
    Store s = make_store(cs, "X = Y, Y = 3");
    Store h = cs.hide(s, {Symbol("Y")});
    CHECK(cs.entails(h, con("X = 3")));
    CHECK(cs.entails_raw(h, con("Y = 3")));
    CHECK_FALSE(cs.entails(h, con("Y = 3")));
}

TEST_CASE("tokens encode named facts") {
    ConstraintSystem cs;
    Store s = make_store(cs, "beat", Convention::Ccp);
    REQUIRE(s.atoms().size() == 1);
    CHECK(s.atoms()[0].atom.is_token());
    CHECK(s.atoms()[0].atom.to_string() == "beat");
    CHECK(cs.entails(s, con("beat", Convention::Ccp)));
    CHECK_FALSE(cs.entails(s, con("stop", Convention::Ccp)));
    Store k = make_store(cs, "k = 1", Convention::Ccp);
    CHECK_FALSE(k.atoms()[0].atom.is_token());
}

TEST_CASE("fresh names skip reserved ones and strip suffixes") {
    NameGen g({Symbol("A1"), Symbol("X1")});
    CHECK(g.fresh("A").name() == "A2");
    CHECK(g.fresh("A'").name() == "A3");
    CHECK(g.fresh("X12").name() == "X2");
    CHECK(g.fresh("beat").name() == "Vbeat1");
    NameGen snapshot = g;
    CHECK(g.fresh("A").name() == "A4");
    CHECK(snapshot.fresh("A").name() == "A4");
}

// Brute-force model oracle over variables bounded to 0..3.
namespace {

using Assignment = std::map<Symbol, std::int64_t>;

std::int64_t value_of(const Term& t, const Assignment& a) {
    if (t.is_int()) return t.value();
    if (t.is_var()) return a.at(t.name());
    const auto& f = t.name().name();
    if (t.arity() == 1) return -value_of(t.args()[0], a);
    std::int64_t l = value_of(t.args()[0], a), r = value_of(t.args()[1], a);
    if (f == "+") return l + r;
    if (f == "-") return l - r;
    return l * r;
}

bool holds(const AtomicConstraint& c, const Assignment& a) {
    switch (c.kind()) {
    case AtomicConstraint::Kind::True: return true;
    case AtomicConstraint::Kind::False: return false;
    case AtomicConstraint::Kind::Eq: return value_of(c.lhs(), a) == value_of(c.rhs(), a);
    case AtomicConstraint::Kind::InDomain: {
        auto v = value_of(c.lhs(), a);
        return c.lo() <= v && v <= c.hi();
    }
    case AtomicConstraint::Kind::Lin: {
        auto l = value_of(c.lhs(), a), r = value_of(c.rhs(), a);
        switch (c.op()) {
        case RelOp::Eq: return l == r;
        case RelOp::Ne: return l != r;
        case RelOp::Lt: return l < r;
        case RelOp::Le: return l <= r;
        case RelOp::Gt: return l > r;
        case RelOp::Ge: return l >= r;
        }
    }
    }
    return false;
}

void models(const std::vector<Symbol>& vars, const std::function<void(const Assignment&)>& fn) {
    Assignment a;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == vars.size()) return fn(a);
        for (int v = 0; v <= 3; ++v) {
            a[vars[i]] = v;
            go(i + 1);
        }
    };
    go(0);
}

std::string random_atom(std::mt19937_64& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    static const char* vars[] = {"X", "Y", "Z"};
    std::string x = vars[pick(0, 2)], y = vars[pick(0, 2)];
    static const char* ops[] = {"#=", "#\\=", "#<", "#=<", "#>", "#>="};
    std::string k = std::to_string(pick(0, 4));
    switch (pick(0, 5)) {
    case 0: return x + " " + ops[pick(0, 5)] + " " + k;
    case 1: return x + " " + ops[pick(0, 5)] + " " + y + " + " + std::to_string(pick(-1, 2));
    case 2: return x + " + " + y + " " + ops[pick(0, 5)] + " " + k;
    case 3: return "2*" + x + " " + ops[pick(0, 5)] + " " + y;
    case 4: return x + " = " + y;
    default: return x + " in " + std::to_string(pick(0, 2)) + ".." + std::to_string(pick(1, 3));
    }
}

}  // namespace

TEST_CASE("satisfiability and entailment agree with brute-force enumeration") {
    ConstraintSystem cs;
    std::mt19937_64 rng(20261016);
    const std::vector<Symbol> vars{Symbol("X"), Symbol("Y"), Symbol("Z")};
    int sat = 0, unsat = 0, entailed = 0;
    for (int iter = 0; iter < 400; ++iter) {
        std::string text = "X in 0..3, Y in 0..3, Z in 0..3";
        int n = std::uniform_int_distribution<int>(1, 5)(rng);
        for (int i = 0; i < n; ++i) text += ", " + random_atom(rng);
        Store s = make_store(cs, text);
        std::vector<AtomicConstraint> atoms = s.atom_values();
        std::string goal_text = random_atom(rng);
        Constraint goal = con(goal_text);
        NameGen names;
        AtomicConstraint g = cs.atomize(goal, names).atoms.at(0);

        bool any = false, all = true;
        models(vars, [&](const Assignment& a) {
            bool ok = std::all_of(atoms.begin(), atoms.end(), [&](const AtomicConstraint& c) { return holds(c, a); });
            if (!ok) return;
            any = true;
            all = all && holds(g, a);
        });
        INFO(text << " |= " << goal_text);
        CHECK(s.consistent() == any);
        CHECK(cs.satisfiable(atoms) == (any ? Satisfiability::Sat : Satisfiability::Unsat));
        CHECK(cs.entails(s, goal) == all);
        CHECK(cs.consistent(s, goal) == [&] {
            bool found = false;
            models(vars, [&](const Assignment& a) {
                found = found || (std::all_of(atoms.begin(), atoms.end(),
                                              [&](const AtomicConstraint& c) { return holds(c, a); }) &&
                                  holds(g, a));
            });
            return found;
        }());
        (any ? sat : unsat)++;
        entailed += all && any;
    }
    // The generator must exercise every outcome.
    CHECK(sat > 50);
    CHECK(unsat > 20);
    CHECK(entailed > 20);
}

TEST_CASE("node budget exhaustion is reported as an exception") {
    ConstraintSystem cs(SolverOptions{true, 50});
    std::string text = "fd_domain([A,B,C,D,E,F,G,H],1,7), all_different([A,B,C,D,E,F,G,H])";
    CHECK_THROWS_AS(make_store(cs, text), BudgetExceeded);
}

TEST_CASE("atomize expands global constraints against a context store") {
    ConstraintSystem cs;
    NameGen names;
    Store ctx = make_store(cs, "Q = [A,B]");
    Atomized a = cs.atomize(con("fd_domain(Q,1,3)"), names, &ctx);
    REQUIRE(a.atoms.size() == 2);
    CHECK(a.atoms[0].to_string() == "A in 1..3");
    CHECK_THROWS_AS(cs.atomize(con("all_different(R)"), names, &ctx), InstantiationError);
}

TEST_CASE("cyclic linear constraints over wide domains are refuted quickly") {
    ConstraintSystem cs;
    auto t0 = std::chrono::steady_clock::now();
    CHECK_FALSE(make_store(cs, "W #= Y+1, Y #= W+1, Z #< W, V in 0..4, W #< V").consistent());
    CHECK_FALSE(make_store(cs, "X in 0..1000000, Y in 0..1000000, X #< Y, Y #< X").consistent());
    CHECK(make_store(cs, "X in 0..1000000, Y in 0..1000000, X #< Y, Y #< X + 2").consistent());
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));
}
