#include <catch_amalgamated.hpp>

#include "clpslice/monitor.hpp"
#include "fixtures.hpp"

using namespace clpslice;
using fixtures::con;
using fixtures::make_store;

namespace {

const ParseOptions kCcp{Convention::Ccp, false};
const std::vector<Agent> kNoAgents;

Assertion A(const std::string& text) { return parse_assertion(text); }

Obligation obligation(const std::string& text) { return Obligation{parse_classified(text), 0}; }

std::set<Cid> cids(std::initializer_list<Cid> l) { return std::set<Cid>(l); }

}  // namespace

TEST_CASE("four verdicts on a bounded domain store") {
    ConstraintSystem cs;
    Store s = make_store(cs, "x in 0..10", Convention::Ccp);
    EvalContext ctx{cs, s, kNoAgents};
    auto ev = [&](const char* f) { return eval(ctx, parse_assertion(f, kCcp)); };
    CHECK(ev("cons(x = 5)"));
    CHECK_FALSE(ev("icons(x = 5)"));
    CHECK_FALSE(ev("pos(x = 5)"));
    CHECK(ev("neg(x = 5)"));
    CHECK(ev("pos(true)"));
}

TEST_CASE("inconsistent stores entail everything and admit nothing") {
    ConstraintSystem cs;
    Store s = make_store(cs, "X = 1, X = 2");
    EvalContext ctx{cs, s, kNoAgents};
    CHECK_FALSE(eval(ctx, A("cons(Y = 3)")));
    CHECK(eval(ctx, A("icons(Y = 3)")));
    CHECK(eval(ctx, A("pos(Y = 3)")));
}

TEST_CASE("negation is an involution with the expected duals") {
    CHECK(negate(A("pos(X = 1)")) == A("neg(X = 1)"));
    CHECK(negate(A("cons(X = 1)")) == A("icons(X = 1)"));
    CHECK(negate(A("pos(X = 1) /\\ cons(Y = 2)")) == A("neg(X = 1) \\/ icons(Y = 2)"));
    CHECK(negate(A("pos(X = 1) -> neg(Y = 2)")) == A("pos(X = 1) /\\ pos(Y = 2)"));
    CHECK(negate(A("forall p(X): pos(X = 1)")) == A("exists p(X): neg(X = 1)"));
    for (const char* f : {"pos(X = 1) /\\ neg(Y = 2)", "forall p(X,Y): cons(X = Y) \\/ icons(Y = 1)"})
        CHECK(negate(negate(A(f))) == A(f));
    // Implication is not preserved syntactically, only up to equivalence.
    CHECK(negate(negate(A("pos(X = 1) -> neg(Y = 2)"))) == A("neg(X = 1) \\/ neg(Y = 2)"));
}

TEST_CASE("classification and scheduling") {
    CHECK(stop_eligible(A("neg(X = 1) /\\ cons(Y = 2)")));
    CHECK(stop_eligible(A("pos(beat) -> neg(stop)")));
    CHECK_FALSE(stop_eligible(A("pos(X #> 0)")));
    CHECK(persistent(A("pos(X = 1) \\/ icons(Y = 2)")));
    CHECK(has_quantifier(A("neg(X = 1) /\\ forall p(Y): pos(Y = 1)")));

    std::vector<Obligation> obs{obligation("inv(neg(X = 1))"), obligation("inv(pos(X #> 0))"),
                                obligation("post(cons(X = 2))"), obligation("post(forall p(Y): pos(Y = 1))"),
                                obligation("inv(cons(Q #\\= X + 1))")};
    CHECK(schedule(obs, Event::Step) == std::vector<std::size_t>{0, 4});
    CHECK(schedule(obs, Event::Answer) == std::vector<std::size_t>{1, 2});
    CHECK(schedule({}, Event::Step).empty());

    ConstraintSystem cs;
    Store s = make_store(cs, "X = 2");
    EvalContext ctx{cs, s, kNoAgents};
    CHECK_FALSE(check(ctx, obs, Event::Step));
    CHECK_FALSE(check(ctx, obs, Event::Answer));
    Store t = make_store(cs, "X = 1");
    EvalContext ctx1{cs, t, kNoAgents};
    CHECK(check(ctx1, obs, Event::Step) == std::optional<std::size_t>{0});
    CHECK(check(ctx1, obs, Event::Answer) == std::optional<std::size_t>{2});
}

TEST_CASE("quantifiers range over call agents") {
    ConstraintSystem cs;
    Store s = make_store(cs, "X = 3, Z = 4");
    std::vector<Agent> agents{{7, Process::call(Symbol("p"), {Term::var("X")})},
                              {8, Process::call(Symbol("p"), {Term::var("Z")})},
                              {9, Process::call(Symbol("q"), {Term::var("Z")})}};
    EvalContext ctx{cs, s, agents};
    CHECK_FALSE(eval(ctx, A("forall p(V): pos(V = 3)")));
    CHECK(eval(ctx, A("exists p(V): pos(V = 3)")));
    CHECK(eval(ctx, A("forall r(V): pos(V = 0)")));
    CHECK_FALSE(eval(ctx, A("exists r(V): pos(V = 0)")));

    Marking m = symp(ctx, A("forall p(V): pos(V = 3)"));
    CHECK(m.pids == std::set<Pid>{8});
    CHECK(m.cids.empty());
    Marking e = symp(ctx, A("exists p(V): pos(V = 5) /\\ pos(W = 1)"));
    CHECK(e.pids == std::set<Pid>{7, 8});
}

TEST_CASE("symp follows the marking cases") {
    ConstraintSystem cs;
    // cids: 1 X=Y, 2 Y=3, 3 Z=4, 4 W=Z
    Store s = make_store(cs, "X = Y, Y = 3, Z = 4, W = Z");
    EvalContext ctx{cs, s, kNoAgents};
    SympOptions strict;
    strict.var_closure = false;

    CHECK(symp(ctx, A("pos(X = 5)")).cids == cids({1, 2}));
    CHECK(symp(ctx, A("pos(X = 5)"), strict).cids == cids({1}));
    CHECK(symp(ctx, A("icons(Z = 4)"), strict).cids == cids({3, 4}));
    CHECK(symp(ctx, A("neg(X = 3)")).cids == cids({1, 2}));
    CHECK(symp(ctx, A("cons(X = 4)")).cids == cids({1, 2}));
    CHECK(symp(ctx, A("neg(X = 3) /\\ neg(W = 4)")).cids == cids({1, 2, 3, 4}));
    CHECK(symp(ctx, A("neg(Y = 3) \\/ neg(X = 3)")).cids == cids({2}));
    CHECK(symp(ctx, A("neg(Y = 3) \\/ neg(Z = 4)")).empty());
    CHECK(symp(ctx, A("pos(W = 4) -> neg(X = 3)")).cids == cids({1, 2, 3, 4}));

    Store u = make_store(cs, "x = 1, y = 2, z #> 0", Convention::Ccp);
    EvalContext cu{cs, u, kNoAgents};
    CHECK(symp(cu, parse_assertion("neg(x = 1)", kCcp)).cids == cids({1}));
}

TEST_CASE("conditional assertion over tokens marks both facts") {
    ConstraintSystem cs;
    CcpEngine engine(parse_ccp(fixtures::example("rhythm.ccp")), cs);
    LeftmostPolicy leftmost;
    Trace t = engine.run(*engine.program().main, leftmost);
    Assertion f = parse_assertion("pos(beat) -> neg(stop)", kCcp);
    std::size_t first = t.configs.size();
    for (std::size_t i = 0; i < t.configs.size(); ++i) {
        if (!eval(cs, t, i, f)) {
            first = i;
            break;
        }
    }
    REQUIRE(first < t.configs.size());
    CHECK(cs.entails(t.configs[first].store, parse_constraint("beat, stop", kCcp)));
    CHECK(cs.entails(t.configs[first].store, parse_constraint("beat", kCcp)));
    CHECK_FALSE(cs.entails(t.configs[first - 1].store, parse_constraint("stop", kCcp)));

    EvalContext ctx{cs, t.configs[first].store, t.configs[first].agents};
    Marking m = symp(ctx, f);
    std::set<std::string> marked;
    for (Cid c : m.cids) marked.insert(t.configs[first].store.find(c)->atom.to_string());
    CHECK(marked == std::set<std::string>{"beat", "stop"});
    CHECK(m.pids.empty());
}

namespace {

std::string random_constraint_text(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const std::string& x = vars[pick(0, static_cast<int>(vars.size()) - 1)];
    const std::string& y = vars[pick(0, static_cast<int>(vars.size()) - 1)];
    std::string c;
    switch (pick(0, 4)) {
    case 0: c = x + " = " + std::to_string(pick(0, 3)); break;
    case 1: c = x + " #< " + std::to_string(pick(1, 3)); break;
    case 2: c = x + " = " + y; break;
    case 3: c = x + " = a"; break;
    default: c = x + " #>= " + y; break;
    }
    return c;
}

std::string random_literal_text(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::string c = random_constraint_text(rng, vars);
    static const char* ops[] = {"pos", "neg", "cons", "icons"};
    return std::string(ops[pick(0, 3)]) + "(" + c + ")";
}

std::string random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int k = depth > 0 ? pick(0, 6) : 0;
    switch (k) {
    case 1: return "(" + random_formula(rng, vars, depth - 1) + " /\\ " + random_formula(rng, vars, depth - 1) + ")";
    case 2: return "(" + random_formula(rng, vars, depth - 1) + " \\/ " + random_formula(rng, vars, depth - 1) + ")";
    case 3: return "(" + random_formula(rng, vars, depth - 1) + " -> " + random_formula(rng, vars, depth - 1) + ")";
    case 4: {
        std::vector<std::string> inner = vars;
        inner.push_back("Q");
        std::string q = pick(0, 1) ? "forall" : "exists";
        return "(" + q + " p1(Q): " + random_formula(rng, inner, depth - 1) + ")";
    }
    default: return random_literal_text(rng, vars);
    }
}

}  // namespace

TEST_CASE("duality and pos-monotonicity over random traces") {
    fixtures::ProgramGenerator gen(1234);
    ConstraintSystem cs;
    std::mt19937_64 rng(99);
    int pairs = 0, failing = 0;
    while (pairs < 1000) {
        auto rp = gen.next();
        ClpProgram prog = parse_clp(rp.text);
        CcpEngine engine(clp_to_ccp_program(prog), cs);
        RandomPolicy policy(pairs);
        Trace t = engine.run(translate_goal(parse_goal(rp.goal)), policy);
        std::vector<std::string> vars{"A", "B"};
        for (const auto& a : t.last().store.atoms())
            for (Symbol v : a.atom.vars()) vars.push_back(v.name());
        for (int k = 0; k < 10; ++k, ++pairs) {
            std::size_t i = std::uniform_int_distribution<std::size_t>(0, t.configs.size() - 1)(rng);
            Assertion f = parse_assertion(random_formula(rng, vars, 2));
            INFO(rp.text << "?- " << rp.goal << "\nF = " << f.to_string() << " at " << i);
            bool v = eval(cs, t, i, f);
            CHECK(v != eval(cs, t, i, negate(f)));
            failing += !v;

            Assertion p = Assertion::pos(parse_constraint(random_constraint_text(rng, vars)));
            if (eval(cs, t, i, p))
                for (std::size_t j = i; j < t.configs.size(); ++j) CHECK(eval(cs, t, j, p));
        }
    }
    CHECK(failing > 100);
    CHECK(failing < 900);
}
