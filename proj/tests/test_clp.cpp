#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include "fixtures.hpp"

using namespace clpslice;

namespace {

bool valid_queens(const std::vector<int>& q) {
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (q[i] == q[j] || std::abs(q[i] - q[j]) == static_cast<int>(j - i)) return false;
    return true;
}

std::vector<std::vector<int>> queens_oracle(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        if (valid_queens(perm)) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::string queens_text(const std::vector<int>& q) {
    std::string s = "X = [";
    for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
    return s + "]";
}

}  // namespace

TEST_CASE("length of a two-element list answers zero") {
    ConstraintSystem cs;
    ClpProgram p = parse_clp(fixtures::example("length.clp"));
    auto ds = fixtures::all_derivations(p, parse_goal("length([10,20],Ans)"), cs);
    auto success = std::find_if(ds.begin(), ds.end(), [](const auto& d) { return d.verdict == Verdict::Success; });
    REQUIRE(success != ds.end());
    REQUIRE(success->answer);
    CHECK(*success->answer == "Ans = 0");
    CHECK(cs.entails(success->store, parse_constraint("Ans = 0")));
    CHECK(success->choices == std::vector<int>{2, 2, 1});
    CHECK(std::count_if(ds.begin(), ds.end(), [](const auto& d) { return d.verdict == Verdict::Success; }) == 1);
}

TEST_CASE("queens: wrong answers appear and the oracle rejects them") {
    auto valid = queens_oracle(5);
    CHECK(valid.size() == 10);
    CHECK_FALSE(valid_queens({1, 5, 4, 3, 2}));

    ConstraintSystem cs;
    ClpProgram p = parse_clp(fixtures::example("queens.clp"));
    auto ds = fixtures::all_derivations(p, parse_goal("queens(5,X)"), cs);
    std::vector<std::string> answers;
    for (const auto& d : ds)
        if (d.verdict == Verdict::Success) answers.push_back(*d.answer);
    CHECK(answers.size() == 15);
    CHECK(std::find(answers.begin(), answers.end(), "X = [1,5,4,3,2]") != answers.end());
    // Independent model of the faulty program: the permutations it accepts.
    std::vector<int> perm{1, 2, 3, 4, 5};
    std::set<std::string> expected;
    do {
        bool ok = true;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                int d = j - i;
                ok = ok && perm[i] + d != perm[j] && perm[j] + perm[i] != d;
            }
        if (ok) expected.insert(queens_text(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(std::set<std::string>(answers.begin(), answers.end()) == expected);
    std::set<std::string> distinct(answers.begin(), answers.end());
    CHECK(distinct.size() == answers.size());
}

TEST_CASE("an inconsistent body fails exactly once") {
    ConstraintSystem cs;
    ClpProgram p = parse_clp("fail_c :- X = 1, X = 2.");
    auto ds = fixtures::all_derivations(p, parse_goal("fail_c"), cs);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].verdict == Verdict::Failure);
    CHECK_FALSE(ds[0].store.consistent());
    CHECK_FALSE(ds[0].answer);
}

TEST_CASE("undefined predicates and step budgets") {
    ConstraintSystem cs;
    ClpProgram p = parse_clp("loop(X) :- loop(X).");
    ClpOptions opts;
    opts.max_steps = 40;
    auto ds = fixtures::all_derivations(p, parse_goal("loop(A)"), cs, opts);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].verdict == Verdict::BudgetExceeded);

    auto none = fixtures::all_derivations(p, parse_goal("missing(A)"), cs);
    REQUIRE(none.size() == 1);
    CHECK(none[0].verdict == Verdict::Failure);
}

TEST_CASE("a hook returning false halts the whole run") {
    ConstraintSystem cs;
    ClpProgram p = parse_clp(fixtures::example("queens.clp"));
    std::size_t seen = 0;
    ClpHook hook = [&](const ClpView& v) {
        ++seen;
        return !v.answer;
    };
    ClpRun run(p, parse_goal("queens(4,X)"), cs, {}, hook);
    auto d = run.next();
    while (d && d->verdict == Verdict::Failure) d = run.next();
    REQUIRE(d);
    CHECK(d->verdict == Verdict::AssertionViolation);
    CHECK(run.halted());
    CHECK_FALSE(run.next());
    CHECK(seen > 1);
}

TEST_CASE("replay on the translation agrees with the CLP derivation") {
    ConstraintSystem cs;
    for (const char* name : {"length.clp", "queens.clp"}) {
        ClpProgram p = parse_clp(fixtures::example(name));
        auto goal = parse_goal(std::string(name) == "length.clp" ? "length([10,20],Ans)" : "queens(4,X)");
        CcpEngine engine(clp_to_ccp_program(p), cs);
        Process g = translate_goal(goal);
        auto ds = fixtures::all_derivations(p, goal, cs);
        for (const auto& d : ds) {
            Replay r = replay_derivation(engine, g, d);
            CHECK(r.trace.verdict == d.verdict);
            const auto& a = r.trace.last().store.atoms();
            const auto& b = d.store.atoms();
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].atom == b[i].atom);
            CHECK(r.boundary.size() == d.steps + 1);
            CHECK(r.boundary.back() == r.trace.configs.size() - 1);
        }
    }
}

TEST_CASE("answer sets do not depend on body literal order") {
    fixtures::ProgramGenerator gen(4242);
    ConstraintSystem cs;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 80; ++i) {
        auto rp = gen.next();
        ClpProgram p = parse_clp(rp.text);
        ClpProgram q = p;
        for (auto& r : q.rules) std::shuffle(r.body.begin(), r.body.end(), rng);
        auto goal = parse_goal(rp.goal);
        auto dp = fixtures::all_derivations(p, goal, cs);
        auto dq = fixtures::all_derivations(q, goal, cs);
        INFO(rp.text << "?- " << rp.goal);
        for (const auto& obs : rp.observables) {
            Constraint c = parse_constraint(obs);
            auto observed = [&](const std::vector<ClpDerivation>& ds) {
                return std::any_of(ds.begin(), ds.end(), [&](const ClpDerivation& d) {
                    return d.verdict == Verdict::Success && cs.entails(d.store, c);
                });
            };
            CHECK(observed(dp) == observed(dq));
        }
        auto count = [](const std::vector<ClpDerivation>& ds) {
            return std::count_if(ds.begin(), ds.end(), [](const auto& d) { return d.verdict == Verdict::Success; });
        };
        CHECK(count(dp) == count(dq));
    }
}
