#include <catch_amalgamated.hpp>

#include <bit>

#include "clpslice/marking.hpp"
#include "fixtures.hpp"

using namespace clpslice;
using fixtures::con;

namespace {

std::string random_atom(std::mt19937_64& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    static const char* vars[] = {"X", "Y", "Z", "W", "V"};
    std::string x = vars[pick(0, 4)], y = vars[pick(0, 4)];
    switch (pick(0, 7)) {
    case 0: return x + " = " + std::to_string(pick(0, 3));
    case 1: return x + " = " + y;
    case 2: return x + " #< " + y;
    case 3: return x + " #\\= " + std::to_string(pick(0, 3));
    case 4: return x + " in " + std::to_string(pick(0, 2)) + ".." + std::to_string(pick(1, 4));
    case 5: return x + " = f(" + y + ")";
    case 6: return x + " #= " + y + " + 1";
    default: return x + " = a";
    }
}

struct Oracle {
    std::vector<std::vector<Cid>> minimal;
    std::set<Cid> uni;
};

// Every subset, then those whose one-smaller subsets all fail. Both
// properties are monotone, so that is set-minimality.
template <typename Prop>
Oracle exhaustive(const Store& s, Prop holds) {
    const auto& atoms = s.atoms();
    std::size_t n = atoms.size();
    std::vector<char> ok(std::size_t{1} << n);
    // Supersets of a passing subset pass (the property is monotone); the
    // subsets of m are all numerically smaller, so they are already known.
    for (std::size_t m = 0; m < ok.size(); ++m) {
        bool inherited = false;
        for (std::size_t i = 0; i < n && !inherited; ++i)
            inherited = (m >> i & 1) && ok[m & ~(std::size_t{1} << i)];
        if (inherited) {
            ok[m] = 1;
            continue;
        }
        std::vector<AtomicConstraint> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1) sub.push_back(atoms[i].atom);
        ok[m] = holds(sub);
    }
    Oracle o;
    for (std::size_t m = 0; m < ok.size(); ++m) {
        if (!ok[m]) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < n && minimal; ++i)
            if ((m >> i & 1) && ok[m & ~(std::size_t{1} << i)]) minimal = false;
        if (!minimal) continue;
        std::vector<Cid> ids;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1) ids.push_back(atoms[i].cid);
        o.uni.insert(ids.begin(), ids.end());
        o.minimal.push_back(std::move(ids));
    }
    std::sort(o.minimal.begin(), o.minimal.end());
    return o;
}

Store random_store(const ConstraintSystem& cs, std::mt19937_64& rng, int n) {
    Store s;
    for (int i = 0; i < n; ++i) {
        NameGen names;
        auto a = cs.atomize(con(random_atom(rng)), names);
        s = cs.add_all(s, a.atoms);
    }
    return s;
}

}  // namespace

TEST_CASE("worked example: a unique minimal subset") {
    ConstraintSystem cs;
    Store s = fixtures::make_store(cs, "X = 1, Y = 2, Z #> 0");
    auto r = s_minimal(cs, s, con("X = 1"));
    CHECK(r.cids == std::set<Cid>{1});
    REQUIRE(r.subsets.size() == 1);
    auto two = s_minimal(cs, fixtures::make_store(cs, "X = 1, X = Y, Y = 1"), con("Y = 1"));
    CHECK(two.subsets == std::vector<std::vector<Cid>>{{3}, {1, 2}});
    auto none = s_minimal(cs, s, con("X = 2"));
    CHECK(none.subsets.empty());
    auto triv = s_minimal(cs, s, con("true"));
    CHECK(triv.subsets == std::vector<std::vector<Cid>>{{}});
}

TEST_CASE("minimal subsets match the exhaustive oracle on random stores") {
    ConstraintSystem cs;
    std::mt19937_64 rng(31337);
    int stores = 0, nontrivial = 0, inconsistent = 0;
    for (; stores < 500; ++stores) {
        int n = std::uniform_int_distribution<int>(1, 12)(rng);
        Store s = random_store(cs, rng, n);
        REQUIRE(s.atoms().size() <= 12);
        Constraint c = con(random_atom(rng) + ", " + random_atom(rng));
        inconsistent += !s.consistent();
        INFO("store #" << stores << " consistent=" << s.consistent() << " c=" << c.to_string());

        auto entail = exhaustive(s, [&](const std::vector<AtomicConstraint>& sub) { return cs.entails_atoms(sub, c); });
        auto got = s_minimal(cs, s, c);
        CHECK_FALSE(got.approximate);
        std::sort(got.subsets.begin(), got.subsets.end());
        CHECK(got.subsets == entail.minimal);
        CHECK(got.cids == entail.uni);
        nontrivial += !entail.minimal.empty();

        auto clash = exhaustive(s, [&](std::vector<AtomicConstraint> sub) {
            NameGen names;
            for (auto& a : cs.atomize(c, names).atoms) sub.push_back(a);
            return cs.satisfiable(sub) == Satisfiability::Unsat;
        });
        auto gi = s_minimal_inconsistent(cs, s, c);
        CHECK_FALSE(gi.approximate);
        std::sort(gi.subsets.begin(), gi.subsets.end());
        CHECK(gi.subsets == clash.minimal);
        CHECK(gi.cids == clash.uni);
    }
    CHECK(nontrivial > 50);
    CHECK(inconsistent > 20);
}

TEST_CASE("budget exhaustion over-approximates and says so") {
    ConstraintSystem cs;
    std::string text = "X0 = X1";
    for (int i = 1; i < 14; ++i) text += ", X" + std::to_string(i) + " #=< X" + std::to_string(i + 1);
    text += ", X14 in 0..3";
    Store s = fixtures::make_store(cs, text);
    MinimalOptions tiny;
    tiny.subset_budget = 5;
    auto r = s_minimal(cs, s, con("X0 #< 4"), tiny);
    CHECK(r.approximate);
    auto exact = s_minimal(cs, s, con("X0 #< 4"));
    CHECK_FALSE(exact.approximate);
    for (Cid c : exact.cids) CHECK(r.cids.count(c));
}

TEST_CASE("variable sharing with and without closure") {
    ConstraintSystem cs;
    Store s = fixtures::make_store(cs, "A = B, B = C, D = 1");
    CHECK(var_sharing(s, {Symbol("A")}, false) == std::set<Cid>{1});
    CHECK(var_sharing(s, {Symbol("A")}, true) == std::set<Cid>{1, 2});
    CHECK(var_sharing(s, {Symbol("Q")}, true).empty());
}
