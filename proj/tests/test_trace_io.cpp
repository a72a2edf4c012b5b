#include <catch_amalgamated.hpp>

#include <filesystem>

#include "clpslice/session.hpp"
#include "clpslice/trace_io.hpp"
#include "fixtures.hpp"

using namespace clpslice;
using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("clpslice-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

Trace length_trace() {
    static ConstraintSystem cs;
    ClpProgram p = parse_clp(fixtures::example("length.clp"));
    CcpEngine engine(clp_to_ccp_program(p), cs);
    ReplayPolicy replay({2, 2, 1});
    Trace t = engine.run(translate_goal(parse_goal("length([10,20],Ans)")), replay);
    t.meta.mode = Mode::Clp;
    t.meta.goal = "length([10,20],Ans)";
    t.answer = "Ans = 0";
    return t;
}

}  // namespace

TEST_CASE("sha256 matches a known digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("document layout") {
    json doc = trace_to_json(length_trace());
    CHECK(doc["version"] == kTraceFormatVersion);
    CHECK(doc["meta"]["mode"] == "clp");
    CHECK(doc["verdict"] == "success");
    CHECK(doc["answer"] == "Ans = 0");
    CHECK(doc["sliced"] == false);
    CHECK(doc["violation"].is_null());
    const json& c0 = doc["configs"][0];
    CHECK(c0["id"] == 0);
    CHECK(c0["agents"][0]["printedForm"] == "length([10,20],Ans)");
    CHECK(c0["agents"][0]["kind"] == "call");
    const json& l0 = doc["labels"][0];
    CHECK(l0["from"] == 0);
    CHECK(l0["to"] == 1);
    CHECK(l0["branch"].is_null());
    CHECK(doc["labels"][1]["branch"] == 2);
    // The call's unfolding is its child.
    CHECK(c0["agents"][0]["childPids"].size() == 1);
    const json& last = doc["configs"].back();
    CHECK(last["store"].size() == 8);
    CHECK(last["store"][0]["printedForm"] == "[10,20]=[A1|L1]");
    CHECK(last["store"][0]["origin"].is_number());
}

TEST_CASE("round trip preserves printed forms and ids") {
    Trace t = length_trace();
    json doc = trace_to_json(t);
    Trace back = trace_from_json(doc);
    json again = trace_to_json(back);
    CHECK(again == doc);
    CHECK(trace_id(again) == trace_id(doc));
    CHECK(trace_id(doc).size() == 64);
}

TEST_CASE("sliced traces with holes reload") {
    ConstraintSystem cs;
    Trace t = length_trace();
    Marking m;
    for (const auto& a : t.last().store.atoms())
        if (a.atom.to_string().find('[') == std::string::npos) m.cids.insert(a.cid);
    Trace s = slice_trace(cs, t, m);
    json doc = trace_to_json(s);
    CHECK(doc["sliced"] == true);
    Trace back = trace_from_json(doc);
    CHECK(trace_to_json(back) == doc);
}

TEST_CASE("malformed documents are rejected") {
    json doc = trace_to_json(length_trace());
    json v = doc;
    v["version"] = 99;
    CHECK_THROWS_AS(trace_from_json(v), TraceFormatError);
    json bad = doc;
    bad["configs"][0]["agents"][0]["printedForm"] = "length([10,";
    CHECK_THROWS_AS(trace_from_json(bad), TraceFormatError);
    json labels = doc;
    labels["labels"].erase(0);
    CHECK_THROWS_AS(trace_from_json(labels), TraceFormatError);
    CHECK_THROWS_AS(trace_from_json(json::object()), TraceFormatError);
}

TEST_CASE("repository stores by content id") {
    TraceRepository repo(fresh_dir("repo"));
    CHECK(repo.list().empty());
    Trace t = length_trace();
    std::string id = repo.save(t);
    CHECK(repo.contains(id));
    CHECK(repo.save(t) == id);
    CHECK(repo.list() == std::vector<std::string>{id});
    CHECK(repo.load_json(id) == trace_to_json(t));
    CHECK_THROWS_AS(repo.load_json("../../etc/passwd"), TraceFormatError);
    CHECK_THROWS_AS(repo.load_json(std::string(64, 'a')), TraceFormatError);
    CHECK_FALSE(repo.contains("nope"));
}
