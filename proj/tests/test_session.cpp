#include <catch_amalgamated.hpp>

#include <filesystem>

#include "clpslice/parser.hpp"
#include "clpslice/render.hpp"
#include "clpslice/session.hpp"
#include "fixtures.hpp"

using namespace clpslice;
using nlohmann::json;

namespace {

TraceRepository temp_repo(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("clpslice-session-" + name);
    std::filesystem::remove_all(dir);
    return TraceRepository(dir);
}

SessionConfig clp(const std::string& file, const std::string& goal) {
    SessionConfig cfg;
    cfg.mode = Mode::Clp;
    cfg.program = fixtures::example(file);
    cfg.goal = goal;
    return cfg;
}

}  // namespace

TEST_CASE("run length saves one trace per derivation") {
    TraceRepository repo = temp_repo("run");
    SessionReport r = cmd_run(clp("length.clp", "length([10,20],Ans)"), &repo);
    CHECK(r.verdict == Verdict::Success);
    CHECK(r.answers == std::vector<std::string>{"Ans = 0"});
    CHECK(r.exit_code() == ExitCode::Ok);
    REQUIRE_FALSE(r.trace_ids.empty());
    for (const auto& id : r.trace_ids) CHECK(repo.contains(id));
    Trace t = repo.load(r.trace_ids.back());
    CHECK(t.meta.mode == Mode::Clp);
    CHECK(t.answer == std::optional<std::string>("Ans = 0"));
    json j = r.to_json();
    CHECK(j["answers"][0] == "Ans = 0");
    CHECK(j["traceIds"].size() == r.trace_ids.size());
}

TEST_CASE("answer limits and the empty goal") {
    SessionConfig q = clp("queens.clp", "queens(5,X)");
    q.answers = 20;
    SessionReport r = cmd_run(q, nullptr);
    CHECK(r.answers.size() == 15);
    CHECK(r.answers.front() == "X = [1,5,4,3,2]");

    SessionReport e = cmd_run(clp("length.clp", ""), nullptr);
    CHECK(e.verdict == Verdict::Success);
    CHECK(e.answers == std::vector<std::string>{"true"});
}

TEST_CASE("errors map to exit codes") {
    SessionConfig bad = clp("length.clp", "length([10,20],Ans)");
    bad.program = "length([],0";
    CHECK_THROWS_AS(cmd_run(bad, nullptr), ParseError);

    SessionConfig loop = clp("length.clp", "length(L,N)");
    loop.program = "loop(X) :- loop(X).";
    loop.goal = "loop(A)";
    loop.max_steps = 20;
    SessionReport r = cmd_run(loop, nullptr);
    CHECK(r.verdict == Verdict::BudgetExceeded);
    CHECK(r.exit_code() == ExitCode::BudgetExceeded);
}

TEST_CASE("check on length reports and slices the violation") {
    TraceRepository repo = temp_repo("check");
    SessionConfig cfg = clp("length.clp", "length([10,20],Ans)");
    cfg.assertions = {fixtures::example("length.assert")};
    SessionReport r = cmd_check(cfg, &repo);
    CHECK(r.verdict == Verdict::AssertionViolation);
    CHECK(r.exit_code() == ExitCode::Violation);
    REQUIRE(r.violation);
    CHECK(r.violation->assertion == "inv(pos(M1 #> 0))");
    CHECK(r.violation->position == r.trace->configs.size() - 1);
    CHECK(r.violation->cids.size() == 5);
    CHECK(r.answers.empty());
    REQUIRE(r.sliced_id);
    CHECK(repo.contains(*r.sliced_id));
    Trace reloaded = repo.load(*r.sliced_id);
    CHECK(reloaded.sliced);
    CHECK(render_trace(reloaded) == render_trace(*r.sliced));
    CHECK(r.to_json()["violation"]["assertion"] == "inv(pos(M1 #> 0))");

    SessionConfig clean = cfg;
    clean.goal = "length([],Ans)";
    SessionReport ok = cmd_check(clean, nullptr);
    CHECK(ok.verdict == Verdict::Success);
    CHECK_FALSE(ok.violation);
}

TEST_CASE("assertions inside clause bodies are checked too") {
    SessionConfig cfg = clp("length.clp", "length([10,20],Ans)");
    cfg.program = "length([],0).\nlength([A | L],M) :- inv(pos(M #> 0)), M = N, length(L, N).\n";
    SessionReport r = cmd_check(cfg, nullptr);
    REQUIRE(r.violation);
    CHECK(r.violation->assertion == "inv(pos(M1 #> 0))");
}

TEST_CASE("check on the rhythm process") {
    SessionConfig cfg;
    cfg.mode = Mode::Ccp;
    cfg.program = fixtures::example("rhythm.ccp");
    cfg.assertions = {fixtures::example("rhythm.assert")};
    SessionReport r = cmd_check(cfg, nullptr);
    REQUIRE(r.violation);
    CHECK(r.violation->assertion == "inv(pos(beat) -> neg(stop))");
    std::vector<std::string> marked;
    const Store& s = r.trace->configs[r.violation->position].store;
    for (Cid c : r.violation->cids) marked.push_back(s.find(c)->atom.to_string());
    CHECK(marked == std::vector<std::string>{"beat", "stop"});

    SessionReport run = cmd_run(cfg, nullptr);
    CHECK(run.verdict == Verdict::Success);
    CHECK(run.answers == std::vector<std::string>{"k = 1"});
}

TEST_CASE("slicing by variables equals slicing by the matching cids") {
    TraceRepository repo = temp_repo("slice");
    SessionReport r = cmd_run(clp("length.clp", "length([10,20],Ans)"), &repo);
    Trace t = repo.load(r.trace_ids.back());

    SliceOutcome by_vars = cmd_slice(t, marking_from_json({{"criterion", "variables"}, {"vars", {"Ans"}}}, Mode::Clp), &repo);
    std::vector<Cid> ids(by_vars.marking.cids.begin(), by_vars.marking.cids.end());
    CHECK(ids.size() == 5);
    SliceOutcome by_cids = cmd_slice(t, marking_from_json({{"criterion", "causality"}, {"cids", ids}}, Mode::Clp), &repo);
    CHECK(by_cids.document == by_vars.document);
    REQUIRE(by_cids.id);
    CHECK(*by_cids.id == *by_vars.id);
    CHECK(repo.contains(*by_cids.id));

    SliceOutcome all = cmd_slice(t, marking_from_json({{"criterion", "all"}}, Mode::Clp), nullptr);
    CHECK(all.marking.cids.size() == t.last().store.atoms().size());

    CHECK_THROWS_AS(cmd_slice(t, marking_from_json({{"cids", {4242}}}, Mode::Clp), nullptr), MarkingError);
    CHECK_THROWS_AS(marking_from_json({{"criterion", "vibes"}}, Mode::Clp), MarkingError);
}

TEST_CASE("session configuration from JSON") {
    json j = {{"mode", "clp"},
              {"program", "p(1)."},
              {"goal", "p(X)"},
              {"assertions", "global: post(pos(X = 1))."},
              {"maxSteps", 50},
              {"answers", 3}};
    SessionConfig cfg = session_from_json(j);
    CHECK(cfg.mode == Mode::Clp);
    CHECK(cfg.goal == "p(X)");
    CHECK(cfg.assertions.size() == 1);
    CHECK(cfg.max_steps == 50);
    CHECK(cfg.answers == 3);
    SessionReport r = cmd_check(cfg, nullptr);
    CHECK(r.answers == std::vector<std::string>{"X = 1"});
    CHECK_FALSE(r.violation);
}
