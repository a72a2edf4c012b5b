#include <catch_amalgamated.hpp>

#include <filesystem>
#include <thread>

#include <httplib.h>

#include "clpslice/service.hpp"
#include "clpslice/session.hpp"
#include "fixtures.hpp"

using namespace clpslice;
using nlohmann::json;

namespace {

struct Running {
    TraceRepository repo;
    TraceService service;
    int port;
    std::thread thread;

    explicit Running(const std::filesystem::path& dir)
        : repo(dir), service(repo), port(service.bind_any("127.0.0.1")) {
        thread = std::thread([this] { service.listen_after_bind(); });
    }
    ~Running() {
        service.stop();
        thread.join();
    }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port);
        c.set_read_timeout(30, 0);
        return c;
    }
};

std::filesystem::path fresh_dir() {
    auto dir = std::filesystem::temp_directory_path() / "clpslice-service";
    std::filesystem::remove_all(dir);
    return dir;
}

json length_run(bool check) {
    return {{"mode", "clp"},
            {"program", fixtures::example("length.clp")},
            {"goal", "length([10,20],Ans)"},
            {"assertions", check ? json(fixtures::example("length.assert")) : json::array()},
            {"check", check}};
}

}  // namespace

TEST_CASE("run, list, fetch and slice over HTTP") {
    Running srv(fresh_dir());
    REQUIRE(srv.port > 0);
    auto cli = srv.client();

    auto empty = cli.Get("/traces");
    REQUIRE(empty);
    CHECK(empty->status == 200);
    CHECK(json::parse(empty->body)["traces"].empty());

    auto run = cli.Post("/run", length_run(false).dump(), "application/json");
    REQUIRE(run);
    REQUIRE(run->status == 200);
    json report = json::parse(run->body);
    CHECK(report["verdict"] == "success");
    CHECK(report["answers"][0] == "Ans = 0");
    std::string id = report["traceIds"].back();

    auto list = cli.Get("/traces");
    REQUIRE(list);
    auto ids = json::parse(list->body)["traces"];
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());

    auto doc = cli.Get("/traces/" + id);
    REQUIRE(doc);
    CHECK(doc->status == 200);
    CHECK(json::parse(doc->body) == srv.repo.load_json(id));
    CHECK(doc->get_header_value("Content-Type").find("application/json") != std::string::npos);

    json marking = {{"criterion", "variables"}, {"vars", {"Ans"}}};
    auto sliced = cli.Post("/traces/" + id + "/slice", marking.dump(), "application/json");
    REQUIRE(sliced);
    REQUIRE(sliced->status == 200);
    std::string sliced_id = sliced->get_header_value("X-Trace-Id");
    CHECK(srv.repo.contains(sliced_id));

    SliceOutcome local = cmd_slice(srv.repo.load(id), marking_from_json(marking, Mode::Clp), nullptr);
    CHECK(sliced->body == local.document.dump());
    CHECK(json::parse(sliced->body)["sliced"] == true);
}

TEST_CASE("check over HTTP reports the violation") {
    Running srv(fresh_dir());
    auto cli = srv.client();
    auto res = cli.Post("/run", length_run(true).dump(), "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    json report = json::parse(res->body);
    CHECK(report["verdict"] == "assertion-violation");
    CHECK(report["violation"]["assertion"] == "inv(pos(M1 #> 0))");
    CHECK(srv.repo.contains(report["slicedId"].get<std::string>()));
}

TEST_CASE("errors are reported as JSON with status codes") {
    Running srv(fresh_dir());
    auto cli = srv.client();
    auto run = cli.Post("/run", length_run(false).dump(), "application/json");
    REQUIRE(run);
    std::string id = json::parse(run->body)["traceIds"].back();

    auto missing = cli.Get("/traces/" + std::string(64, '0'));
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body)["error"]["code"] == "not-found");

    auto bad_id = cli.Get("/traces/xyz");
    REQUIRE(bad_id);
    CHECK(bad_id->status == 404);

    auto bad_mark = cli.Post("/traces/" + id + "/slice", R"({"cids":[9999]})", "application/json");
    REQUIRE(bad_mark);
    CHECK(bad_mark->status == 422);
    json err = json::parse(bad_mark->body)["error"];
    CHECK(err["code"] == "invalid-marking");
    CHECK(err["invalid"].size() == 1);

    auto bad_json = cli.Post("/run", "{not json", "application/json");
    REQUIRE(bad_json);
    CHECK(bad_json->status == 400);

    json bad_prog = length_run(false);
    bad_prog["program"] = "length([],0";
    auto parse = cli.Post("/run", bad_prog.dump(), "application/json");
    REQUIRE(parse);
    CHECK(parse->status == 400);
    CHECK(json::parse(parse->body)["error"]["code"] == "parse-error");
}
