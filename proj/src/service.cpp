#include "clpslice/service.hpp"

#include <httplib.h>

#include "clpslice/parser.hpp"
#include "clpslice/session.hpp"

namespace clpslice {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message,
                const std::vector<std::string>& invalid = {}) {
    json err = {{"code", code}, {"message", message}};
    if (!invalid.empty()) err["invalid"] = invalid;
    send_json(res, status, {{"error", err}});
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
    try {
        body();
    } catch (const MarkingError& e) {
        send_error(res, 422, "invalid-marking", e.what(), e.invalid());
    } catch (const ParseError& e) {
        send_error(res, 400, "parse-error", e.what());
    } catch (const TraceFormatError& e) {
        send_error(res, 404, "trace-error", e.what());
    } catch (const json::exception& e) {
        send_error(res, 400, "bad-request", e.what());
    } catch (const std::invalid_argument& e) {
        send_error(res, 400, "bad-request", e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
    }
}

}  // namespace

TraceService::TraceService(TraceRepository repo)
    : repo_(std::move(repo)), server_(std::make_unique<httplib::Server>()) {
    install(*server_);
}

TraceService::~TraceService() = default;

void TraceService::install(httplib::Server& server) {
    server.Get("/traces", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, {{"traces", repo_.list()}}); });
    });
    server.Get(R"(/traces/([0-9a-f]{64}))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const std::string id = req.matches[1];
            if (!repo_.contains(id)) return send_error(res, 404, "not-found", "no trace with id " + id);
            send_json(res, 200, repo_.load_json(id));
        });
    });
    server.Post(R"(/traces/([0-9a-f]{64})/slice)", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const std::string id = req.matches[1];
            if (!repo_.contains(id)) return send_error(res, 404, "not-found", "no trace with id " + id);
            Trace trace = repo_.load(id);
            json body = req.body.empty() ? json::object() : json::parse(req.body);
            MarkingSpec spec = marking_from_json(body, trace.meta.mode);
            SliceOutcome out = cmd_slice(trace, spec, &repo_);
            res.set_header("X-Trace-Id", *out.id);
            send_json(res, 200, out.document);
        });
    });
    server.Post("/run", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = json::parse(req.body);
            SessionConfig cfg = session_from_json(body);
            bool monitor = body.value("check", false);
            std::lock_guard<std::mutex> lock(run_mutex_);
            SessionReport rep = monitor ? cmd_check(cfg, &repo_) : cmd_run(cfg, &repo_);
            send_json(res, 200, rep.to_json());
        });
    });
}

bool TraceService::listen(const std::string& host, int port) { return server_->listen(host, port); }
int TraceService::bind_any(const std::string& host) { return server_->bind_to_any_port(host); }
bool TraceService::listen_after_bind() { return server_->listen_after_bind(); }
void TraceService::stop() { server_->stop(); }

}  // namespace clpslice
