#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "clpslice/trace_io.hpp"

namespace httplib {
class Server;
}

namespace clpslice {

// HTTP front end over a trace directory:
//   GET  /traces              -> {"traces": [ids]}
//   GET  /traces/{id}         -> trace document
//   POST /traces/{id}/slice   -> sliced trace document (X-Trace-Id header)
//   POST /run                 -> session report with trace ids and answers
class TraceService {
public:
    explicit TraceService(TraceRepository repo);
    ~TraceService();

    // Registers the routes on an existing server.
    void install(httplib::Server& server);
    // Blocking listen; returns false if the port cannot be bound.
    bool listen(const std::string& host, int port);
    // Binds an ephemeral port and returns it, for tests; serve with listen_after_bind().
    int bind_any(const std::string& host);
    bool listen_after_bind();
    void stop();

private:
    TraceRepository repo_;
    std::mutex run_mutex_;  // runs are serialized so seeds stay reproducible
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace clpslice
