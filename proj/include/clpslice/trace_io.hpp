#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clpslice/trace.hpp"

namespace clpslice {

inline constexpr int kTraceFormatVersion = 1;

class TraceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json trace_to_json(const Trace& trace);
// Re-parses printed forms; `*` placeholders are accepted.
Trace trace_from_json(const nlohmann::json& doc);

std::string sha256_hex(std::string_view data);
// Content id: SHA-256 of the canonical serialization.
std::string trace_id(const nlohmann::json& doc);

// Directory of trace files named <id>.json.
class TraceRepository {
public:
    explicit TraceRepository(std::filesystem::path dir);
    // CLPSLICE_TRACE_DIR, or ./traces.
    static TraceRepository from_env();

    const std::filesystem::path& dir() const { return dir_; }
    std::string save(const Trace& trace) const;
    std::string save_json(const nlohmann::json& doc) const;
    bool contains(const std::string& id) const;
    nlohmann::json load_json(const std::string& id) const;
    Trace load(const std::string& id) const { return trace_from_json(load_json(id)); }
    std::vector<std::string> list() const;

private:
    std::filesystem::path dir_;
};

}  // namespace clpslice
