#pragma once

#include <string>

#include "clpslice/trace.hpp"

namespace clpslice {

// Compact listing: one `[hidden ; agents ; store]` line per configuration,
// with `*` for sliced-away parts and `...` for nested bodies.
std::string render_agent(const Process& p);
std::string render_config(const Configuration& c);
std::string render_trace(const Trace& t);

}  // namespace clpslice
