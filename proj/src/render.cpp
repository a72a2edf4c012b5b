#include "clpslice/render.hpp"

namespace clpslice {

std::string render_agent(const Process& p) {
    switch (p.kind()) {
    case Process::Kind::Skip: return "skip";
    case Process::Kind::Hole: return "*";
    case Process::Kind::Tell: {
        const Constraint& c = p.constraint();
        return c.is_atomic() ? c.to_string() : "tell(" + c.to_string() + ")";
    }
    case Process::Kind::Sum: {
        std::string out;
        for (const auto& b : p.branches()) {
            if (!out.empty()) out += " + ";
            if (b.hole) {
                out += "*";
            } else {
                out += b.guard.is_true() ? "ask() ..." : "ask(" + b.guard.to_string() + ") ...";
            }
        }
        return out;
    }
    case Process::Kind::Local: return "local ...";
    case Process::Kind::Par: return "...";
    case Process::Kind::Call:
    case Process::Kind::Check: return p.to_string();
    }
    return "?";
}

std::string render_config(const Configuration& c) {
    std::string hidden;
    for (Symbol v : c.store.hidden()) hidden += (hidden.empty() ? "" : " ") + v.name();
    if (hidden.empty()) hidden = "0";
    std::string agents;
    for (const auto& a : c.agents) agents += (agents.empty() ? "" : " || ") + render_agent(a.proc);
    std::string store;
    for (const auto& a : c.store.atoms()) store += (store.empty() ? "" : ", ") + a.atom.to_string();
    if (store.empty()) store = "t";
    if (!c.store.consistent()) store += " (f)";
    return "[" + hidden + " ; " + agents + " ; " + store + "]";
}

std::string render_trace(const Trace& t) {
    std::string out;
    for (std::size_t i = 0; i < t.configs.size(); ++i) {
        out += render_config(t.configs[i]);
        out += i + 1 < t.configs.size() ? " ->\n" : "\n";
    }
    return out;
}

}  // namespace clpslice
