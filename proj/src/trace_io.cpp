#include "clpslice/trace_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "clpslice/parser.hpp"

namespace clpslice {

using nlohmann::json;

namespace {

const char* kind_name(Process::Kind k) {
    switch (k) {
    case Process::Kind::Skip: return "skip";
    case Process::Kind::Tell: return "tell";
    case Process::Kind::Sum: return "sum";
    case Process::Kind::Par: return "par";
    case Process::Kind::Local: return "local";
    case Process::Kind::Call: return "call";
    case Process::Kind::Check: return "check";
    case Process::Kind::Hole: return "hole";
    }
    return "?";
}

json symbols(const std::vector<Symbol>& vs) {
    json out = json::array();
    for (Symbol v : vs) out.push_back(v.name());
    return out;
}

bool valid_id(const std::string& id) {
    return id.size() == 64 && std::all_of(id.begin(), id.end(), [](char c) {
               return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
           });
}

}  // namespace

json trace_to_json(const Trace& t) {
    const std::size_t n = t.configs.size();
    // Provenance: which step created each agent and atom.
    std::unordered_map<Pid, Pid> agent_origin;
    std::unordered_map<Cid, Pid> atom_origin;
    std::vector<std::vector<Pid>> children(n);
    for (std::size_t i = 0; i + 1 < n && i < t.labels.size(); ++i) {
        const auto& before = t.configs[i];
        const auto& after = t.configs[i + 1];
        std::unordered_set<Pid> old;
        for (const auto& a : before.agents) old.insert(a.pid);
        for (const auto& a : after.agents) {
            if (old.count(a.pid)) continue;
            agent_origin.emplace(a.pid, t.labels[i].pid);
            children[i].push_back(a.pid);
        }
        for (const auto& a : after.store.atoms()) {
            if (!before.store.find(a.cid)) atom_origin.emplace(a.cid, t.labels[i].pid);
        }
    }

    json configs = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = t.configs[i];
        json agents = json::array();
        for (const auto& a : c.agents) {
            json kids = json::array();
            if (i < t.labels.size() && t.labels[i].pid == a.pid) {
                for (Pid p : children[i]) kids.push_back(p);
            }
            auto it = agent_origin.find(a.pid);
            agents.push_back({{"pid", a.pid},
                              {"kind", kind_name(a.proc.kind())},
                              {"printedForm", a.proc.to_string()},
                              {"childPids", kids},
                              {"origin", it == agent_origin.end() ? 0 : it->second}});
        }
        json store = json::array();
        for (const auto& a : c.store.atoms()) {
            auto it = atom_origin.find(a.cid);
            store.push_back({{"cid", a.cid},
                             {"printedForm", a.atom.to_string()},
                             {"origin", it == atom_origin.end() ? 0 : it->second}});
        }
        json obligations = json::array();
        for (const auto& o : c.obligations) {
            obligations.push_back({{"printedForm", o.assertion.to_string()},
                                   {"attach", o.assertion.attach},
                                   {"origin", o.origin}});
        }
        configs.push_back({{"id", i},
                           {"hiddenVars", symbols(c.store.hidden())},
                           {"consistent", c.store.consistent()},
                           {"agents", agents},
                           {"store", store},
                           {"obligations", obligations}});
    }

    json labels = json::array();
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
        const auto& l = t.labels[i];
        labels.push_back({{"from", i}, {"to", i + 1}, {"pid", l.pid},
                          {"branch", l.branch ? json(*l.branch) : json(nullptr)}});
    }

    json meta = {{"mode", t.meta.mode == Mode::Ccp ? "ccp" : "clp"},
                 {"convention", t.meta.mode == Mode::Ccp ? "ccp" : "prolog"},
                 {"seed", t.meta.seed},
                 {"policy", t.meta.policy},
                 {"maxSteps", t.meta.max_steps},
                 {"nodeBudget", t.meta.node_budget},
                 {"programHash", t.meta.program_hash},
                 {"goal", t.meta.goal}};
    json doc = {{"version", kTraceFormatVersion},
                {"meta", meta},
                {"verdict", verdict_name(t.verdict)},
                {"answer", t.answer ? json(*t.answer) : json(nullptr)},
                {"sliced", t.sliced},
                {"configs", configs},
                {"labels", labels}};
    if (t.violation) {
        const auto& v = *t.violation;
        doc["violation"] = {{"position", v.position},
                            {"assertion", v.assertion},
                            {"cids", v.cids},
                            {"pids", v.pids},
                            {"approximate", v.approximate}};
    } else {
        doc["violation"] = nullptr;
    }
    return doc;
}

Trace trace_from_json(const json& doc) {
    try {
        if (doc.at("version").get<int>() != kTraceFormatVersion) {
            throw TraceFormatError("unsupported trace version " + doc.at("version").dump());
        }
        Trace t;
        const json& meta = doc.at("meta");
        std::string mode = meta.at("mode").get<std::string>();
        if (mode != "ccp" && mode != "clp") throw TraceFormatError("unknown mode " + mode);
        t.meta.mode = mode == "ccp" ? Mode::Ccp : Mode::Clp;
        std::string conv = meta.value("convention", mode == "ccp" ? "ccp" : "prolog");
        ParseOptions opts{conv == "ccp" ? Convention::Ccp : Convention::Prolog, true};
        t.meta.seed = meta.value("seed", std::uint64_t{0});
        t.meta.policy = meta.value("policy", std::string("leftmost"));
        t.meta.max_steps = meta.value("maxSteps", std::uint64_t{10'000});
        t.meta.node_budget = meta.value("nodeBudget", std::uint64_t{1'000'000});
        t.meta.program_hash = meta.value("programHash", std::string());
        t.meta.goal = meta.value("goal", std::string());

        auto v = verdict_from_name(doc.at("verdict").get<std::string>());
        if (!v) throw TraceFormatError("unknown verdict " + doc.at("verdict").dump());
        t.verdict = *v;
        if (doc.contains("answer") && !doc["answer"].is_null()) t.answer = doc["answer"].get<std::string>();
        t.sliced = doc.value("sliced", false);

        for (const auto& c : doc.at("configs")) {
            Configuration cfg;
            for (const auto& a : c.at("agents")) {
                cfg.agents.push_back({a.at("pid").get<Pid>(), parse_process(a.at("printedForm").get<std::string>(), opts)});
            }
            std::vector<StoredAtom> atoms;
            for (const auto& a : c.at("store")) {
                Constraint k = parse_constraint(a.at("printedForm").get<std::string>(), opts);
                if (!k.is_atomic() && !k.is_true()) {
                    throw TraceFormatError("store entry is not atomic: " + a.at("printedForm").get<std::string>());
                }
                StoredAtom sa;
                sa.cid = a.at("cid").get<Cid>();
                sa.atom = k.is_true() ? AtomicConstraint::truth() : k.items()[0].atom;
                atoms.push_back(std::move(sa));
            }
            std::vector<Symbol> hidden;
            for (const auto& h : c.at("hiddenVars")) hidden.emplace_back(h.get<std::string>());
            cfg.store = Store::from_parts(std::move(atoms), std::move(hidden), c.value("consistent", true));
            if (c.contains("obligations")) {
                for (const auto& o : c["obligations"]) {
                    ClassifiedAssertion ca = parse_classified(o.at("printedForm").get<std::string>(), opts);
                    ca.attach = o.value("attach", std::string("global"));
                    cfg.obligations.push_back({std::move(ca), o.value("origin", Pid{0})});
                }
            }
            t.configs.push_back(std::move(cfg));
        }
        for (const auto& l : doc.at("labels")) {
            TransitionLabel lab;
            lab.pid = l.at("pid").get<Pid>();
            if (!l.at("branch").is_null()) lab.branch = l["branch"].get<int>();
            t.labels.push_back(lab);
        }
        if (t.configs.empty() || t.labels.size() + 1 != t.configs.size()) {
            throw TraceFormatError("label count does not match configurations");
        }
        if (doc.contains("violation") && !doc["violation"].is_null()) {
            const json& v = doc["violation"];
            Violation vi;
            vi.position = v.at("position").get<std::size_t>();
            vi.assertion = v.at("assertion").get<std::string>();
            vi.cids = v.at("cids").get<std::vector<Cid>>();
            vi.pids = v.at("pids").get<std::vector<Pid>>();
            vi.approximate = v.value("approximate", false);
            t.violation = std::move(vi);
        }
        return t;
    } catch (const json::exception& e) {
        throw TraceFormatError(std::string("malformed trace document: ") + e.what());
    } catch (const ParseError& e) {
        throw TraceFormatError(std::string("unparsable printed form: ") + e.what());
    }
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string trace_id(const json& doc) { return sha256_hex(doc.dump()); }

TraceRepository::TraceRepository(std::filesystem::path dir) : dir_(std::move(dir)) {}

TraceRepository TraceRepository::from_env() {
    const char* env = std::getenv("CLPSLICE_TRACE_DIR");
    return TraceRepository(env && *env ? env : "traces");
}

std::string TraceRepository::save(const Trace& trace) const { return save_json(trace_to_json(trace)); }

std::string TraceRepository::save_json(const json& doc) const {
    std::filesystem::create_directories(dir_);
    std::string id = trace_id(doc);
    auto path = dir_ / (id + ".json");
    auto tmp = dir_ / (id + ".json.tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << doc.dump();
    }
    std::filesystem::rename(tmp, path);
    return id;
}

bool TraceRepository::contains(const std::string& id) const {
    return valid_id(id) && std::filesystem::exists(dir_ / (id + ".json"));
}

json TraceRepository::load_json(const std::string& id) const {
    if (!valid_id(id)) throw TraceFormatError("invalid trace id: " + id);
    std::ifstream in(dir_ / (id + ".json"), std::ios::binary);
    if (!in) throw TraceFormatError("no trace with id " + id);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw TraceFormatError(std::string("malformed trace file: ") + e.what());
    }
}

std::vector<std::string> TraceRepository::list() const {
    std::vector<std::string> out;
    if (!std::filesystem::exists(dir_)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir_)) {
        auto name = e.path().filename().string();
        if (name.size() == 69 && name.ends_with(".json") && valid_id(name.substr(0, 64))) out.push_back(name.substr(0, 64));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace clpslice
