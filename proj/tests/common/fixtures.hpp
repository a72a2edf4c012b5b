#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "clpslice/clp.hpp"
#include "clpslice/engine.hpp"
#include "clpslice/parser.hpp"
#include "clpslice/translate.hpp"

namespace fixtures {

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string example(const std::string& name) {
    return read_text(std::string(CLPSLICE_EXAMPLES_DIR) + "/" + name);
}

inline std::string golden_path(const std::string& name) { return std::string(CLPSLICE_GOLDEN_DIR) + "/" + name; }

inline clpslice::Store make_store(const clpslice::ConstraintSystem& cs, const std::string& text,
                                  clpslice::Convention conv = clpslice::Convention::Prolog) {
    clpslice::NameGen names;
    clpslice::Constraint c = clpslice::parse_constraint(text, {conv, false});
    clpslice::Atomized a = cs.atomize(c, names, nullptr);
    clpslice::Store s = cs.add_all(clpslice::Store(), a.atoms);
    return a.fresh.empty() ? s : cs.hide(s, a.fresh);
}

inline clpslice::Constraint con(const std::string& text, clpslice::Convention conv = clpslice::Convention::Prolog) {
    return clpslice::parse_constraint(text, {conv, false});
}

// Random terminating CLP programs: predicates p0..p(k-1), where p_i only
// calls p_j with j > i, so every derivation is finite.
struct RandomProgram {
    std::string text;
    std::string goal;
    std::vector<std::string> observables;  // constraints over goal variables
};

class ProgramGenerator {
public:
    explicit ProgramGenerator(std::uint64_t seed) : rng_(seed) {}

    RandomProgram next() {
        RandomProgram out;
        int preds = pick(1, 3);
        arity_.assign(preds, 0);
        for (auto& a : arity_) a = pick(1, 2);
        std::ostringstream prog;
        for (int p = 0; p < preds; ++p) {
            int clauses = pick(1, 2);
            for (int c = 0; c < clauses; ++c) prog << clause(p, preds) << "\n";
        }
        out.text = prog.str();
        std::vector<std::string> gvars{"A", "B"};
        std::string goal = "p0(A";
        if (arity_[0] == 2) goal += ", B";
        goal += ")";
        if (arity_[0] == 1) gvars.pop_back();
        if (coin()) goal += ", " + constraint(gvars, true);
        out.goal = goal;
        for (int i = 0; i < 4; ++i) out.observables.push_back(constraint(gvars, false));
        return out;
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return pick(0, 1) == 1; }

    std::string var(const std::vector<std::string>& vs) { return vs[pick(0, static_cast<int>(vs.size()) - 1)]; }

    std::string value() {
        switch (pick(0, 4)) {
        case 0: return "a";
        case 1: return "f(" + std::to_string(pick(0, 2)) + ")";
        default: return std::to_string(pick(0, 3));
        }
    }

    std::string constraint(const std::vector<std::string>& vs, bool in_body) {
        std::string x = var(vs);
        std::string y = var(vs);
        switch (pick(0, in_body ? 6 : 4)) {
        case 0: return x + " = " + value();
        case 1: return x + " #= " + y + " + " + std::to_string(pick(0, 2));
        case 2: return x + " #< " + std::to_string(pick(1, 3));
        case 3: return x + " #\\= " + y;
        case 4: return x + " in " + std::to_string(pick(0, 1)) + ".." + std::to_string(pick(2, 3));
        case 5: return x + " = f(" + y + ")";
        default: return x + " = " + y;
        }
    }

    std::string term(const std::vector<std::string>& vs) {
        switch (pick(0, 5)) {
        case 0: return std::to_string(pick(0, 3));
        case 1: return "f(" + var(vs) + ")";
        default: return var(vs);
        }
    }

    std::string clause(int p, int preds) {
        std::vector<std::string> vs{"X", "Y", "Z"};
        std::string head = "p" + std::to_string(p) + "(" + term(vs);
        if (arity_[p] == 2) head += ", " + term(vs);
        head += ")";
        int lits = pick(0, 3);
        std::vector<std::string> body;
        for (int i = 0; i < lits; ++i) {
            if (p + 1 < preds && pick(0, 2) == 0) {
                int q = pick(p + 1, preds - 1);
                std::string call = "p" + std::to_string(q) + "(" + term(vs);
                if (arity_[q] == 2) call += ", " + term(vs);
                body.push_back(call + ")");
            } else {
                body.push_back(constraint(vs, true));
            }
        }
        if (body.empty()) return head + ".";
        std::string out = head + " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) out += (i ? ", " : "") + body[i];
        return out + ".";
    }

    std::mt19937_64 rng_;
    std::vector<int> arity_;
};

// All CLP derivations of a goal, without monitoring.
inline std::vector<clpslice::ClpDerivation> all_derivations(const clpslice::ClpProgram& program,
                                                            const std::vector<clpslice::Literal>& goal,
                                                            const clpslice::ConstraintSystem& cs,
                                                            clpslice::ClpOptions opts = {}) {
    std::vector<clpslice::ClpDerivation> out;
    clpslice::ClpRun run(program, goal, cs, std::move(opts));
    while (auto d = run.next()) out.push_back(std::move(*d));
    return out;
}

}  // namespace fixtures
