#include "clpslice/translate.hpp"

#include <map>
#include <unordered_set>

#include "clpslice/fresh.hpp"

namespace clpslice {

Process translate_literal(const Literal& lit) {
    switch (lit.kind) {
    case Literal::Kind::Atom: return Process::call(lit.pred, lit.args);
    case Literal::Kind::Constraint: return Process::tell(lit.constraint);
    case Literal::Kind::Assertion: return Process::check(lit.assertion);
    }
    return Process::skip();
}

namespace {

Process par_of(std::vector<Process> parts) {
    if (parts.empty()) return Process::skip();
    if (parts.size() == 1) return parts[0];
    return Process::par(std::move(parts));
}

}  // namespace

Process translate_goal(const std::vector<Literal>& goal) {
    std::vector<Process> parts;
    for (const auto& l : goal) parts.push_back(translate_literal(l));
    return par_of(std::move(parts));
}

Process wrap_locals(const std::vector<Symbol>& vars, Process body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Process::local(*it, std::move(body));
    return body;
}

std::vector<ProcDef> clp_to_ccp(const ClpProgram& program) {
    std::vector<ProcDef> defs;
    for (const auto& key : program.predicates()) {
        std::vector<const Rule*> group;
        for (const auto& r : program.rules) {
            if (r.key() == key) group.push_back(&r);
        }
        const Rule& first = *group.front();
        std::unordered_set<Symbol> taken;
        for (const Rule* r : group) {
            for (Symbol v : r->vars()) taken.insert(v);
        }
        NameGen formals_gen(taken);
        ProcDef def;
        def.name = first.pred;
        for (std::size_t a = 0; a < first.arity(); ++a) def.params.push_back(formals_gen.fresh("X"));

        std::vector<Process::Branch> branches;
        for (const Rule* r : group) {
            std::vector<Process> parts;
            for (std::size_t a = 0; a < r->arity(); ++a) {
                parts.push_back(Process::tell(
                    Constraint::of(AtomicConstraint::equal(Term::var(def.params[a]), r->head[a]))));
            }
            for (const auto& l : r->body) parts.push_back(translate_literal(l));
            branches.push_back(Process::branch(Constraint::truth(), wrap_locals(r->vars(), par_of(std::move(parts)))));
        }
        def.body = Process::sum(std::move(branches));
        defs.push_back(std::move(def));
    }
    return defs;
}

CcpProgram clp_to_ccp_program(const ClpProgram& program) {
    CcpProgram out;
    out.defs = clp_to_ccp(program);
    return out;
}

}  // namespace clpslice
