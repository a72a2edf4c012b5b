#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clpslice/assertion.hpp"
#include "clpslice/constraint.hpp"

namespace clpslice {

// CCP agents. Hole is the sliced-away placeholder; Check carries an
// assertion literal produced by the CLP translation.
class Process {
public:
    enum class Kind : std::uint8_t { Skip, Tell, Sum, Par, Local, Call, Check, Hole };

    struct Branch {
        bool hole = false;
        Constraint guard;
        std::shared_ptr<const Process> body;

        const Process& process() const { return *body; }
        friend bool operator==(const Branch& a, const Branch& b);
    };

    Process();  // skip

    static Process skip() { return {}; }
    static Process tell(Constraint c);
    static Process ask(Constraint guard, Process body);
    static Process sum(std::vector<Branch> branches);
    static Process par(std::vector<Process> parts);
    static Process local(Symbol var, Process body);
    static Process call(Symbol name, std::vector<Term> args);
    static Process check(ClassifiedAssertion a);
    static Process hole();
    static Branch branch(Constraint guard, Process body);
    static Branch hole_branch();

    Kind kind() const;
    bool is_hole() const { return kind() == Kind::Hole; }
    const Constraint& constraint() const;           // Tell
    const std::vector<Branch>& branches() const;    // Sum
    const std::vector<Process>& parts() const;      // Par
    Symbol var() const;                             // Local
    const Process& body() const;                    // Local
    Symbol name() const;                            // Call
    const std::vector<Term>& args() const;          // Call
    const ClassifiedAssertion& assertion() const;   // Check

    std::vector<Symbol> free_vars() const;
    void collect_free_vars(std::vector<Symbol>& out) const;
    // Capture-avoiding; bound variables are primed when they clash with the range.
    Process substitute(const Substitution& s) const;
    std::string to_string() const;

    friend bool operator==(const Process& a, const Process& b);

private:
    struct Node;
    explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct ProcDef {
    Symbol name;
    std::vector<Symbol> params;
    Process body;

    std::string to_string() const;  // def p(X,Y) = P.
    friend bool operator==(const ProcDef&, const ProcDef&) = default;
};

}  // namespace clpslice
