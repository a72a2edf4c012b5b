#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clpslice/program.hpp"

namespace clpslice {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col);
    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return msg_; }

private:
    std::string msg_;
    int line_;
    int col_;
};

// Naming convention for identifiers in term position.
//   Prolog: uppercase or '_' starts a variable, lowercase names are atoms.
//   Ccp:    every bare identifier is a variable; constants are integers,
//           [] and compound terms.
enum class Convention : std::uint8_t { Prolog, Ccp };

struct ParseOptions {
    Convention convention = Convention::Prolog;
    bool allow_holes = false;  // `*` placeholders of sliced traces
};

ClpProgram parse_clp(std::string_view text);
std::vector<Literal> parse_goal(std::string_view text);
CcpProgram parse_ccp(std::string_view text, ParseOptions opts = {Convention::Ccp, false});
Process parse_process(std::string_view text, ParseOptions opts = {});
Constraint parse_constraint(std::string_view text, ParseOptions opts = {});
Assertion parse_assertion(std::string_view text, ParseOptions opts = {});
ClassifiedAssertion parse_classified(std::string_view text, ParseOptions opts = {});
Term parse_term(std::string_view text, ParseOptions opts = {});
std::vector<SidecarEntry> parse_sidecar(std::string_view text, ParseOptions opts = {});

}  // namespace clpslice
