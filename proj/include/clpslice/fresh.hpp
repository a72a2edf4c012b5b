#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "clpslice/symbol.hpp"

namespace clpslice {

// Fresh variable names: per-prefix counters that skip reserved names.
// A value type, so a derivation can snapshot and restore it.
class NameGen {
public:
    NameGen() = default;
    explicit NameGen(std::unordered_set<Symbol> reserved);

    Symbol fresh(std::string_view prefix);
    void reserve(Symbol name);
    bool reserved(Symbol name) const;

    // "H12" -> "H", "X'" -> "X"; lowercase starts get a "V" prefix.
    static std::string base_of(std::string_view name);

private:
    std::shared_ptr<std::unordered_set<Symbol>> reserved_;
    std::unordered_map<std::string, std::uint64_t> counters_;
};

}  // namespace clpslice
