#include "clpslice/fresh.hpp"

#include <cctype>

namespace clpslice {

NameGen::NameGen(std::unordered_set<Symbol> reserved)
    : reserved_(std::make_shared<std::unordered_set<Symbol>>(std::move(reserved))) {}

std::string NameGen::base_of(std::string_view name) {
    std::string s(name);
    while (!s.empty() && (std::isdigit(static_cast<unsigned char>(s.back())) || s.back() == '\'')) s.pop_back();
    if (s.empty()) return "V";
    if (std::islower(static_cast<unsigned char>(s[0]))) return "V" + s;
    return s;
}

Symbol NameGen::fresh(std::string_view prefix) {
    std::string base = base_of(prefix);
    auto& counter = counters_[base];
    for (;;) {
        Symbol candidate(base + std::to_string(++counter));
        if (!reserved(candidate)) return candidate;
    }
}

void NameGen::reserve(Symbol name) {
    if (!reserved_) {
        reserved_ = std::make_shared<std::unordered_set<Symbol>>();
    } else if (reserved_.use_count() > 1) {
        reserved_ = std::make_shared<std::unordered_set<Symbol>>(*reserved_);
    }
    reserved_->insert(name);
}

bool NameGen::reserved(Symbol name) const { return reserved_ && reserved_->count(name) > 0; }

}  // namespace clpslice
