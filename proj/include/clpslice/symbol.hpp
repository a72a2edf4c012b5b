#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace clpslice {

// Interned name. Comparison is by id; ordering is by text so that sorted
// containers print deterministically.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::string_view name);

    const std::string& name() const;
    std::uint32_t id() const { return id_; }
    bool empty() const { return id_ == 0; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend std::strong_ordering operator<=>(Symbol a, Symbol b);

private:
    std::uint32_t id_ = 0;
};

}  // namespace clpslice

template <>
struct std::hash<clpslice::Symbol> {
    std::size_t operator()(clpslice::Symbol s) const noexcept { return s.id(); }
};
