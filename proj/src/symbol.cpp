#include "clpslice/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace clpslice {

namespace {

struct Interner {
    std::shared_mutex mutex;
    std::deque<std::string> names{std::string{}};
    std::unordered_map<std::string, std::uint32_t> ids{{std::string{}, 0}};
};

Interner& interner() {
    static Interner instance;
    return instance;
}

}  // namespace

Symbol::Symbol(std::string_view name) {
    auto& in = interner();
    std::string key(name);
    {
        std::shared_lock lock(in.mutex);
        auto it = in.ids.find(key);
        if (it != in.ids.end()) {
            id_ = it->second;
            return;
        }
    }
    std::unique_lock lock(in.mutex);
    auto [it, inserted] = in.ids.try_emplace(key, static_cast<std::uint32_t>(in.names.size()));
    if (inserted) in.names.push_back(key);
    id_ = it->second;
}

const std::string& Symbol::name() const {
    auto& in = interner();
    std::shared_lock lock(in.mutex);
    return in.names[id_];
}

std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.id_ == b.id_) return std::strong_ordering::equal;
    int c = a.name().compare(b.name());
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace clpslice
