#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "minds/corpus.hpp"

namespace minds::testing {

inline std::set<UserId> users(std::initializer_list<std::uint32_t> ids) {
    std::set<UserId> out;
    for (auto id : ids) out.insert(UserId{id});
    return out;
}

inline std::set<Keyword> keywords(std::initializer_list<const char*> tokens) {
    std::set<Keyword> out;
    for (auto t : tokens) out.emplace(t);
    return out;
}

// Document whose relevance is `rel` for every listed user, then overridden per user.
inline Document doc(std::uint64_t id, std::uint32_t owner, std::initializer_list<const char*> kws,
                    const std::set<UserId>& all_users, double rel = 0.5,
                    std::initializer_list<std::pair<std::uint32_t, double>> overrides = {}) {
    Document d;
    d.id = DocId{id};
    d.owner = UserId{owner};
    for (auto k : kws) d.keywords.emplace(k);
    for (UserId u : all_users) d.relevance[u] = rel;
    for (auto [u, r] : overrides) d.relevance[UserId{u}] = r;
    return d;
}

} // namespace minds::testing
