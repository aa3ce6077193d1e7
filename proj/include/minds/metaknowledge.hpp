#pragma once

// Metaknowledge: the certainty factors one user holds about every other
// user's collection, per keyword.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minds/calculus.hpp"
#include "minds/detail/format.hpp"
#include "minds/errors.hpp"

namespace minds {

struct UserId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(UserId, UserId) = default;
};

inline std::ostream& operator<<(std::ostream& os, UserId u) { return os << u.value; }

// Lowercased, nonempty keyword token.
class Keyword {
public:
    explicit Keyword(std::string_view token) : token_(normalize(token)) {
        if (token_.empty()) throw ScenarioError("keyword must be nonempty");
        // Tokens appear unquoted in CSV output.
        for (unsigned char c : token_) {
            if (c == ',' || c == '"' || std::isspace(c) || std::iscntrl(c)) {
                throw ScenarioError("keyword '" + token_ + "' contains a separator, quote or whitespace");
            }
        }
    }

    const std::string& token() const { return token_; }

    friend bool operator==(const Keyword&, const Keyword&) = default;
    friend auto operator<=>(const Keyword&, const Keyword&) = default;

    static std::string normalize(std::string_view token) {
        std::string out(token);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    }

private:
    std::string token_;
};

inline std::ostream& operator<<(std::ostream& os, const Keyword& k) { return os << k.token(); }

// (observer, owner, keyword): the observer's belief about the owner's
// documents on the keyword. Self-beliefs are not representable.
struct MetaKey {
    UserId observer;
    UserId owner;
    Keyword keyword;

    MetaKey(UserId observer_, UserId owner_, Keyword keyword_)
        : observer(observer_), owner(owner_), keyword(std::move(keyword_)) {
        if (observer == owner) {
            throw ContractError("metaknowledge key with observer == owner (" + std::to_string(owner.value) + ")");
        }
    }

    friend bool operator==(const MetaKey&, const MetaKey&) = default;
    friend auto operator<=>(const MetaKey&, const MetaKey&) = default;
};

class MetaknowledgeStore {
public:
    using Entries = std::map<MetaKey, CertaintyFactor>;

    static constexpr double kDefaultCf = 0.5;

    MetaknowledgeStore() : default_cf_(kDefaultCf) {}
    explicit MetaknowledgeStore(CertaintyFactor default_cf) : default_cf_(default_cf) {}

    CertaintyFactor default_cf() const { return default_cf_; }

    CertaintyFactor get(const MetaKey& key) const {
        const auto it = entries_.find(key);
        return it == entries_.end() ? default_cf_ : it->second;
    }

    void set(const MetaKey& key, CertaintyFactor cf) { entries_.insert_or_assign(key, cf); }

    bool contains(const MetaKey& key) const { return entries_.contains(key); }
    std::size_t size() const { return entries_.size(); }
    const Entries& entries() const { return entries_; }

    friend bool operator==(const MetaknowledgeStore&, const MetaknowledgeStore&) = default;

private:
    CertaintyFactor default_cf_;
    Entries entries_;
};

inline CertaintyFactor get_cf(const MetaknowledgeStore& store, const MetaKey& key) { return store.get(key); }

// Revises the CF under `key` and materializes the entry, even for a no-op revision.
inline CertaintyFactor apply_evidence(MetaknowledgeStore& store, const MetaKey& key, const Evidence& e,
                                      const PolicyParams& p) {
    const CertaintyFactor updated = revise(store.get(key), e, p);
    store.set(key, updated);
    return updated;
}

// Owners sorted by the observer's CF, highest first; ties go to the lower id.
inline std::vector<UserId> order_owners(const MetaknowledgeStore& store, UserId observer, const Keyword& keyword,
                                        std::span<const UserId> owners) {
    std::vector<UserId> sorted(owners.begin(), owners.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ContractError("order_owners: duplicate owner in list");
    }
    if (std::binary_search(sorted.begin(), sorted.end(), observer)) {
        throw ContractError("order_owners: observer " + std::to_string(observer.value) + " listed as an owner");
    }

    struct Ranked {
        UserId owner;
        double cf;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(sorted.size());
    for (UserId w : sorted) ranked.push_back({w, store.get(MetaKey(observer, w, keyword)).value()});

    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.cf != b.cf) return a.cf > b.cf;
        return a.owner < b.owner;
    });

    std::vector<UserId> out;
    out.reserve(ranked.size());
    for (const auto& r : ranked) out.push_back(r.owner);
    return out;
}

// Mean absolute CF difference over `domain`; absent keys read as each store's default.
inline double distance(const MetaknowledgeStore& actual, const MetaknowledgeStore& ideal,
                       std::span<const MetaKey> domain) {
    if (domain.empty()) throw ContractError("distance: empty domain");
    double sum = 0.0;
    for (const auto& key : domain) sum += std::abs(actual.get(key).value() - ideal.get(key).value());
    return std::clamp(sum / static_cast<double>(domain.size()), 0.0, 1.0);
}

// Every (observer, owner, keyword) with observer != owner.
inline std::vector<MetaKey> peer_domain(const std::set<UserId>& users, const std::set<Keyword>& keywords) {
    std::vector<MetaKey> domain;
    domain.reserve(users.size() * (users.empty() ? 0 : users.size() - 1) * keywords.size());
    for (UserId o : users) {
        for (UserId w : users) {
            if (o == w) continue;
            for (const auto& k : keywords) domain.emplace_back(o, w, k);
        }
    }
    return domain;
}

// CSV snapshot: header `observer,owner,keyword,cf`, one row per stored entry in key order.
inline void write_store_csv(std::ostream& os, const MetaknowledgeStore& store) {
    os << "observer,owner,keyword,cf\n";
    for (const auto& [key, cf] : store.entries()) {
        os << key.observer.value << ',' << key.owner.value << ',' << key.keyword.token() << ','
           << detail::format_real(cf.value()) << '\n';
    }
}

} // namespace minds
