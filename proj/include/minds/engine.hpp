#pragma once

// Single-keyword query execution.
//
// The requester reads their own matching documents first. Peer collections
// are then visited in descending CF order, up to a budget, and every visit
// turns into evidence:
//
//   * peer returned documents: the requester's CF in that peer moves toward
//     the best relevance seen (reliability q_requester), and the peer's CF in
//     the requester is nudged up (support 1, reliability q_owner), since the
//     requester evidently works on the keyword too;
//   * peer returned nothing: the requester's CF in that peer receives pure
//     contradiction with reliability q_empty.
//
// Evidence is applied in visiting order, each revision reading the value left
// by the previous one.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minds/calculus.hpp"
#include "minds/corpus.hpp"
#include "minds/errors.hpp"
#include "minds/metaknowledge.hpp"

namespace minds {

struct Query {
    UserId requester;
    Keyword keyword;
    std::size_t issued_at = 0;
};

struct EngineConfig {
    std::size_t examine_budget = 3;
    double relevance_threshold = 0.5;
    double q_requester = 1.0;
    double q_owner = 0.1;
    double q_empty = 0.5;

    void validate() const {
        if (examine_budget == 0) throw RangeError("examine_budget must be positive");
        detail::require_unit(relevance_threshold, "relevance_threshold");
        detail::require_unit(q_requester, "q_requester");
        detail::require_unit(q_owner, "q_owner");
        detail::require_unit(q_empty, "q_empty");
    }
};

enum class Heuristic {
    RequesterRead, // requester rated the peer's documents
    OwnerMirror,   // peer learns the requester cares about the keyword
    EmptyResult,   // peer had nothing on the keyword
};

struct KeyedEvidence {
    MetaKey key;
    Evidence evidence;
};

struct EvidenceRecord {
    MetaKey key;
    Evidence evidence;
    CertaintyFactor old_cf;
    CertaintyFactor new_cf;
    Heuristic source;
};

struct QueryOutcome {
    std::vector<DocId> own_results;
    std::vector<UserId> examination_order;
    std::vector<UserId> examined; // prefix of examination_order
    std::map<UserId, std::vector<DocId>> per_owner_results;
    std::vector<EvidenceRecord> evidence_log;
    // Peers visited up to and including the first one holding a relevant
    // document; all visited peers when none did.
    std::size_t search_length = 0;
    // Fraction of relevant documents in the first nonempty peer result;
    // empty when no visited peer returned anything.
    std::optional<double> precision_at_1;
};

inline KeyedEvidence requester_evidence(UserId requester, UserId owner, const Keyword& keyword,
                                        std::span<const Document* const> returned, const EngineConfig& cfg) {
    if (returned.empty()) {
        throw ContractError("requester evidence needs at least one returned document");
    }
    double best = 0.0;
    for (const Document* doc : returned) best = std::max(best, doc->relevance_to(requester));
    return {MetaKey(requester, owner, keyword), Evidence(best, cfg.q_requester)};
}

inline KeyedEvidence owner_evidence(UserId requester, UserId owner, const Keyword& keyword,
                                    const EngineConfig& cfg) {
    return {MetaKey(owner, requester, keyword), Evidence(1.0, cfg.q_owner)};
}

inline KeyedEvidence empty_result_evidence(UserId requester, UserId owner, const Keyword& keyword,
                                           const EngineConfig& cfg) {
    return {MetaKey(requester, owner, keyword), Evidence(0.0, cfg.q_empty)};
}

inline QueryOutcome execute_query(const Query& query, const Corpus& corpus, MetaknowledgeStore& store,
                                  const EngineConfig& cfg, const PolicyParams& policy) {
    const UserId requester = query.requester;
    const Keyword& keyword = query.keyword;
    if (!corpus.has_user(requester)) {
        throw ScenarioError("query requester " + std::to_string(requester.value) + " is not a user");
    }
    if (!corpus.has_keyword(keyword)) {
        throw ScenarioError("query keyword '" + keyword.token() + "' is not in the keyword universe");
    }

    QueryOutcome out;
    for (const Document* doc : matching_docs(corpus, requester, keyword)) out.own_results.push_back(doc->id);

    std::vector<UserId> peers;
    for (UserId u : corpus.users()) {
        if (u != requester) peers.push_back(u);
    }
    out.examination_order = order_owners(store, requester, keyword, peers);
    const std::size_t visits = std::min(cfg.examine_budget, out.examination_order.size());
    out.examined.assign(out.examination_order.begin(), out.examination_order.begin() + visits);

    auto record = [&](const KeyedEvidence& ke, Heuristic source) {
        const CertaintyFactor before = store.get(ke.key);
        const CertaintyFactor after = apply_evidence(store, ke.key, ke.evidence, policy);
        out.evidence_log.push_back({ke.key, ke.evidence, before, after, source});
    };

    std::optional<std::size_t> first_relevant;
    for (std::size_t i = 0; i < visits; ++i) {
        const UserId owner = out.examined[i];
        const auto docs = matching_docs(corpus, owner, keyword);
        auto& ids = out.per_owner_results[owner];
        for (const Document* doc : docs) ids.push_back(doc->id);

        if (docs.empty()) {
            record(empty_result_evidence(requester, owner, keyword, cfg), Heuristic::EmptyResult);
            continue;
        }

        record(requester_evidence(requester, owner, keyword, docs, cfg), Heuristic::RequesterRead);
        record(owner_evidence(requester, owner, keyword, cfg), Heuristic::OwnerMirror);

        const auto relevant = static_cast<std::size_t>(std::count_if(docs.begin(), docs.end(), [&](const Document* d) {
            return d->relevance_to(requester) >= cfg.relevance_threshold;
        }));
        if (!out.precision_at_1) {
            out.precision_at_1 = static_cast<double>(relevant) / static_cast<double>(docs.size());
        }
        if (!first_relevant && relevant > 0) first_relevant = i + 1;
    }
    out.search_length = first_relevant.value_or(visits);
    return out;
}

} // namespace minds
