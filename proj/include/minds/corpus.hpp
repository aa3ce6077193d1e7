#pragma once

// Users, their documents, ground-truth relevance, and the lifecycle events
// that move documents around (add, delete, copy, direct and indirect
// relocation).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "minds/errors.hpp"
#include "minds/metaknowledge.hpp"

namespace minds {

struct DocId {
    std::uint64_t value = 0;

    friend constexpr auto operator<=>(DocId, DocId) = default;
};

struct Document {
    DocId id;
    UserId owner;
    std::set<Keyword> keywords;
    // Ground truth, fixed at creation: how relevant the document is to each user.
    std::map<UserId, double> relevance;
    // Set on copies: the document this one was copied from.
    std::optional<DocId> copied_from;

    bool has_keyword(const Keyword& k) const { return keywords.contains(k); }

    double relevance_to(UserId u) const {
        const auto it = relevance.find(u);
        if (it == relevance.end()) {
            throw ContractError("document " + std::to_string(id.value) + " has no relevance for user " +
                                std::to_string(u.value));
        }
        return it->second;
    }

    friend bool operator==(const Document&, const Document&) = default;
};

struct AddDocument {
    Document document;
};
struct DeleteDocument {
    DocId doc;
};
struct CopyDocument {
    DocId doc;
    UserId new_owner;
};
struct RelocateDirect {
    DocId doc;
    UserId new_owner;
};
// Copy now, delete the original `delete_delay` queries later.
struct RelocateIndirect {
    DocId doc;
    UserId new_owner;
    std::size_t delete_delay = 0;
};

using CorpusAction = std::variant<AddDocument, DeleteDocument, CopyDocument, RelocateDirect, RelocateIndirect>;

struct CorpusEvent {
    // Query index before which the event fires.
    std::size_t fire_at = 0;
    CorpusAction action;
};

// Replaces every RelocateIndirect by a Copy at fire_at and a Delete of the
// original at fire_at + delete_delay, then orders by fire_at. Events sharing a
// fire_at keep their relative order.
inline std::vector<CorpusEvent> expand_events(const std::vector<CorpusEvent>& events) {
    std::vector<CorpusEvent> out;
    out.reserve(events.size());
    for (const auto& e : events) {
        if (const auto* ind = std::get_if<RelocateIndirect>(&e.action)) {
            out.push_back({e.fire_at, CopyDocument{ind->doc, ind->new_owner}});
            out.push_back({e.fire_at + ind->delete_delay, DeleteDocument{ind->doc}});
        } else {
            out.push_back(e);
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CorpusEvent& a, const CorpusEvent& b) { return a.fire_at < b.fire_at; });
    return out;
}

class Corpus {
public:
    Corpus() = default;
    Corpus(std::set<UserId> users, std::set<Keyword> keywords)
        : users_(std::move(users)), keywords_(std::move(keywords)) {}

    const std::set<UserId>& users() const { return users_; }
    const std::set<Keyword>& keywords() const { return keywords_; }
    const std::map<DocId, Document>& documents() const { return documents_; }
    DocId next_doc_id() const { return next_id_; }

    bool has_user(UserId u) const { return users_.contains(u); }
    bool has_keyword(const Keyword& k) const { return keywords_.contains(k); }

    const Document* find(DocId id) const {
        const auto it = documents_.find(id);
        return it == documents_.end() ? nullptr : &it->second;
    }

    void add(Document doc) {
        check_document(doc);
        if (documents_.contains(doc.id)) {
            throw ScenarioError("duplicate document id " + std::to_string(doc.id.value));
        }
        next_id_ = std::max(next_id_, DocId{doc.id.value + 1});
        const DocId id = doc.id;
        documents_.emplace(id, std::move(doc));
    }

    // Applies one primitive event. Returns the id of the document the event
    // created, if any. RelocateIndirect must be expanded first.
    std::optional<DocId> apply(const CorpusAction& action) {
        return std::visit([this](const auto& a) -> std::optional<DocId> { return apply_one(a); }, action);
    }

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    void check_owner(UserId u, std::string_view what) const {
        if (!has_user(u)) {
            throw ScenarioError(std::string(what) + ": unknown user " + std::to_string(u.value));
        }
    }

    void check_document(const Document& doc) const {
        const std::string where = "document " + std::to_string(doc.id.value);
        check_owner(doc.owner, where + " owner");
        if (doc.keywords.empty()) throw ScenarioError(where + ": keyword set is empty");
        for (const auto& k : doc.keywords) {
            if (!has_keyword(k)) throw ScenarioError(where + ": unknown keyword '" + k.token() + "'");
        }
        for (const auto& [u, r] : doc.relevance) {
            check_owner(u, where + " relevance");
            if (!(r >= 0.0 && r <= 1.0)) {
                throw ScenarioError(where + ": relevance for user " + std::to_string(u.value) + " outside [0,1]");
            }
        }
        for (UserId u : users_) {
            if (!doc.relevance.contains(u)) {
                throw ScenarioError(where + ": missing relevance for user " + std::to_string(u.value));
            }
        }
    }

    Document& existing(DocId id) {
        const auto it = documents_.find(id);
        if (it == documents_.end()) {
            throw EventReferenceError("event references missing document " + std::to_string(id.value));
        }
        return it->second;
    }

    std::optional<DocId> apply_one(const AddDocument& a) {
        add(a.document);
        return a.document.id;
    }

    std::optional<DocId> apply_one(const DeleteDocument& d) {
        existing(d.doc);
        documents_.erase(d.doc);
        return std::nullopt;
    }

    std::optional<DocId> apply_one(const CopyDocument& c) {
        check_owner(c.new_owner, "copy target");
        Document copy = existing(c.doc);
        copy.copied_from = copy.id;
        copy.id = next_id_;
        copy.owner = c.new_owner;
        const DocId id = copy.id;
        add(std::move(copy));
        return id;
    }

    std::optional<DocId> apply_one(const RelocateDirect& r) {
        check_owner(r.new_owner, "relocation target");
        existing(r.doc).owner = r.new_owner;
        return std::nullopt;
    }

    std::optional<DocId> apply_one(const RelocateIndirect&) {
        throw ContractError("RelocateIndirect must be expanded before it is applied");
    }

    std::set<UserId> users_;
    std::set<Keyword> keywords_;
    std::map<DocId, Document> documents_;
    DocId next_id_{0};
};

inline std::optional<DocId> apply_event(Corpus& corpus, const CorpusEvent& event) {
    return corpus.apply(event.action);
}

// Documents owned by `owner` that carry `keyword`, in id order.
inline std::vector<const Document*> matching_docs(const Corpus& corpus, UserId owner, const Keyword& keyword) {
    if (!corpus.has_user(owner)) throw ScenarioError("matching_docs: unknown user " + std::to_string(owner.value));
    std::vector<const Document*> out;
    for (const auto& [id, doc] : corpus.documents()) {
        if (doc.owner == owner && doc.has_keyword(keyword)) out.push_back(&doc);
    }
    return out;
}

// The CFs a perfectly informed user would hold: for each (o, w, k) the best
// relevance to o among w's k-documents, 0 when w has none. The returned store
// defaults to 0 and holds an entry for every key with at least one document.
inline MetaknowledgeStore ideal_metaknowledge(const Corpus& corpus) {
    std::map<MetaKey, double> best;
    for (const auto& [id, doc] : corpus.documents()) {
        for (UserId o : corpus.users()) {
            if (o == doc.owner) continue;
            const double r = doc.relevance_to(o);
            for (const auto& k : doc.keywords) {
                auto [it, inserted] = best.try_emplace(MetaKey(o, doc.owner, k), r);
                if (!inserted) it->second = std::max(it->second, r);
            }
        }
    }
    MetaknowledgeStore ideal(CertaintyFactor(0.0));
    for (const auto& [key, r] : best) ideal.set(key, CertaintyFactor(r));
    return ideal;
}

} // namespace minds
