#pragma once

// Scenario files (JSON).
//
//   {
//     "users": 8,                        // or an explicit id list [0, 3, 7]
//     "keywords": ["compilers", ...],
//     "corpus": {"generate": {"docs_per_user": 5, "keywords_per_doc": 2,
//                             "keyword_weights": {"0": {"compilers": 2}}}},
//            // or {"documents": [{"id": 0, "owner": 0, "keywords": [...],
//            //                    "relevance": {"0": 0.4, "1": 0.9}}]}
//     "events": [{"at": 500, "type": "relocate_direct",
//                 "match": {"owner": 0, "keyword": "compilers"}, "to": 1}],
//     "workload": {"queries": 1000, "interests": {"0": {"compilers": 3}}},
//     "seed": 42,
//     "policy": {"rate_up": 0.3, "rate_down": 0.3},
//     "engine": {"examine_budget": 3, "relevance_threshold": 0.5,
//                "q_requester": 1.0, "q_owner": 0.1, "q_empty": 0.5},
//     "tick_every": 10
//   }
//
// Event types: add (with "document"), delete, copy, relocate_direct,
// relocate_indirect (with "delay"). Non-add events name their document by
// "doc": id or by "match": {"owner", "keyword"}.
//
// Every error names the offending field by its dotted path.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"

#include "minds/corpus.hpp"
#include "minds/errors.hpp"
#include "minds/simulator.hpp"

namespace minds {

namespace detail {

using nlohmann::json;

inline std::string join(std::string_view path, std::string_view key) {
    return path.empty() ? std::string(key) : std::string(path) + "." + std::string(key);
}

inline void only_keys(const json& obj, std::string_view path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw ScenarioError(join(path, key) + ": unknown field");
    }
}

inline const json& require(const json& obj, std::string_view path, const char* key) {
    if (!obj.contains(key)) throw ScenarioError(join(path, key) + ": required field missing");
    return obj.at(key);
}

inline const json& object_at(const json& v, std::string_view path) {
    if (!v.is_object()) throw ScenarioError(std::string(path) + ": expected an object");
    return v;
}

inline double real_at(const json& v, std::string_view path) {
    if (!v.is_number()) throw ScenarioError(std::string(path) + ": expected a number");
    return v.get<double>();
}

inline double unit_at(const json& v, std::string_view path) {
    const double r = real_at(v, path);
    if (!(r >= 0.0 && r <= 1.0)) throw ScenarioError(std::string(path) + ": must lie in [0,1]");
    return r;
}

inline std::uint64_t count_at(const json& v, std::string_view path) {
    const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    if (!ok) throw ScenarioError(std::string(path) + ": expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline UserId user_at(const json& v, std::string_view path) {
    const auto id = count_at(v, path);
    if (id > UINT32_MAX) throw ScenarioError(std::string(path) + ": user id out of range");
    return UserId{static_cast<std::uint32_t>(id)};
}

// User ids used as JSON object keys.
inline UserId user_key(const std::string& key, std::string_view path) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos || key.size() > 10) {
        throw ScenarioError(join(path, key) + ": object key must be a user id");
    }
    const auto id = std::stoull(key);
    if (id > UINT32_MAX) throw ScenarioError(join(path, key) + ": user id out of range");
    return UserId{static_cast<std::uint32_t>(id)};
}

inline Keyword keyword_at(const json& v, std::string_view path) {
    if (!v.is_string()) throw ScenarioError(std::string(path) + ": expected a keyword string");
    try {
        return Keyword(v.get<std::string>());
    } catch (const ScenarioError& e) {
        throw ScenarioError(std::string(path) + ": " + e.what());
    }
}

inline InterestWeights weights_at(const json& v, std::string_view path) {
    InterestWeights out;
    for (const auto& [ukey, table] : object_at(v, path).items()) {
        const std::string upath = join(path, ukey);
        const UserId u = user_key(ukey, path);
        auto& row = out[u];
        for (const auto& [kkey, w] : object_at(table, upath).items()) {
            const std::string kpath = join(upath, kkey);
            row.insert_or_assign(keyword_at(json(kkey), kpath), real_at(w, kpath));
        }
    }
    return out;
}

inline Document document_at(const json& v, std::string_view path) {
    object_at(v, path);
    only_keys(v, path, {"id", "owner", "keywords", "relevance"});
    Document doc;
    doc.id = DocId{count_at(require(v, path, "id"), join(path, "id"))};
    doc.owner = user_at(require(v, path, "owner"), join(path, "owner"));
    const auto& kws = require(v, path, "keywords");
    const std::string kpath = join(path, "keywords");
    if (!kws.is_array()) throw ScenarioError(kpath + ": expected an array");
    for (std::size_t i = 0; i < kws.size(); ++i) doc.keywords.insert(keyword_at(kws[i], join(kpath, std::to_string(i))));
    const std::string rpath = join(path, "relevance");
    for (const auto& [ukey, r] : object_at(require(v, path, "relevance"), rpath).items()) {
        doc.relevance[user_key(ukey, rpath)] = unit_at(r, join(rpath, ukey));
    }
    return doc;
}

inline EventSpec event_at(const json& v, std::string_view path) {
    object_at(v, path);
    only_keys(v, path, {"at", "type", "doc", "match", "to", "delay", "document"});
    EventSpec spec;
    spec.event.fire_at = count_at(require(v, path, "at"), join(path, "at"));
    const auto& type_v = require(v, path, "type");
    if (!type_v.is_string()) throw ScenarioError(join(path, "type") + ": expected a string");
    const std::string type = type_v.get<std::string>();

    if (type == "add") {
        spec.event.action = AddDocument{document_at(require(v, path, "document"), join(path, "document"))};
        return spec;
    }

    DocId doc{0};
    if (v.contains("doc") == v.contains("match")) {
        throw ScenarioError(std::string(path) + ": give exactly one of 'doc' or 'match'");
    }
    if (v.contains("doc")) {
        doc = DocId{count_at(v.at("doc"), join(path, "doc"))};
    } else {
        const std::string mpath = join(path, "match");
        const auto& m = object_at(v.at("match"), mpath);
        only_keys(m, mpath, {"owner", "keyword"});
        spec.selector = DocSelector{user_at(require(m, mpath, "owner"), join(mpath, "owner")),
                                    keyword_at(require(m, mpath, "keyword"), join(mpath, "keyword"))};
    }
    auto target = [&] { return user_at(require(v, path, "to"), join(path, "to")); };

    if (type == "delete") {
        spec.event.action = DeleteDocument{doc};
    } else if (type == "copy") {
        spec.event.action = CopyDocument{doc, target()};
    } else if (type == "relocate_direct") {
        spec.event.action = RelocateDirect{doc, target()};
    } else if (type == "relocate_indirect") {
        spec.event.action =
            RelocateIndirect{doc, target(), static_cast<std::size_t>(count_at(require(v, path, "delay"), join(path, "delay")))};
    } else {
        throw ScenarioError(join(path, "type") + ": unknown event type '" + type + "'");
    }
    return spec;
}

} // namespace detail

inline Scenario parse_scenario(const nlohmann::json& root) {
    using namespace detail;
    object_at(root, "scenario");
    only_keys(root, "", {"users", "keywords", "corpus", "events", "workload", "seed", "policy", "engine", "tick_every"});

    Scenario s;

    const auto& users = require(root, "", "users");
    if (users.is_number_integer()) {
        const auto n = count_at(users, "users");
        if (n > UINT32_MAX) throw ScenarioError("users: too many users");
        for (std::uint32_t i = 0; i < n; ++i) s.users.insert(UserId{i});
    } else if (users.is_array()) {
        for (std::size_t i = 0; i < users.size(); ++i) {
            const std::string path = "users." + std::to_string(i);
            if (!s.users.insert(user_at(users[i], path)).second) throw ScenarioError(path + ": duplicate user id");
        }
    } else {
        throw ScenarioError("users: expected a count or an array of ids");
    }

    const auto& kws = require(root, "", "keywords");
    if (!kws.is_array()) throw ScenarioError("keywords: expected an array");
    for (std::size_t i = 0; i < kws.size(); ++i) {
        const std::string path = "keywords." + std::to_string(i);
        if (!s.keywords.insert(keyword_at(kws[i], path)).second) throw ScenarioError(path + ": duplicate keyword");
    }

    const auto& corpus = object_at(require(root, "", "corpus"), "corpus");
    only_keys(corpus, "corpus", {"generate", "documents"});
    if (corpus.contains("generate") == corpus.contains("documents")) {
        throw ScenarioError("corpus: give exactly one of 'generate' or 'documents'");
    }
    if (corpus.contains("generate")) {
        const auto& g = object_at(corpus.at("generate"), "corpus.generate");
        only_keys(g, "corpus.generate", {"docs_per_user", "keywords_per_doc", "keyword_weights"});
        GeneratorSpec gen;
        gen.docs_per_user = count_at(require(g, "corpus.generate", "docs_per_user"), "corpus.generate.docs_per_user");
        if (g.contains("keywords_per_doc")) {
            gen.keywords_per_doc = count_at(g.at("keywords_per_doc"), "corpus.generate.keywords_per_doc");
        }
        if (g.contains("keyword_weights")) {
            gen.keyword_weights = weights_at(g.at("keyword_weights"), "corpus.generate.keyword_weights");
        }
        s.corpus = std::move(gen);
    } else {
        const auto& docs = corpus.at("documents");
        if (!docs.is_array()) throw ScenarioError("corpus.documents: expected an array");
        std::vector<Document> list;
        Corpus check(s.users, s.keywords);
        for (std::size_t i = 0; i < docs.size(); ++i) {
            const std::string path = "corpus.documents." + std::to_string(i);
            Document doc = document_at(docs[i], path);
            try {
                check.add(doc);
            } catch (const ScenarioError& e) {
                throw ScenarioError(path + ": " + e.what());
            }
            list.push_back(std::move(doc));
        }
        s.corpus = std::move(list);
    }

    if (root.contains("events")) {
        const auto& events = root.at("events");
        if (!events.is_array()) throw ScenarioError("events: expected an array");
        for (std::size_t i = 0; i < events.size(); ++i) {
            s.events.push_back(event_at(events[i], "events." + std::to_string(i)));
        }
    }

    const auto& workload = object_at(require(root, "", "workload"), "workload");
    only_keys(workload, "workload", {"queries", "interests"});
    s.workload.queries = count_at(require(workload, "workload", "queries"), "workload.queries");
    if (workload.contains("interests")) s.workload.interests = weights_at(workload.at("interests"), "workload.interests");

    if (root.contains("seed")) s.seed = count_at(root.at("seed"), "seed");

    if (root.contains("policy")) {
        const auto& p = object_at(root.at("policy"), "policy");
        only_keys(p, "policy", {"rate_up", "rate_down"});
        if (p.contains("rate_up")) s.policy.rate_up = unit_at(p.at("rate_up"), "policy.rate_up");
        if (p.contains("rate_down")) s.policy.rate_down = unit_at(p.at("rate_down"), "policy.rate_down");
    }

    if (root.contains("engine")) {
        const auto& e = object_at(root.at("engine"), "engine");
        only_keys(e, "engine", {"examine_budget", "relevance_threshold", "q_requester", "q_owner", "q_empty"});
        if (e.contains("examine_budget")) {
            s.engine.examine_budget = count_at(e.at("examine_budget"), "engine.examine_budget");
            if (s.engine.examine_budget == 0) throw ScenarioError("engine.examine_budget: must be positive");
        }
        if (e.contains("relevance_threshold")) {
            s.engine.relevance_threshold = unit_at(e.at("relevance_threshold"), "engine.relevance_threshold");
        }
        if (e.contains("q_requester")) s.engine.q_requester = unit_at(e.at("q_requester"), "engine.q_requester");
        if (e.contains("q_owner")) s.engine.q_owner = unit_at(e.at("q_owner"), "engine.q_owner");
        if (e.contains("q_empty")) s.engine.q_empty = unit_at(e.at("q_empty"), "engine.q_empty");
    }

    if (root.contains("tick_every")) s.tick_every = count_at(root.at("tick_every"), "tick_every");

    validate_scenario(s);
    return s;
}

inline Scenario parse_scenario(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(std::string("scenario: malformed JSON: ") + e.what());
    }
    return parse_scenario(root);
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open '" + path.string() + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(std::string_view(text));
}

} // namespace minds
