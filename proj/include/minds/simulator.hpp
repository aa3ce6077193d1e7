#pragma once

// Seeded end-to-end runs: build the corpus, replay a query workload through
// the engine while lifecycle events fire, and sample the distance between the
// learned and the ideal metaknowledge every `tick_every` queries.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "minds/calculus.hpp"
#include "minds/corpus.hpp"
#include "minds/engine.hpp"
#include "minds/errors.hpp"
#include "minds/metaknowledge.hpp"
#include "minds/random.hpp"

namespace minds {

// Per-user categorical weights over keywords. Users without an entry use
// uniform weights.
using InterestWeights = std::map<UserId, std::map<Keyword, double>>;

struct GeneratorSpec {
    std::size_t docs_per_user = 0;
    std::size_t keywords_per_doc = 1;
    InterestWeights keyword_weights;
};

// All documents an owner holds on a keyword, resolved against the initial corpus.
struct DocSelector {
    UserId owner;
    Keyword keyword;
};

struct EventSpec {
    CorpusEvent event;
    // When set, the event is cloned once per selected document with the doc
    // id substituted. Not valid on AddDocument.
    std::optional<DocSelector> selector;
};

struct Workload {
    std::size_t queries = 0;
    InterestWeights interests;
};

struct Scenario {
    std::set<UserId> users;
    std::set<Keyword> keywords;
    std::variant<std::vector<Document>, GeneratorSpec> corpus;
    std::vector<EventSpec> events;
    Workload workload;
    std::uint64_t seed = 0;
    PolicyParams policy;
    EngineConfig engine;
    std::size_t tick_every = 10;
};

namespace detail {

inline std::string user_field(std::string_view prefix, UserId u) {
    return std::string(prefix) + "." + std::to_string(u.value);
}

inline void check_weights(const Scenario& s, const InterestWeights& weights, std::string_view field) {
    for (const auto& [user, table] : weights) {
        const std::string where = user_field(field, user);
        if (!s.users.contains(user)) throw ScenarioError(where + ": unknown user");
        bool any_positive = false;
        for (const auto& [k, w] : table) {
            if (!s.keywords.contains(k)) throw ScenarioError(where + "." + k.token() + ": unknown keyword");
            if (!(w >= 0.0)) throw ScenarioError(where + "." + k.token() + ": weight must be nonnegative");
            any_positive = any_positive || w > 0.0;
        }
        if (!any_positive) throw ScenarioError(where + ": needs at least one positive weight");
    }
}

// Weights aligned with the scenario's keyword order.
inline std::vector<double> weight_row(const std::set<Keyword>& keywords, const InterestWeights& weights, UserId u) {
    const auto it = weights.find(u);
    std::vector<double> row;
    row.reserve(keywords.size());
    for (const auto& k : keywords) {
        if (it == weights.end()) {
            row.push_back(1.0);
        } else {
            const auto w = it->second.find(k);
            row.push_back(w == it->second.end() ? 0.0 : w->second);
        }
    }
    return row;
}

} // namespace detail

// Rejects anything that would fail mid-run for a reason knowable up front.
inline void validate_scenario(const Scenario& s) {
    if (s.users.size() < 2) throw ScenarioError("users: need at least two users");
    if (s.keywords.empty()) throw ScenarioError("keywords: need at least one keyword");
    if (s.workload.queries < 1) throw ScenarioError("workload.queries: must be at least 1");
    if (s.tick_every < 1) throw ScenarioError("tick_every: must be at least 1");
    try {
        s.engine.validate();
    } catch (const RangeError& e) {
        throw ScenarioError(std::string("engine: ") + e.what());
    }
    detail::check_weights(s, s.workload.interests, "workload.interests");

    if (const auto* gen = std::get_if<GeneratorSpec>(&s.corpus)) {
        detail::check_weights(s, gen->keyword_weights, "corpus.generate.keyword_weights");
        if (gen->docs_per_user > 0) {
            if (gen->keywords_per_doc < 1) {
                throw ScenarioError("corpus.generate.keywords_per_doc: must be at least 1");
            }
            for (UserId u : s.users) {
                const auto row = detail::weight_row(s.keywords, gen->keyword_weights, u);
                const auto positive = static_cast<std::size_t>(std::count_if(row.begin(), row.end(),
                                                                             [](double w) { return w > 0.0; }));
                if (positive < gen->keywords_per_doc) {
                    throw ScenarioError(detail::user_field("corpus.generate.keyword_weights", u) +
                                        ": fewer positive weights than keywords_per_doc");
                }
            }
        }
    }

    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const auto& spec = s.events[i];
        const std::string where = "events." + std::to_string(i);
        if (spec.event.fire_at < 1) throw ScenarioError(where + ".at: must be at least 1");
        if (spec.selector) {
            if (std::holds_alternative<AddDocument>(spec.event.action)) {
                throw ScenarioError(where + ": a document selector cannot be used with add");
            }
            if (!s.users.contains(spec.selector->owner)) throw ScenarioError(where + ".match.owner: unknown user");
            if (!s.keywords.contains(spec.selector->keyword)) {
                throw ScenarioError(where + ".match.keyword: unknown keyword '" + spec.selector->keyword.token() + "'");
            }
        }
        auto check_target = [&](UserId u) {
            if (!s.users.contains(u)) throw ScenarioError(where + ".to: unknown user " + std::to_string(u.value));
        };
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (requires { a.new_owner; }) check_target(a.new_owner);
                if constexpr (std::is_same_v<T, AddDocument>) {
                    if (a.document.keywords.empty()) throw ScenarioError(where + ".document: keyword set is empty");
                }
            },
            spec.event.action);
    }
}

inline Corpus generate_corpus(const GeneratorSpec& spec, const std::set<UserId>& users,
                              const std::set<Keyword>& keywords, std::uint64_t stream_seed) {
    Corpus corpus(users, keywords);
    Xoshiro256StarStar rng(stream_seed);
    const std::vector<Keyword> universe(keywords.begin(), keywords.end());
    std::uint64_t next_id = 0;
    for (UserId owner : users) {
        const auto base = detail::weight_row(keywords, spec.keyword_weights, owner);
        for (std::size_t d = 0; d < spec.docs_per_user; ++d) {
            Document doc;
            doc.id = DocId{next_id++};
            doc.owner = owner;
            auto weights = base;
            for (std::size_t j = 0; j < spec.keywords_per_doc; ++j) {
                const std::size_t pick = draw_categorical(rng, weights);
                doc.keywords.insert(universe[pick]);
                weights[pick] = 0.0;
            }
            for (UserId u : users) doc.relevance[u] = rng.uniform01();
            corpus.add(std::move(doc));
        }
    }
    return corpus;
}

inline Corpus initial_corpus(const Scenario& s) {
    if (const auto* gen = std::get_if<GeneratorSpec>(&s.corpus)) {
        return generate_corpus(*gen, s.users, s.keywords, derive_seed(s.seed, StreamTag::Corpus));
    }
    Corpus corpus(s.users, s.keywords);
    for (const auto& doc : std::get<std::vector<Document>>(s.corpus)) corpus.add(doc);
    return corpus;
}

// Substitutes selectors against `corpus` and expands indirect relocations.
inline std::vector<CorpusEvent> resolve_events(const std::vector<EventSpec>& specs, const Corpus& corpus) {
    std::vector<CorpusEvent> concrete;
    for (const auto& spec : specs) {
        if (!spec.selector) {
            concrete.push_back(spec.event);
            continue;
        }
        for (const Document* doc : matching_docs(corpus, spec.selector->owner, spec.selector->keyword)) {
            CorpusEvent e = spec.event;
            std::visit(
                [&](auto& a) {
                    if constexpr (requires { a.doc; }) a.doc = doc->id;
                },
                e.action);
            concrete.push_back(std::move(e));
        }
    }
    return expand_events(concrete);
}

// Draws query i from the workload: requester uniform over users, keyword from
// the requester's interest weights. Each index has its own substream, so a
// draw depends only on (seed, index).
class QuerySampler {
public:
    QuerySampler(const std::set<UserId>& users, const std::set<Keyword>& keywords, const InterestWeights& interests,
                 std::uint64_t seed)
        : users_(users.begin(), users.end()), keywords_(keywords.begin(), keywords.end()), seed_(seed) {
        for (UserId u : users_) weights_.push_back(detail::weight_row(keywords, interests, u));
    }

    explicit QuerySampler(const Scenario& s) : QuerySampler(s.users, s.keywords, s.workload.interests, s.seed) {}

    Query draw(std::size_t index) const {
        Xoshiro256StarStar rng(derive_seed(seed_, StreamTag::Workload, index));
        const auto u = static_cast<std::size_t>(rng.below(users_.size()));
        const std::size_t k = draw_categorical(rng, weights_[u]);
        return Query{users_[u], keywords_[k], index};
    }

private:
    std::vector<UserId> users_;
    std::vector<Keyword> keywords_;
    std::vector<std::vector<double>> weights_;
    std::uint64_t seed_;
};

inline Query draw_query(const QuerySampler& sampler, std::size_t index) { return sampler.draw(index); }

struct CurveRow {
    std::size_t query_index = 0;
    double distance = 0.0;
    std::optional<double> precision_window;
    std::optional<double> mean_search_length_window;

    friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

struct LearningCurve {
    std::vector<CurveRow> rows;

    friend bool operator==(const LearningCurve&, const LearningCurve&) = default;
};

struct QueryStats {
    std::size_t index = 0;
    UserId requester;
    std::size_t search_length = 0;
    std::optional<double> precision_at_1;
};

struct RunSummary {
    std::size_t queries = 0;
    std::size_t events_fired = 0;
    double initial_distance = 0.0;
    double final_distance = 0.0;
};

struct RunResult {
    LearningCurve curve;
    MetaknowledgeStore final_store;
    Corpus final_corpus;
    RunSummary summary;
    std::vector<QueryStats> per_query;
};

// Mean precision over queries in [first, last) that produced one; empty if none did.
inline std::optional<double> mean_precision(const std::vector<QueryStats>& stats, std::size_t first,
                                            std::size_t last) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = first; i < last && i < stats.size(); ++i) {
        if (stats[i].precision_at_1) {
            sum += *stats[i].precision_at_1;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

inline std::optional<double> mean_search_length(const std::vector<QueryStats>& stats, std::size_t first,
                                                std::size_t last) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = first; i < last && i < stats.size(); ++i) {
        sum += static_cast<double>(stats[i].search_length);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

inline RunResult run(const Scenario& scenario) {
    validate_scenario(scenario);

    RunResult result;
    Corpus corpus = initial_corpus(scenario);
    const std::vector<CorpusEvent> events = resolve_events(scenario.events, corpus);
    const std::vector<MetaKey> domain = peer_domain(scenario.users, scenario.keywords);
    const QuerySampler sampler(scenario);
    MetaknowledgeStore store;

    const std::size_t total = scenario.workload.queries;
    result.per_query.reserve(total);

    auto sample = [&](std::size_t index) {
        CurveRow row;
        row.query_index = index;
        row.distance = distance(store, ideal_metaknowledge(corpus), domain);
        const std::size_t first = index > scenario.tick_every ? index - scenario.tick_every : 0;
        row.precision_window = mean_precision(result.per_query, first, index);
        row.mean_search_length_window = mean_search_length(result.per_query, first, index);
        result.curve.rows.push_back(row);
    };

    sample(0);
    std::size_t next_event = 0;
    for (std::size_t i = 1; i <= total; ++i) {
        for (; next_event < events.size() && events[next_event].fire_at <= i; ++next_event) {
            apply_event(corpus, events[next_event]);
            ++result.summary.events_fired;
        }
        const Query query = sampler.draw(i);
        const QueryOutcome outcome = execute_query(query, corpus, store, scenario.engine, scenario.policy);
        result.per_query.push_back({i, query.requester, outcome.search_length, outcome.precision_at_1});
        if (i % scenario.tick_every == 0 || i == total) sample(i);
    }

    result.summary.queries = total;
    result.summary.initial_distance = result.curve.rows.front().distance;
    result.summary.final_distance = result.curve.rows.back().distance;
    result.final_store = std::move(store);
    result.final_corpus = std::move(corpus);
    return result;
}

} // namespace minds
