#include "minds/scenario_io.hpp"

#include <gtest/gtest.h>

#include <string>

namespace minds {
namespace {

using nlohmann::json;

json base() {
    return json::parse(R"({
      "users": 3,
      "keywords": ["Compilers", "databases"],
      "corpus": {"generate": {"docs_per_user": 2}},
      "workload": {"queries": 50}
    })");
}

// Message of the ScenarioError thrown by parsing `j`, or "" if none.
std::string error_of(const json& j) {
    try {
        parse_scenario(j);
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return "";
}

TEST(ParseScenario, DefaultsApply) {
    const Scenario s = parse_scenario(base());
    EXPECT_EQ(s.users.size(), 3u);
    EXPECT_TRUE(s.keywords.contains(Keyword("compilers")));
    EXPECT_EQ(s.tick_every, 10u);
    EXPECT_EQ(s.policy.rate_up, 0.3);
    EXPECT_EQ(s.policy.rate_down, 0.3);
    EXPECT_EQ(s.engine.examine_budget, 3u);
    EXPECT_EQ(s.engine.q_empty, 0.5);
    EXPECT_EQ(std::get<GeneratorSpec>(s.corpus).keywords_per_doc, 1u);
}

TEST(ParseScenario, ExplicitUsersAndDocuments) {
    auto j = base();
    j["users"] = {2, 5};
    j["corpus"] = json::parse(R"({"documents": [
        {"id": 7, "owner": 5, "keywords": ["databases"], "relevance": {"2": 0.25, "5": 1}}]})");
    const Scenario s = parse_scenario(j);
    EXPECT_EQ(s.users, (std::set<UserId>{UserId{2}, UserId{5}}));
    const auto& docs = std::get<std::vector<Document>>(s.corpus);
    ASSERT_EQ(docs.size(), 1u);
    EXPECT_EQ(docs[0].id, DocId{7});
    EXPECT_EQ(docs[0].relevance_to(UserId{2}), 0.25);
}

TEST(ParseScenario, EventForms) {
    auto j = base();
    j["events"] = json::parse(R"([
        {"at": 10, "type": "delete", "doc": 1},
        {"at": 20, "type": "copy", "doc": 2, "to": 0},
        {"at": 30, "type": "relocate_direct", "match": {"owner": 1, "keyword": "databases"}, "to": 2},
        {"at": 40, "type": "relocate_indirect", "doc": 3, "to": 1, "delay": 5},
        {"at": 45, "type": "add", "document":
            {"id": 100, "owner": 0, "keywords": ["compilers"], "relevance": {"0": 0.1, "1": 0.2, "2": 0.3}}}
    ])");
    const Scenario s = parse_scenario(j);
    ASSERT_EQ(s.events.size(), 5u);
    EXPECT_TRUE(std::holds_alternative<DeleteDocument>(s.events[0].event.action));
    EXPECT_TRUE(std::holds_alternative<CopyDocument>(s.events[1].event.action));
    ASSERT_TRUE(s.events[2].selector);
    EXPECT_EQ(s.events[2].selector->owner, UserId{1});
    EXPECT_EQ(std::get<RelocateIndirect>(s.events[3].event.action).delete_delay, 5u);
    EXPECT_EQ(std::get<AddDocument>(s.events[4].event.action).document.id, DocId{100});
}

TEST(ParseScenario, ErrorsNameTheField) {
    struct Case {
        const char* pointer;
        json value;
        const char* expected_prefix;
    };
    const Case cases[] = {
        {"/workload/interests", json::parse(R"({"0": {"astronomy": 1}})"), "workload.interests.0.astronomy"},
        {"/workload/queries", 0, "workload.queries"},
        {"/workload/queries", -3, "workload.queries"},
        {"/policy", json::parse(R"({"rate_up": 1.5})"), "policy.rate_up"},
        {"/engine", json::parse(R"({"examine_budget": 0})"), "engine.examine_budget"},
        {"/engine", json::parse(R"({"q_owner": "high"})"), "engine.q_owner"},
        {"/tick_every", 0, "tick_every"},
        {"/colour", "blue", "colour"},
        {"/corpus/generate/docs", 1, "corpus.generate.docs"},
        {"/corpus/documents", json::array(), "corpus"},
        {"/keywords", json::parse(R"(["a", "A"])"), "keywords.1"},
        {"/keywords", json::parse(R"(["a b"])"), "keywords.0"},
        {"/users", json::parse(R"([0, 0])"), "users.1"},
        {"/events", json::parse(R"([{"at": 1, "type": "explode", "doc": 0}])"), "events.0.type"},
        {"/events", json::parse(R"([{"at": 1, "type": "copy", "doc": 0}])"), "events.0.to"},
        {"/events", json::parse(R"([{"at": 1, "type": "delete"}])"), "events.0"},
        {"/events", json::parse(R"([{"at": 1, "type": "relocate_indirect", "doc": 0, "to": 1}])"), "events.0.delay"},
    };
    for (const auto& c : cases) {
        auto j = base();
        j[json::json_pointer(c.pointer)] = c.value;
        const std::string msg = error_of(j);
        EXPECT_EQ(msg.rfind(c.expected_prefix, 0), 0u) << c.pointer << " gave '" << msg << "'";
    }
}

TEST(ParseScenario, DocumentErrorsCarryTheirIndex) {
    auto j = base();
    j["corpus"] = json::parse(R"({"documents": [
        {"id": 0, "owner": 0, "keywords": ["compilers"], "relevance": {"0": 1, "1": 1, "2": 1}},
        {"id": 1, "owner": 9, "keywords": ["compilers"], "relevance": {"0": 1, "1": 1, "2": 1}}]})");
    EXPECT_EQ(error_of(j).rfind("corpus.documents.1", 0), 0u) << error_of(j);

    j["corpus"]["documents"][1]["owner"] = 1;
    j["corpus"]["documents"][1]["relevance"]["2"] = 1.5;
    EXPECT_EQ(error_of(j).rfind("corpus.documents.1.relevance.2", 0), 0u) << error_of(j);
}

TEST(ParseScenario, MissingRequiredFields) {
    for (const char* key : {"users", "keywords", "corpus", "workload"}) {
        auto j = base();
        j.erase(key);
        EXPECT_EQ(error_of(j).rfind(key, 0), 0u) << key;
    }
}

TEST(ParseScenario, MalformedText) {
    EXPECT_THROW(parse_scenario(std::string_view("{\"users\": ")), ScenarioError);
    EXPECT_THROW(parse_scenario(std::string_view("[1, 2]")), ScenarioError);
    EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

} // namespace
} // namespace minds
