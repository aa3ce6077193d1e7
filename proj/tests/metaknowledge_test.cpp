#include "minds/metaknowledge.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

namespace minds {
namespace {

constexpr double kTol = 1e-12;

const Keyword kCompilers("compilers");
constexpr UserId A{1}, B{2}, C{3}, Obs{0};

TEST(Keyword, NormalizesCase) {
    EXPECT_EQ(Keyword("Compilers"), kCompilers);
    EXPECT_EQ(Keyword(Keyword("ReTuRn").token()), Keyword("return"));
    EXPECT_THROW(Keyword(""), ScenarioError);
    EXPECT_THROW(Keyword("a,b"), ScenarioError);
    EXPECT_THROW(Keyword("two words"), ScenarioError);
}

TEST(MetaKey, RejectsSelfBelief) { EXPECT_THROW(MetaKey(A, A, kCompilers), ContractError); }

TEST(GetCf, DefaultsWithoutMaterializing) {
    const MetaknowledgeStore store;
    const MetaKey key(Obs, A, kCompilers);
    EXPECT_EQ(get_cf(store, key).value(), 0.5);
    EXPECT_EQ(get_cf(store, key), get_cf(store, key));
    EXPECT_EQ(store.size(), 0u);
}

TEST(ApplyEvidence, Examples) {
    const PolicyParams p(0.3, 0.3);
    MetaknowledgeStore store;
    const MetaKey key(Obs, A, kCompilers);

    EXPECT_NEAR(apply_evidence(store, key, Evidence(1.0, 1.0), p).value(), 0.65, kTol);
    EXPECT_NEAR(get_cf(store, key).value(), 0.65, kTol);

    MetaknowledgeStore fresh;
    const MetaKey other(Obs, B, kCompilers);
    EXPECT_EQ(apply_evidence(fresh, other, Evidence(0.3, 0.0), p).value(), 0.5);
    EXPECT_TRUE(fresh.contains(other));

    MetaknowledgeStore owner_side;
    EXPECT_NEAR(apply_evidence(owner_side, key, Evidence(1.0, 0.1), p).value(), 0.515, kTol);
}

TEST(ApplyEvidence, TouchesExactlyOneKey) {
    const PolicyParams p(0.3, 0.3);
    MetaknowledgeStore store;
    store.set(MetaKey(Obs, A, kCompilers), CertaintyFactor(0.2));
    store.set(MetaKey(Obs, B, kCompilers), CertaintyFactor(0.9));
    store.set(MetaKey(A, Obs, kCompilers), CertaintyFactor(0.4));
    const auto before = store;
    const MetaKey target(Obs, B, kCompilers);
    apply_evidence(store, target, Evidence(0.1, 0.8), p);
    for (const auto& [key, cf] : before.entries()) {
        if (key == target) continue;
        EXPECT_EQ(store.get(key), cf);
    }
    EXPECT_EQ(store.size(), before.size());
    EXPECT_NE(store.get(target), before.get(target));
}

TEST(OrderOwners, Examples) {
    MetaknowledgeStore store;
    store.set(MetaKey(Obs, A, kCompilers), CertaintyFactor(0.8));
    store.set(MetaKey(Obs, B, kCompilers), CertaintyFactor(0.3));
    const std::vector<UserId> ab{B, A};
    EXPECT_EQ(order_owners(store, Obs, kCompilers, ab), (std::vector<UserId>{A, B}));

    const MetaknowledgeStore empty;
    const std::vector<UserId> abc{C, A, B};
    EXPECT_EQ(order_owners(empty, Obs, kCompilers, abc), (std::vector<UserId>{A, B, C}));

    MetaknowledgeStore tie;
    tie.set(MetaKey(Obs, A, kCompilers), CertaintyFactor(0.2));
    tie.set(MetaKey(Obs, B, kCompilers), CertaintyFactor(0.9));
    tie.set(MetaKey(Obs, C, kCompilers), CertaintyFactor(0.9));
    EXPECT_EQ(order_owners(tie, Obs, kCompilers, abc), (std::vector<UserId>{B, C, A}));
}

TEST(OrderOwners, RejectsBadLists) {
    const MetaknowledgeStore store;
    const std::vector<UserId> dup{A, B, A};
    const std::vector<UserId> self{A, Obs};
    EXPECT_THROW(order_owners(store, Obs, kCompilers, dup), ContractError);
    EXPECT_THROW(order_owners(store, Obs, kCompilers, self), ContractError);
    EXPECT_TRUE(order_owners(store, Obs, kCompilers, std::vector<UserId>{}).empty());
}

TEST(Distance, Examples) {
    const Keyword k2("parsing");
    const std::vector<MetaKey> one{MetaKey(Obs, A, kCompilers)};
    const std::vector<MetaKey> two{MetaKey(Obs, A, kCompilers), MetaKey(Obs, A, k2)};

    MetaknowledgeStore actual;
    EXPECT_EQ(distance(actual, actual, two), 0.0);

    MetaknowledgeStore ideal(CertaintyFactor(0.0));
    ideal.set(one[0], CertaintyFactor(1.0));
    EXPECT_NEAR(distance(actual, ideal, one), 0.5, kTol);

    // |0.5 - 1.0| and |0.5 - 0.6|.
    ideal.set(two[1], CertaintyFactor(0.6));
    EXPECT_NEAR(distance(actual, ideal, two), 0.3, kTol);

    EXPECT_THROW(distance(actual, ideal, std::vector<MetaKey>{}), ContractError);
}

TEST(PeerDomain, ExcludesSelfPairs) {
    const std::set<UserId> users{A, B, C};
    const std::set<Keyword> kws{kCompilers, Keyword("x")};
    const auto domain = peer_domain(users, kws);
    EXPECT_EQ(domain.size(), 3u * 2u * 2u);
    for (const auto& k : domain) EXPECT_NE(k.observer, k.owner);
}

TEST(StoreCsv, WritesHeaderAndRowsInKeyOrder) {
    MetaknowledgeStore store;
    store.set(MetaKey(B, A, kCompilers), CertaintyFactor(0.25));
    store.set(MetaKey(A, B, kCompilers), CertaintyFactor(2.0 / 3.0));
    std::ostringstream os;
    write_store_csv(os, store);
    EXPECT_EQ(os.str(), "observer,owner,keyword,cf\n1,2,compilers,0.666666666667\n2,1,compilers,0.25\n");
}

// Randomized store over a small domain.
MetaknowledgeStore random_store(std::mt19937_64& rng, const std::vector<MetaKey>& domain) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MetaknowledgeStore s(CertaintyFactor(u(rng)));
    for (const auto& k : domain) {
        if (u(rng) < 0.7) s.set(k, CertaintyFactor(u(rng)));
    }
    return s;
}

TEST(DistanceProperties, MetricLawsOnRandomStores) {
    std::mt19937_64 rng(7);
    const std::set<UserId> users{Obs, A, B, C};
    const std::set<Keyword> kws{kCompilers, Keyword("db")};
    const auto domain = peer_domain(users, kws);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_store(rng, domain);
        const auto y = random_store(rng, domain);
        const auto z = random_store(rng, domain);
        const double xy = distance(x, y, domain);
        ASSERT_EQ(distance(x, x, domain), 0.0);
        ASSERT_EQ(xy, distance(y, x, domain));
        ASSERT_GE(xy, 0.0);
        ASSERT_LE(xy, 1.0);
        ASSERT_LE(xy, distance(x, z, domain) + distance(z, y, domain) + kTol);
    }
}

TEST(OrderOwnersProperties, PermutationSortednessAndCanonicalOutput) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto n = std::uniform_int_distribution<std::uint32_t>(0, 9)(rng);
        std::vector<UserId> owners;
        for (std::uint32_t j = 1; j <= n; ++j) owners.push_back(UserId{j});
        MetaknowledgeStore store;
        for (UserId w : owners) {
            // Coarse values so ties are common.
            const double r = u(rng);
            if (r < 0.8) store.set(MetaKey(Obs, w, kCompilers), CertaintyFactor(std::floor(r * 5.0) / 4.0));
        }
        std::shuffle(owners.begin(), owners.end(), rng);
        const auto ordered = order_owners(store, Obs, kCompilers, owners);

        ASSERT_TRUE(std::is_permutation(ordered.begin(), ordered.end(), owners.begin(), owners.end()));
        for (std::size_t j = 1; j < ordered.size(); ++j) {
            const double prev = store.get(MetaKey(Obs, ordered[j - 1], kCompilers)).value();
            const double cur = store.get(MetaKey(Obs, ordered[j], kCompilers)).value();
            ASSERT_TRUE(prev > cur || (prev == cur && ordered[j - 1] < ordered[j]));
        }
        std::shuffle(owners.begin(), owners.end(), rng);
        ASSERT_EQ(order_owners(store, Obs, kCompilers, owners), ordered);
    }
}

} // namespace
} // namespace minds
