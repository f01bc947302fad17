#include <doctest.h>

#include "connect/connect.hpp"
#include "corpus.hpp"
#include "dedup/dedup.hpp"

using namespace ontograft;

namespace {

AlignmentConfig config_for(std::vector<SourceId> sources) {
    AlignmentConfig c;
    c.seed = sources.front();
    c.sources = std::move(sources);
    c.groups = {{"eqv", {"equivalent_to"}}, {"xref", {"xref"}}};
    return c;
}

}  // namespace

TEST_CASE("get_hierarchy filters by the child's source") {
    HierarchyEdgeSet edges{{"S1:a", "S1:b"}, {"S2:x", "S2:y"}};
    auto g = get_hierarchy("S1", edges);
    CHECK(g.nodes == std::set<ConceptId>{"S1:a", "S1:b"});
    CHECK(g.roots == std::set<ConceptId>{"S1:b"});

    CHECK(get_hierarchy("S1", {}).nodes.empty());

    // cross-source parents are roots of the fragment
    auto cross = get_hierarchy("S1", {{"S1:a", "S2:root"}});
    CHECK(cross.roots == std::set<ConceptId>{"S2:root"});
}

TEST_CASE("shortest_path_to_root") {
    SUBCASE("a root is its own path") {
        auto g = get_hierarchy("A", {{"A:x", "A:r"}});
        auto path = shortest_path_to_root("A:r", g);
        REQUIRE(path);
        CHECK(*path == Path{"A:r"});
    }
    SUBCASE("diamond ties break lexicographically") {
        auto g = get_hierarchy("A", {{"A:a", "A:b"}, {"A:a", "A:c"}, {"A:b", "A:d"},
                                     {"A:c", "A:d"}});
        auto path = shortest_path_to_root("A:a", g);
        REQUIRE(path);
        CHECK(*path == Path{"A:a", "A:b", "A:d"});
    }
    SUBCASE("absent concept yields none") {
        auto g = get_hierarchy("A", {{"A:x", "A:r"}});
        CHECK_FALSE(shortest_path_to_root("A:missing", g));
    }
}

TEST_CASE("prune_path") {
    SUBCASE("interiors not kept are dropped") {
        auto pruned = prune_path({"c:c", "i:1", "i:2", "r:r"}, {}, {"r:r"});
        REQUIRE(pruned);
        CHECK(*pruned == Path{"c:c", "r:r"});
    }
    SUBCASE("kept interiors survive, truncation at the first anchor") {
        auto pruned = prune_path({"c:c", "u:u", "m:m", "a:a", "r:r"}, {"u:u"}, {"a:a"});
        REQUIRE(pruned);
        CHECK(*pruned == Path{"c:c", "u:u", "a:a"});
    }
    SUBCASE("two-element path passes through") {
        auto pruned = prune_path({"c:c", "r:r"}, {}, {"r:r"});
        REQUIRE(pruned);
        CHECK(*pruned == Path{"c:c", "r:r"});
    }
    SUBCASE("no anchor on the path") {
        CHECK_FALSE(prune_path({"c:c", "r:r"}, {}, {"z:z"}));
    }
}

TEST_CASE("convert_to_edges") {
    CHECK(convert_to_edges({"a:1", "b:1", "c:1"}) ==
          HierarchyEdgeSet{{"a:1", "b:1"}, {"b:1", "c:1"}});
    CHECK(convert_to_edges({"a:1", "b:1"}) == HierarchyEdgeSet{{"a:1", "b:1"}});
    CHECK(convert_to_edges({"a:1", "b:1", "c:1", "d:1", "e:1"}).size() == 4);
}

TEST_CASE("connect_concepts with nothing unmerged returns the seed hierarchy") {
    auto config = config_for({"SEED", "S1"});
    HierarchyEdgeSet hierarchy{{"SEED:a", "SEED:r"}, {"S1:x", "S1:y"}};
    auto result = connect_concepts({}, hierarchy, {}, config);
    CHECK(result.domain_hierarchy == HierarchyEdgeSet{{"SEED:a", "SEED:r"}});
}

TEST_CASE("connect_concepts attaches through a pruned path to a seed anchor") {
    auto config = config_for({"SEED", "S1"});
    // S1:a -> S1:b -> SEED:x; S1:b is not unmapped so it is pruned away
    HierarchyEdgeSet hierarchy{{"SEED:x", "SEED:r"}, {"S1:a", "S1:b"}, {"S1:b", "SEED:x"}};
    auto result = connect_concepts({"S1:a"}, hierarchy, {}, config);
    CHECK(result.domain_hierarchy ==
          HierarchyEdgeSet{{"S1:a", "SEED:x"}, {"SEED:x", "SEED:r"}});
    CHECK(result.connected.count("S1:a") == 1);
    CHECK(result.disconnected.empty());
    REQUIRE(result.attachments.size() == 1);
    CHECK(result.attachments[0].anchor == "SEED:x");
    CHECK(result.attachments[0].original_path_length == 2);
    CHECK(result.attachments[0].pruned_path_length == 1);
}

TEST_CASE("concepts whose paths avoid anchors stay disconnected") {
    auto config = config_for({"SEED", "S1"});
    HierarchyEdgeSet hierarchy{{"SEED:x", "SEED:r"}, {"S1:a", "S1:b"}};
    auto result = connect_concepts({"S1:a", "S1:b"}, hierarchy, {}, config);
    CHECK(result.disconnected == std::set<ConceptId>{"S1:a", "S1:b"});
    CHECK(result.domain_hierarchy == HierarchyEdgeSet{{"SEED:x", "SEED:r"}});
}

TEST_CASE("merged-to-seed concepts anchor their source's paths after rewriting") {
    auto config = config_for({"SEED", "S1"});
    HierarchyEdgeSet hierarchy{{"S1:a", "S1:b"}};
    MergeSet merges{{"S1:b", "SEED:x"}};  // S1:b was deduplicated onto the seed
    auto result = connect_concepts({"S1:a"}, hierarchy, merges, config);
    CHECK(result.domain_hierarchy == HierarchyEdgeSet{{"S1:a", "SEED:x"}});
    CHECK(result.connected.count("S1:a") == 1);
}

TEST_CASE("verify_dag") {
    CHECK(verify_dag({{"a:1", "b:1"}, {"b:1", "c:1"}}));
    Path cycle;
    CHECK_FALSE(verify_dag({{"a:1", "b:1"}, {"b:1", "a:1"}}, &cycle));
    REQUIRE(cycle.size() == 3);
    CHECK(cycle.front() == cycle.back());
}

TEST_CASE("connectivity invariants across the synthetic corpus") {
    for (uint32_t seed = 20; seed < 32; ++seed) {
        auto bundle = ontograft::testing::random_fixture(seed);
        auto dedup = deduplicate(bundle);
        auto conn =
            connect_concepts(dedup.unmerged, bundle.hierarchy, dedup.canonical_merges,
                             bundle.config);

        CHECK(verify_dag(conn.domain_hierarchy));

        auto touched = sig(conn.domain_hierarchy, SigSide::Both);
        for (const auto& id : touched) CHECK(conn.connected.count(id) == 1);

        for (const auto& id : conn.disconnected) CHECK(conn.connected.count(id) == 0);

        // every unmerged concept is classified
        for (const auto& id : dedup.unmerged)
            CHECK((conn.connected.count(id) || conn.disconnected.count(id)));

        // no-inflation: the DAG never resurrects merged-away concepts
        std::set<ConceptId> allowed = dedup.domain_concepts.all_ids();
        for (const auto& id : touched) CHECK(allowed.count(id) == 1);

        // anchor soundness, replayed from the attachments log
        for (const auto& a : conn.attachments) CHECK(conn.connected.count(a.anchor) == 1);
    }
}
