#include <doctest.h>

#include <json.hpp>

#include "corpus.hpp"
#include "report/report.hpp"

using namespace ontograft;

TEST_CASE("connected subgraph counting") {
    CHECK(count_connected_subgraphs({}) == 0);
    CHECK(count_connected_subgraphs({{"a:1", "a:2"}, {"b:1", "b:2"}}) == 2);
    CHECK(count_connected_subgraphs({{"a:1", "a:2"}, {"b:1", "b:2"}, {"a:2", "b:1"}}) == 1);
}

TEST_CASE("compute_metrics on an empty bundle") {
    InputBundle bundle;
    bundle.config.seed = "SEED";
    bundle.config.sources = {"SEED"};
    auto metrics = compute_metrics(bundle, {}, {});
    CHECK(metrics.input.concepts == 0);
    CHECK(metrics.input.connected_subgraphs == 0);
    CHECK(metrics.output.concepts == 0);
    CHECK(metrics.seed.count == 0);
}

TEST_CASE("status categories partition the input concepts") {
    for (uint32_t seed = 40; seed < 48; ++seed) {
        auto bundle = ontograft::testing::random_fixture(seed);
        auto dedup = deduplicate(bundle);
        auto conn = connect_concepts(dedup.unmerged, bundle.hierarchy, dedup.canonical_merges,
                                     bundle.config);
        auto m = compute_metrics(bundle, dedup, conn);

        long long n = m.input.concepts;
        CHECK(m.seed.count + m.merged_to_seed.count + m.merged_to_other.count +
                  m.unmapped.count == n);
        CHECK(m.connected_seed_plus_merged.count + m.connected_other.count +
                  m.disconnected.count == n);
        CHECK(m.output.concept_merges == static_cast<long long>(dedup.canonical_merges.size()));
    }
}

TEST_CASE("table profiles") {
    auto profile = profile_table("nodes.csv", {"default_id", "obsolete"},
                                 {{"A:1", "false"}, {"A:2", "true"}, {"B:1", ""}});
    CHECK(profile.rows == 3);
    REQUIRE(profile.columns.size() == 2);
    CHECK(profile.columns[0].distinct == 3);
    CHECK(profile.columns[1].distinct == 2);
    CHECK(profile.columns[1].nulls == 1);
    CHECK(profile.source_prefix_counts.at("A") == 2);
    CHECK(profile.source_prefix_counts.at("B") == 1);

    auto empty = profile_table("empty", {"c"}, {});
    CHECK(empty.rows == 0);
    CHECK(empty.columns[0].distinct == 0);
}

TEST_CASE("render_report is deterministic and JSON mirrors the metrics") {
    auto bundle = ontograft::testing::random_fixture(99);
    auto dedup = deduplicate(bundle);
    auto conn =
        connect_concepts(dedup.unmerged, bundle.hierarchy, dedup.canonical_merges, bundle.config);
    auto metrics = compute_metrics(bundle, dedup, conn);

    auto a = render_report(metrics, {}, {}, dedup.steps);
    auto b = render_report(metrics, {}, {}, dedup.steps);
    CHECK(a.html == b.html);
    CHECK(a.json == b.json);

    auto doc = nlohmann::json::parse(a.json);
    CHECK(doc["metrics"]["input"]["concepts"].get<long long>() == metrics.input.concepts);
    CHECK(doc["metrics"]["output"]["concept_merges"].get<long long>() ==
          metrics.output.concept_merges);
    CHECK(doc["metrics"]["status"]["disconnected"]["count"].get<long long>() ==
          metrics.disconnected.count);

    // the six overview rows appear in the HTML
    for (const char* label : {"Concept sources", "Concepts", "Concept merges", "Mappings",
                              "Connected subgraphs", "Hierarchy edges"})
        CHECK(a.html.find(label) != std::string::npos);
    // self-contained: no external fetches
    CHECK(a.html.find("http://") == std::string::npos);
    CHECK(a.html.find("https://") == std::string::npos);
}
