#pragma once
// Stage metrics, lightweight table profiles, and the static HTML +
// machine-readable JSON report.

#include <map>
#include <string>
#include <vector>

#include "connect/connect.hpp"
#include "dedup/dedup.hpp"
#include "ingest/ingest.hpp"

namespace ontograft {

struct StageCounts {
    long long concept_sources = 0;
    long long concepts = 0;
    long long concept_merges = 0;
    long long mappings = 0;
    long long connected_subgraphs = 0;
    long long hierarchy_edges = 0;
};

struct StatusCount {
    long long count = 0;
    double ratio = 0.0;  // count / input concepts, half-up to 2 decimals
};

struct PipelineMetrics {
    StageCounts input;
    StageCounts output;

    // Deduplication status; the four categories partition the input concepts.
    StatusCount seed;
    StatusCount merged_to_seed;
    StatusCount merged_to_other;
    StatusCount unmapped;

    // Connectivity status; the three categories partition the input concepts.
    StatusCount connected_seed_plus_merged;
    StatusCount connected_other;
    StatusCount disconnected;

    std::map<std::string, long long> durations_ms;  // per stage, wall clock
};

struct ColumnProfile {
    std::string name;
    long long distinct = 0;
    long long nulls = 0;
};

struct TableProfile {
    std::string table;
    long long rows = 0;
    std::vector<ColumnProfile> columns;
    std::map<std::string, long long> source_prefix_counts;
};

// Weakly connected components of the edge set, over nodes with >= 1 edge.
long long count_connected_subgraphs(const HierarchyEdgeSet& edges);

PipelineMetrics compute_metrics(const InputBundle& bundle, const DedupResult& dedup,
                                const ConnectivityResult& conn);

TableProfile profile_table(const std::string& name, const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows);

struct RenderedReport {
    std::string html;
    std::string json;
};

RenderedReport render_report(const PipelineMetrics& metrics,
                             const std::vector<TableProfile>& profiles,
                             const ValidationReport& validation,
                             const std::vector<AlignmentStep>& steps);

}  // namespace ontograft
