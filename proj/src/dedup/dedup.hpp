#pragma once
// Concept deduplication: obsolete renaming resolution, priority-ordered
// alignment over mapping-type groups, canonical merge aggregation, and
// table rewriting.

#include <set>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "ingest/ingest.hpp"

namespace ontograft {

// One (group, source) iteration of the alignment loop.
struct AlignmentStep {
    std::size_t step_index = 0;
    std::string group_name;
    SourceId source;
    long long mappings_considered = 0;
    long long merges_produced = 0;
    long long dropped_multi_target = 0;
};

struct ObsoleteMergeResult {
    MergeSet merges;         // obsolete id -> current id, stable
    MappingSet internal;     // within-source mappings of the first group
    ValidationReport notes;  // obsolete cycles / unresolved chains
};

struct DedupResult {
    NodeTable domain_concepts;          // surviving current concepts
    std::set<ConceptId> unmerged;       // current ids never removed by a canonical merge
    MergeSet canonical_merges;          // stable; every source is a current concept
    MergeSet obsolete_merges;           // obsolete id -> cluster canonical, stable
    MappingSet domain_mappings;
    std::vector<AlignmentStep> steps;
    ValidationReport notes;
};

// Within-source mappings of the first (equivalence-like) group become the
// renaming pool; obsolete ids resolve transitively to a current id.
ObsoleteMergeResult compute_obsolete_merges(const MappingSet& mappings,
                                            const std::set<ConceptId>& obsolete,
                                            const AlignmentConfig& config);

// Rewrites every endpoint that is a merge source to its target; drops the
// resulting self-mappings and duplicate rows. Requires a stable merge set.
MappingSet update_mappings(const MappingSet& mappings, const MergeSet& merges);

// The alignment double loop: outer over mapping-type groups, inner over
// sources in priority order. Seed concepts never become merge sources.
std::pair<MergeSet, std::vector<AlignmentStep>> compute_merges(const NodeTable& concepts,
                                                               const MappingSet& updated_mappings,
                                                               const AlignmentConfig& config);

// Collapses the merge graph into weakly connected clusters and points every
// non-canonical member at the cluster's canonical concept (highest priority
// source, ties by smallest id; obsolete ids are never canonical).
// Clusters holding two or more current seed concepts are flagged; only their
// non-seed members are merged, onto the smallest seed member.
MergeSet aggregate_merges(const MergeSet& merges, const AlignmentConfig& config,
                          const std::set<ConceptId>& current_seed,
                          const std::set<ConceptId>& obsolete, ValidationReport* notes);

NodeTable apply_merges(const NodeTable& table, const MergeSet& merges);
MappingSet apply_merges(const MappingSet& mappings, const MergeSet& merges);
HierarchyEdgeSet apply_merges(const HierarchyEdgeSet& edges, const MergeSet& merges);

// Full deduplication stage over a validated bundle.
DedupResult deduplicate(const InputBundle& bundle);

}  // namespace ontograft
