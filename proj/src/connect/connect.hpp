#pragma once
// Grows a single seed-rooted DAG by attaching unmerged concepts through
// pruned shortest paths to anchor points.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace ontograft {

// One source's hierarchy fragment: edges whose child belongs to the source.
// Parents may be cross-source; a node with no outgoing child->parent edge
// is a root of the fragment.
struct SourceHierarchyGraph {
    std::map<ConceptId, std::vector<ConceptId>> parents;  // sorted adjacency
    std::set<ConceptId> nodes;
    std::set<ConceptId> roots;

    bool contains(const ConceptId& id) const { return nodes.count(id) != 0; }
};

struct Attachment {
    ConceptId concept_id;
    ConceptId anchor;
    std::size_t original_path_length = 0;  // edge count
    std::size_t pruned_path_length = 0;
};

struct ConnectivityResult {
    HierarchyEdgeSet domain_hierarchy;
    std::set<ConceptId> connected;
    std::set<ConceptId> disconnected;
    std::vector<Attachment> attachments;
};

SourceHierarchyGraph get_hierarchy(const SourceId& source, const HierarchyEdgeSet& edges);

// Minimum-length child->parent path from c to any root; among equal-length
// paths the lexicographically smallest id sequence. nullopt when c is not in
// the graph or no root is reachable.
std::optional<Path> shortest_path_to_root(const ConceptId& c, const SourceHierarchyGraph& graph);

// Truncates at the first anchor (inclusive, scanning past path[0]) and keeps
// path[0], the anchor, and interior elements in `keep`. nullopt when no
// element past path[0] is an anchor.
std::optional<Path> prune_path(const Path& path, const std::set<ConceptId>& keep,
                               const std::set<ConceptId>& anchors);

HierarchyEdgeSet convert_to_edges(const Path& path);

// Whole connectivity stage. `hierarchy` is the input edge set; it is rewritten
// through the canonical merges internally so anchors created by merges-to-seed
// lie on source paths.
ConnectivityResult connect_concepts(const std::set<ConceptId>& unmerged,
                                    const HierarchyEdgeSet& hierarchy,
                                    const MergeSet& canonical_merges,
                                    const AlignmentConfig& config);

// True iff acyclic; otherwise `cycle` holds one concrete witness, first node
// repeated at the end.
bool verify_dag(const HierarchyEdgeSet& edges, Path* cycle = nullptr);

}  // namespace ontograft
