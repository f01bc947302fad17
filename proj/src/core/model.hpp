#pragma once
// Triple algebra shared by every pipeline stage: concepts, mappings,
// hierarchy edges, merges, and the alignment configuration.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace ontograft {

// A concept id is "SOURCE:LOCAL"; the first colon splits. Ids are
// case-sensitive and compared as plain text.
using ConceptId = std::string;
using SourceId = std::string;

// Prefix before the first colon. Empty when the id has no colon or the
// colon is at position 0.
std::string_view source_of(std::string_view id);

bool is_valid_concept_id(std::string_view id);

// Trims surrounding ASCII whitespace; the only normalization applied to ids.
std::string trim(std::string_view text);

// Relation tags compare exactly after ASCII lowercasing.
std::string normalize_relation(std::string_view tag);

struct NodeRecord {
    ConceptId id;
    bool obsolete = false;
};

// Ordered collection of concept records; no duplicate ids.
struct NodeTable {
    std::vector<NodeRecord> records;

    bool contains(const ConceptId& id) const;
    bool is_obsolete(const ConceptId& id) const;
    std::set<ConceptId> current_ids() const;
    std::set<ConceptId> obsolete_ids() const;
    std::set<ConceptId> all_ids() const;
    std::size_t size() const { return records.size(); }
};

struct Mapping {
    ConceptId source;
    ConceptId target;
    std::string relation;    // normalized
    std::string provenance;  // carried through untouched, reporting only

    auto tie() const { return std::tie(source, target, relation, provenance); }
    bool operator==(const Mapping& o) const { return tie() == o.tie(); }
    bool operator<(const Mapping& o) const { return tie() < o.tie(); }
};
using MappingSet = std::vector<Mapping>;

// child ⊑ parent
struct HierarchyEdge {
    ConceptId child;
    ConceptId parent;

    auto tie() const { return std::tie(child, parent); }
    bool operator==(const HierarchyEdge& o) const { return tie() == o.tie(); }
    bool operator<(const HierarchyEdge& o) const { return tie() < o.tie(); }
};
using HierarchyEdgeSet = std::vector<HierarchyEdge>;

// source ⇒ target: source can be replaced by target everywhere.
struct Merge {
    ConceptId source;
    ConceptId target;

    auto tie() const { return std::tie(source, target); }
    bool operator==(const Merge& o) const { return tie() == o.tie(); }
    bool operator<(const Merge& o) const { return tie() < o.tie(); }
};
using MergeSet = std::vector<Merge>;

// A merge set is stable when each concept appears in at most one merge and
// no merge target is any merge source.
bool is_stable(const MergeSet& merges);

struct MappingTypeGroup {
    std::string name;
    std::vector<std::string> relations;  // normalized, pairwise disjoint across groups
};

struct AlignmentConfig {
    SourceId seed;
    std::vector<SourceId> sources;  // priority order, seed first
    std::vector<MappingTypeGroup> groups;

    // Rank in priority order; smaller is higher priority.
    std::optional<std::size_t> priority_of(std::string_view source) const;
    bool relation_in_group(std::string_view relation, std::size_t group_index) const;
};

// Ordered child→parent walk ending at a root.
using Path = std::vector<ConceptId>;

enum class SigSide { Source, Target, Both };

std::set<ConceptId> sig(const MappingSet& items, SigSide side);
std::set<ConceptId> sig(const MergeSet& items, SigSide side);
std::set<ConceptId> sig(const HierarchyEdgeSet& items, SigSide side);
std::set<ConceptId> sig(const Path& path);

// All ids in the table whose source prefix equals `source`.
std::set<ConceptId> get_concepts(const NodeTable& nodes, std::string_view source);
std::set<ConceptId> get_concepts(const std::set<ConceptId>& ids, std::string_view source);

}  // namespace ontograft
