#pragma once
// Brute-force reference for small bundles: exhaustive simulation of the
// deduplication loops and exhaustive path enumeration for connectivity.
// Kept deliberately naive and independent of the library's code paths.

#include <set>

#include "ingest/ingest.hpp"

namespace ontograft::testing {

struct OracleResult {
    MergeSet canonical_merges;   // current sources only, sorted
    MergeSet obsolete_merges;    // obsolete sources, sorted
    std::set<ConceptId> unmerged;
    HierarchyEdgeSet domain_hierarchy;  // sorted
};

OracleResult oracle_run(const InputBundle& bundle);

}  // namespace ontograft::testing
