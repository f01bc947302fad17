#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace ontograft::testing {

namespace {

bool in_group(const AlignmentConfig& config, std::size_t group, const std::string& relation) {
    const auto& rels = config.groups[group].relations;
    return std::find(rels.begin(), rels.end(), relation) != rels.end();
}

std::string prefix(const std::string& id) { return std::string(source_of(id)); }

// every simple child->parent path from c to any root
void all_root_paths(const ConceptId& c, const std::map<ConceptId, std::set<ConceptId>>& parents,
                    const std::set<ConceptId>& roots, Path& current, std::vector<Path>& out) {
    current.push_back(c);
    if (roots.count(c)) out.push_back(current);
    auto it = parents.find(c);
    if (it != parents.end())
        for (const auto& p : it->second)
            if (std::find(current.begin(), current.end(), p) == current.end())
                all_root_paths(p, parents, roots, current, out);
    current.pop_back();
}

}  // namespace

OracleResult oracle_run(const InputBundle& bundle) {
    OracleResult result;
    const auto& config = bundle.config;

    std::set<ConceptId> obsolete, current;
    for (const auto& r : bundle.nodes.records)
        (r.obsolete ? obsolete : current).insert(r.id);

    // --- obsolete renaming merges, by reachability fixpoint ---
    MappingSet internal;
    for (const auto& m : bundle.mappings)
        if (prefix(m.source) == prefix(m.target) && in_group(config, 0, m.relation))
            internal.push_back(m);

    MergeSet renames;
    for (const auto& o : obsolete) {
        std::set<ConceptId> reach{o};
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& m : internal) {
                if (reach.count(m.source) && obsolete.count(m.source) && !reach.count(m.target)) {
                    reach.insert(m.target);
                    changed = true;
                }
                if (reach.count(m.target) && obsolete.count(m.target) && !reach.count(m.source)) {
                    reach.insert(m.source);
                    changed = true;
                }
            }
        }
        std::set<ConceptId> currents;
        for (const auto& id : reach)
            if (current.count(id)) currents.insert(id);
        if (!currents.empty()) renames.push_back({o, *currents.begin()});
    }

    // --- mapping stream: internal rows removed, renames applied, rows still
    // naming obsolete ids dropped ---
    std::set<Mapping> internal_rows(internal.begin(), internal.end());
    std::set<Mapping> stream_rows;
    for (const auto& m : bundle.mappings) {
        if (internal_rows.count(m)) continue;
        Mapping rewritten = m;
        for (const auto& x : renames) {
            if (rewritten.source == x.source) rewritten.source = x.target;
            if (rewritten.target == x.source) rewritten.target = x.target;
        }
        if (rewritten.source == rewritten.target) continue;
        if (obsolete.count(rewritten.source) || obsolete.count(rewritten.target)) continue;
        stream_rows.insert(rewritten);
    }

    // --- alignment double loop ---
    std::set<ConceptId> pool;
    for (const auto& id : current)
        if (prefix(id) != config.seed) pool.insert(id);

    MergeSet aligned;
    std::map<ConceptId, ConceptId> merged_to;  // continuous-rewrite simulation
    auto resolve = [&](ConceptId id) {
        while (merged_to.count(id)) id = merged_to.at(id);
        return id;
    };
    // Repeated until a full pass aligns nothing, mirroring the engine's
    // quiescent-pass semantics.
    std::size_t before = 0;
    do {
        before = aligned.size();
        for (std::size_t g = 0; g < config.groups.size(); ++g) {
            for (const auto& source : config.sources) {
                std::map<ConceptId, std::set<ConceptId>> targets_of;
                for (const auto& m : stream_rows) {
                    if (!in_group(config, g, m.relation)) continue;
                    ConceptId a = resolve(m.source);
                    ConceptId b = resolve(m.target);
                    if (a == b) continue;
                    bool src_is = prefix(a) == source;
                    bool tgt_is = prefix(b) == source;
                    if (src_is == tgt_is) continue;
                    ConceptId merge_target = src_is ? a : b;
                    ConceptId merge_source = src_is ? b : a;
                    if (pool.count(merge_source)) targets_of[merge_source].insert(merge_target);
                }
                for (const auto& [src, targets] : targets_of) {
                    if (targets.size() != 1) continue;
                    aligned.push_back({src, *targets.begin()});
                    pool.erase(src);
                    merged_to.emplace(src, *targets.begin());
                }
            }
        }
    } while (aligned.size() > before);

    // --- aggregation by repeated set unification ---
    std::vector<std::set<ConceptId>> clusters;
    MergeSet all = renames;
    all.insert(all.end(), aligned.begin(), aligned.end());
    for (const auto& x : all) clusters.push_back({x.source, x.target});
    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (std::size_t i = 0; i < clusters.size() && !merged_any; ++i) {
            for (std::size_t j = i + 1; j < clusters.size() && !merged_any; ++j) {
                bool overlap = std::any_of(clusters[i].begin(), clusters[i].end(),
                                           [&](const ConceptId& id) { return clusters[j].count(id); });
                if (overlap) {
                    clusters[i].insert(clusters[j].begin(), clusters[j].end());
                    clusters.erase(clusters.begin() + j);
                    merged_any = true;
                }
            }
        }
    }

    for (const auto& cluster : clusters) {
        std::vector<ConceptId> seed_members;
        for (const auto& id : cluster)
            if (current.count(id) && prefix(id) == config.seed) seed_members.push_back(id);
        std::sort(seed_members.begin(), seed_members.end());

        ConceptId canonical;
        bool seed_conflict = seed_members.size() >= 2;
        if (seed_conflict) {
            canonical = seed_members.front();
        } else {
            for (const auto& source : config.sources) {
                for (const auto& id : cluster) {  // std::set iterates sorted
                    if (current.count(id) && prefix(id) == source) {
                        canonical = id;
                        break;
                    }
                }
                if (!canonical.empty()) break;
            }
        }
        if (canonical.empty()) continue;
        for (const auto& id : cluster) {
            if (id == canonical) continue;
            if (seed_conflict && current.count(id) && prefix(id) == config.seed) continue;
            if (obsolete.count(id))
                result.obsolete_merges.push_back({id, canonical});
            else
                result.canonical_merges.push_back({id, canonical});
        }
    }
    std::sort(result.canonical_merges.begin(), result.canonical_merges.end());
    std::sort(result.obsolete_merges.begin(), result.obsolete_merges.end());

    result.unmerged = current;
    for (const auto& x : result.canonical_merges) result.unmerged.erase(x.source);

    // --- connectivity with exhaustive path enumeration ---
    // Each source's subgraph is selected by the original child prefix and
    // only then rewritten through the merges.
    auto rewritten_source_edges = [&](const std::string& source) {
        std::set<HierarchyEdge> out;
        for (HierarchyEdge h : bundle.hierarchy) {
            if (prefix(h.child) != source) continue;
            for (const auto& x : result.canonical_merges) {
                if (h.child == x.source) h.child = x.target;
                if (h.parent == x.source) h.parent = x.target;
            }
            if (h.child != h.parent) out.insert(h);
        }
        return out;
    };

    std::set<HierarchyEdge> domain;
    std::set<ConceptId> connected;
    for (const auto& h : rewritten_source_edges(config.seed)) {
        domain.insert(h);
        connected.insert(h.child);
        connected.insert(h.parent);
    }
    for (const auto& x : result.canonical_merges) {
        if (prefix(x.target) == config.seed) {
            connected.insert(x.source);
            connected.insert(x.target);
        }
    }
    // Current seed concepts are always eligible anchors, connected or not.
    std::set<ConceptId> anchors = connected;
    for (const auto& id : result.unmerged)
        if (prefix(id) == config.seed) anchors.insert(id);

    for (const auto& source : config.sources) {
        if (source == config.seed) continue;
        std::map<ConceptId, std::set<ConceptId>> parents;
        std::set<ConceptId> nodes;
        for (const auto& h : rewritten_source_edges(source)) {
            parents[h.child].insert(h.parent);
            nodes.insert(h.child);
            nodes.insert(h.parent);
        }
        std::set<ConceptId> roots;
        for (const auto& n : nodes)
            if (!parents.count(n)) roots.insert(n);

        std::set<ConceptId> source_unmapped;
        for (const auto& id : result.unmerged)
            if (prefix(id) == source) source_unmapped.insert(id);

        for (const auto& c : source_unmapped) {
            if (connected.count(c)) continue;
            if (!nodes.count(c)) continue;
            Path scratch;
            std::vector<Path> candidates;
            all_root_paths(c, parents, roots, scratch, candidates);
            if (candidates.empty()) continue;
            std::sort(candidates.begin(), candidates.end(),
                      [](const Path& a, const Path& b) {
                          if (a.size() != b.size()) return a.size() < b.size();
                          return a < b;
                      });
            const Path& path = candidates.front();

            std::size_t anchor = 0;
            for (std::size_t i = 1; i < path.size(); ++i) {
                if (anchors.count(path[i])) {
                    anchor = i;
                    break;
                }
            }
            if (anchor == 0) continue;
            Path pruned{path[0]};
            for (std::size_t i = 1; i < anchor; ++i)
                if (source_unmapped.count(path[i])) pruned.push_back(path[i]);
            pruned.push_back(path[anchor]);
            for (std::size_t i = 0; i + 1 < pruned.size(); ++i)
                domain.insert({pruned[i], pruned[i + 1]});
            for (const auto& id : pruned) {
                connected.insert(id);
                anchors.insert(id);
            }
        }
    }

    result.domain_hierarchy.assign(domain.begin(), domain.end());
    return result;
}

}  // namespace ontograft::testing
