#include "dedup/dedup.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace ontograft {

namespace {

Finding* note(ValidationReport& report, const std::string& check_id, Severity sev) {
    for (auto& f : report.findings)
        if (f.check_id == check_id) return &f;
    report.findings.push_back(Finding{check_id, sev, 0, {}});
    return &report.findings.back();
}

struct UnionFind {
    std::vector<std::size_t> parent;

    std::size_t add() {
        parent.push_back(parent.size());
        return parent.size() - 1;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

ObsoleteMergeResult compute_obsolete_merges(const MappingSet& mappings,
                                            const std::set<ConceptId>& obsolete,
                                            const AlignmentConfig& config) {
    ObsoleteMergeResult result;
    for (const auto& m : mappings) {
        if (source_of(m.source) == source_of(m.target) && config.relation_in_group(m.relation, 0))
            result.internal.push_back(m);
    }

    // Renaming edges leave obsolete ids; the equivalence may be recorded in
    // either direction.
    std::map<ConceptId, std::set<ConceptId>> next;
    for (const auto& m : result.internal) {
        if (obsolete.count(m.source)) next[m.source].insert(m.target);
        if (obsolete.count(m.target)) next[m.target].insert(m.source);
    }

    for (const auto& [start, _] : next) {
        // Reachable current targets following obsolete-origin edges.
        std::set<ConceptId> current_targets;
        std::set<ConceptId> visited{start};
        std::vector<ConceptId> frontier{start};
        bool revisited = false;
        while (!frontier.empty()) {
            ConceptId u = frontier.back();
            frontier.pop_back();
            auto it = next.find(u);
            if (it == next.end()) continue;
            for (const auto& v : it->second) {
                if (!obsolete.count(v)) {
                    current_targets.insert(v);
                } else if (visited.insert(v).second) {
                    frontier.push_back(v);
                } else {
                    revisited = true;
                }
            }
        }
        if (!current_targets.empty()) {
            result.merges.push_back({start, *current_targets.begin()});
        } else if (revisited) {
            note(result.notes, "obsolete_cycle", Severity::Warning)->add_sample(start);
        } else {
            note(result.notes, "obsolete_unresolved", Severity::Warning)->add_sample(start);
        }
    }
    return result;
}

MappingSet update_mappings(const MappingSet& mappings, const MergeSet& merges) {
    std::unordered_map<std::string, std::string> subst;
    for (const auto& x : merges) subst.emplace(x.source, x.target);

    MappingSet out;
    std::set<Mapping> seen;
    for (Mapping m : mappings) {
        if (auto it = subst.find(m.source); it != subst.end()) m.source = it->second;
        if (auto it = subst.find(m.target); it != subst.end()) m.target = it->second;
        if (m.source == m.target) continue;
        if (seen.insert(m).second) out.push_back(std::move(m));
    }
    return out;
}

std::pair<MergeSet, std::vector<AlignmentStep>> compute_merges(const NodeTable& concepts,
                                                               const MappingSet& updated_mappings,
                                                               const AlignmentConfig& config) {
    // Unmerged pool: current concepts, seed excluded.
    std::unordered_set<std::string> unmerged;
    for (const auto& r : concepts.records)
        if (!r.obsolete && source_of(r.id) != config.seed) unmerged.insert(r.id);

    MergeSet merges;
    std::vector<AlignmentStep> steps;
    std::size_t step_index = 0;

    // Endpoints are resolved through the merges of earlier iterations while
    // scanning, as if the mapping table were rewritten after every step.
    // Without this a mapping whose endpoint was already merged away can fire
    // a second time in the opposite orientation, and the reverse merge both
    // blocks the concept's remaining alignments and leaves a live mapping
    // behind, so a rerun on the outputs would still find work to do.
    std::unordered_map<std::string, std::string> merged_to;
    auto resolve = [&](ConceptId id) {
        auto it = merged_to.find(id);
        while (it != merged_to.end()) {
            id = it->second;
            it = merged_to.find(id);
        }
        return id;
    };

    // The double loop repeats until a full pass produces no merge: a rewrite
    // can hand a mapping to a source whose step already ran, and the final
    // quiescent pass sees exactly the table a rerun on the outputs would see,
    // which is what makes reruns find nothing left to do. Each non-final pass
    // shrinks the pool, so the repetition terminates.
    long long produced_this_pass = 0;
    do {
        produced_this_pass = 0;
        for (const auto& group : config.groups) {
            std::unordered_set<std::string> group_relations(group.relations.begin(),
                                                            group.relations.end());
            for (const auto& source : config.sources) {
                AlignmentStep step;
                step.step_index = step_index++;
                step.group_name = group.name;
                step.source = source;

                // oriented candidates: unmerged concept -> distinct targets
                // in this source
                std::map<ConceptId, std::set<ConceptId>> targets_of;
                for (const auto& m : updated_mappings) {
                    if (!group_relations.count(m.relation)) continue;
                    ConceptId a = resolve(m.source);
                    ConceptId b = resolve(m.target);
                    bool src_side = source_of(a) == source;
                    bool tgt_side = source_of(b) == source;
                    if (!src_side && !tgt_side) continue;
                    ++step.mappings_considered;
                    if (a == b) continue;                // dead after rewriting
                    if (src_side == tgt_side) continue;  // within-source: no orientation
                    const ConceptId& merge_target = src_side ? a : b;
                    const ConceptId& merge_source = src_side ? b : a;
                    if (!unmerged.count(merge_source)) continue;
                    targets_of[merge_source].insert(merge_target);
                }

                for (const auto& [merge_source, targets] : targets_of) {
                    if (targets.size() == 1) {
                        merges.push_back({merge_source, *targets.begin()});
                        unmerged.erase(merge_source);
                        merged_to.emplace(merge_source, *targets.begin());
                        ++step.merges_produced;
                        ++produced_this_pass;
                    } else {
                        // held back; stays eligible in later iterations
                        ++step.dropped_multi_target;
                    }
                }
                steps.push_back(std::move(step));
            }
        }
    } while (produced_this_pass > 0);
    return {std::move(merges), std::move(steps)};
}

MergeSet aggregate_merges(const MergeSet& merges, const AlignmentConfig& config,
                          const std::set<ConceptId>& current_seed,
                          const std::set<ConceptId>& obsolete, ValidationReport* notes) {
    UnionFind uf;
    std::unordered_map<std::string, std::size_t> index;
    auto node = [&](const ConceptId& id) {
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        std::size_t i = uf.add();
        index.emplace(id, i);
        return i;
    };
    for (const auto& x : merges) uf.unite(node(x.source), node(x.target));

    std::map<std::size_t, std::set<ConceptId>> clusters;
    for (const auto& [id, i] : index) clusters[uf.find(i)].insert(id);

    MergeSet out;
    for (const auto& [root, members] : clusters) {
        std::vector<ConceptId> seed_members;
        for (const auto& id : members)
            if (current_seed.count(id)) seed_members.push_back(id);

        ConceptId canonical;
        if (seed_members.size() >= 2) {
            std::sort(seed_members.begin(), seed_members.end());
            canonical = seed_members.front();
            if (notes) {
                auto* f = note(*notes, "multiple_seed_currents", Severity::Warning);
                std::string sample = canonical;
                for (std::size_t i = 1; i < seed_members.size(); ++i) sample += "|" + seed_members[i];
                f->add_sample(sample);
            }
            for (const auto& id : members)
                if (!current_seed.count(id)) out.push_back({id, canonical});
            continue;
        }

        // highest priority source wins, ties by smallest id; obsolete ids
        // are never canonical
        std::size_t best_rank = SIZE_MAX;
        for (const auto& id : members) {
            if (obsolete.count(id)) continue;
            auto rank = config.priority_of(source_of(id));
            std::size_t r = rank ? *rank : SIZE_MAX;
            if (r < best_rank || (r == best_rank && (canonical.empty() || id < canonical))) {
                best_rank = r;
                canonical = id;
            }
        }
        if (canonical.empty()) continue;  // all-obsolete cluster; nothing current to keep
        for (const auto& id : members)
            if (id != canonical) out.push_back({id, canonical});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
std::unordered_map<std::string, std::string> substitution(const MergeSet& merges) {
    std::unordered_map<std::string, std::string> subst;
    for (const auto& x : merges) subst.emplace(x.source, x.target);
    return subst;
}
}  // namespace

NodeTable apply_merges(const NodeTable& table, const MergeSet& merges) {
    auto subst = substitution(merges);
    NodeTable out;
    for (const auto& r : table.records)
        if (!subst.count(r.id)) out.records.push_back(r);
    return out;
}

MappingSet apply_merges(const MappingSet& mappings, const MergeSet& merges) {
    return update_mappings(mappings, merges);
}

HierarchyEdgeSet apply_merges(const HierarchyEdgeSet& edges, const MergeSet& merges) {
    auto subst = substitution(merges);
    HierarchyEdgeSet out;
    std::set<HierarchyEdge> seen;
    for (HierarchyEdge h : edges) {
        if (auto it = subst.find(h.child); it != subst.end()) h.child = it->second;
        if (auto it = subst.find(h.parent); it != subst.end()) h.parent = it->second;
        if (h.child == h.parent) continue;
        if (seen.insert(h).second) out.push_back(std::move(h));
    }
    return out;
}

DedupResult deduplicate(const InputBundle& bundle) {
    DedupResult result;
    const auto obsolete = bundle.nodes.obsolete_ids();
    const auto current = bundle.nodes.current_ids();

    // Pre-processing: obsolete renamings, internal mappings removed from the
    // alignment stream.
    auto obs = compute_obsolete_merges(bundle.mappings, obsolete, bundle.config);
    result.notes = std::move(obs.notes);

    std::set<Mapping> internal(obs.internal.begin(), obs.internal.end());
    MappingSet stream;
    for (const auto& m : bundle.mappings)
        if (!internal.count(m)) stream.push_back(m);
    stream = update_mappings(stream, obs.merges);

    // Mappings still naming unresolved obsolete concepts cannot participate
    // in alignment.
    {
        long long dropped = 0;
        std::erase_if(stream, [&](const Mapping& m) {
            bool bad = obsolete.count(m.source) || obsolete.count(m.target);
            if (bad) ++dropped;
            return bad;
        });
        if (dropped) {
            auto* f = note(result.notes, "obsolete_mapping_dropped", Severity::Warning);
            f->count += dropped;
        }
    }

    // Alignment.
    auto [aligned, steps] = compute_merges(bundle.nodes, stream, bundle.config);
    result.steps = std::move(steps);

    // Post-processing: aggregate everything into canonical clusters, then
    // split by source obsolescence. Canonical merges remove current concepts
    // one-for-one; obsolete renamings are reported separately.
    MergeSet all = obs.merges;
    all.insert(all.end(), aligned.begin(), aligned.end());
    std::set<ConceptId> current_seed = get_concepts(current, bundle.config.seed);
    MergeSet canonical_all =
        aggregate_merges(all, bundle.config, current_seed, obsolete, &result.notes);

    for (const auto& x : canonical_all) {
        if (obsolete.count(x.source))
            result.obsolete_merges.push_back(x);
        else
            result.canonical_merges.push_back(x);
    }

    NodeTable current_table;
    for (const auto& r : bundle.nodes.records)
        if (!r.obsolete) current_table.records.push_back(r);
    result.domain_concepts = apply_merges(current_table, result.canonical_merges);
    result.domain_mappings = apply_merges(stream, result.canonical_merges);

    result.unmerged = current;
    for (const auto& x : result.canonical_merges) result.unmerged.erase(x.source);

    assert(is_stable(result.canonical_merges));
    return result;
}

}  // namespace ontograft
