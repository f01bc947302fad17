#include "connect/connect.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <unordered_map>

#include "dedup/dedup.hpp"

namespace ontograft {

SourceHierarchyGraph get_hierarchy(const SourceId& source, const HierarchyEdgeSet& edges) {
    SourceHierarchyGraph g;
    for (const auto& h : edges) {
        if (source_of(h.child) != source) continue;
        g.parents[h.child].push_back(h.parent);
        g.nodes.insert(h.child);
        g.nodes.insert(h.parent);
    }
    for (auto& [_, ps] : g.parents) {
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }
    for (const auto& n : g.nodes)
        if (!g.parents.count(n)) g.roots.insert(n);
    return g;
}

namespace {

// Graph over an already-selected edge set, no child-prefix filter.
SourceHierarchyGraph graph_of(const HierarchyEdgeSet& edges) {
    SourceHierarchyGraph g;
    for (const auto& h : edges) {
        g.parents[h.child].push_back(h.parent);
        g.nodes.insert(h.child);
        g.nodes.insert(h.parent);
    }
    for (auto& [_, ps] : g.parents) {
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }
    for (const auto& n : g.nodes)
        if (!g.parents.count(n)) g.roots.insert(n);
    return g;
}

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Edge distance from every node to its nearest root (reverse BFS).
std::unordered_map<std::string, std::size_t> root_distances(const SourceHierarchyGraph& g) {
    std::unordered_map<std::string, std::vector<std::string>> children;
    for (const auto& [child, parents] : g.parents)
        for (const auto& p : parents) children[p].push_back(child);

    std::unordered_map<std::string, std::size_t> dist;
    std::deque<std::string> queue;
    for (const auto& r : g.roots) {
        dist[r] = 0;
        queue.push_back(r);
    }
    while (!queue.empty()) {
        std::string u = std::move(queue.front());
        queue.pop_front();
        auto it = children.find(u);
        if (it == children.end()) continue;
        for (const auto& child : it->second) {
            if (!dist.count(child)) {
                dist[child] = dist[u] + 1;
                queue.push_back(child);
            }
        }
    }
    return dist;
}

// Greedy walk along the distance gradient; picking the smallest qualifying
// parent at each step yields the lexicographically smallest shortest path.
std::optional<Path> walk_to_root(const ConceptId& c, const SourceHierarchyGraph& g,
                                 const std::unordered_map<std::string, std::size_t>& dist) {
    auto it = dist.find(c);
    if (it == dist.end()) return std::nullopt;
    Path path{c};
    std::size_t remaining = it->second;
    ConceptId cur = c;
    while (remaining > 0) {
        const auto& parents = g.parents.at(cur);
        const ConceptId* next = nullptr;
        for (const auto& p : parents) {
            auto pd = dist.find(p);
            if (pd != dist.end() && pd->second == remaining - 1) {
                next = &p;  // parents are sorted, first hit is smallest
                break;
            }
        }
        if (!next) return std::nullopt;  // inconsistent distance map
        cur = *next;
        path.push_back(cur);
        --remaining;
    }
    return path;
}

}  // namespace

std::optional<Path> shortest_path_to_root(const ConceptId& c, const SourceHierarchyGraph& graph) {
    if (!graph.contains(c)) return std::nullopt;
    return walk_to_root(c, graph, root_distances(graph));
}

std::optional<Path> prune_path(const Path& path, const std::set<ConceptId>& keep,
                               const std::set<ConceptId>& anchors) {
    std::size_t anchor_index = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (anchors.count(path[i])) {
            anchor_index = i;
            break;
        }
    }
    if (anchor_index == 0) return std::nullopt;

    Path pruned{path[0]};
    for (std::size_t i = 1; i < anchor_index; ++i)
        if (keep.count(path[i])) pruned.push_back(path[i]);
    pruned.push_back(path[anchor_index]);
    return pruned;
}

HierarchyEdgeSet convert_to_edges(const Path& path) {
    HierarchyEdgeSet edges;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.push_back({path[i], path[i + 1]});
    return edges;
}

ConnectivityResult connect_concepts(const std::set<ConceptId>& unmerged,
                                    const HierarchyEdgeSet& hierarchy,
                                    const MergeSet& canonical_merges,
                                    const AlignmentConfig& config) {
    ConnectivityResult result;

    // Each source's subgraph is selected by the child's ORIGINAL prefix and
    // only then rewritten through the merges. Rewriting first would migrate
    // another source's ordering edges into this subgraph once their children
    // take on canonical names, which can close cycles.
    auto source_graph = [&](const SourceId& source) {
        SourceHierarchyGraph own = get_hierarchy(source, hierarchy);
        HierarchyEdgeSet edges;
        for (const auto& [child, parents] : own.parents)
            for (const auto& p : parents) edges.push_back({child, p});
        return graph_of(apply_merges(edges, canonical_merges));
    };

    SourceHierarchyGraph seed_graph = source_graph(config.seed);
    std::set<HierarchyEdge> domain;
    for (const auto& [child, parents] : seed_graph.parents)
        for (const auto& p : parents) domain.insert({child, p});

    std::set<ConceptId>& connected = result.connected;
    connected = seed_graph.nodes;
    for (const auto& x : canonical_merges) {
        if (source_of(x.target) == config.seed) {
            connected.insert(x.source);  // merged-to-seed anchor, pre-rewrite name
            connected.insert(x.target);  // its post-rewrite name on source paths
        }
    }

    // Every current seed concept is an attachment anchor even when isolated
    // in the seed hierarchy: it belongs to the domain by definition, and a
    // rerun on the outputs (where merges-to-seed no longer exist as merges)
    // must still accept the same anchors. Unused isolated seed concepts stay
    // out of `connected` and are reported disconnected.
    std::set<ConceptId> anchors = connected;
    for (const auto& id : get_concepts(unmerged, config.seed)) anchors.insert(id);

    for (const auto& source : config.sources) {
        if (source == config.seed) continue;
        SourceHierarchyGraph graph = source_graph(source);
        auto dist = root_distances(graph);
        std::set<ConceptId> source_unmapped = get_concepts(unmerged, source);

        for (const auto& c : source_unmapped) {
            if (connected.count(c)) continue;  // attached earlier as an interior
            auto path = walk_to_root(c, graph, dist);
            if (!path) continue;
            auto pruned = prune_path(*path, source_unmapped, anchors);
            if (!pruned) continue;
            for (const auto& e : convert_to_edges(*pruned)) domain.insert(e);
            for (const auto& id : *pruned) {
                connected.insert(id);
                anchors.insert(id);
            }
            result.attachments.push_back(
                {c, pruned->back(), path->size() - 1, pruned->size() - 1});
        }
    }

    result.domain_hierarchy.assign(domain.begin(), domain.end());
    for (const auto& id : unmerged)
        if (!connected.count(id)) result.disconnected.insert(id);
    return result;
}

bool verify_dag(const HierarchyEdgeSet& edges, Path* cycle) {
    std::unordered_map<std::string, std::vector<std::string>> adj;
    for (const auto& h : edges) adj[h.child].push_back(h.parent);
    for (auto& [_, ps] : adj) std::sort(ps.begin(), ps.end());

    std::unordered_map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::function<bool(const std::string&)> dfs = [&](const std::string& u) {
        state[u] = 1;
        stack.push_back(u);
        auto it = adj.find(u);
        if (it != adj.end()) {
            for (const auto& v : it->second) {
                int s = state.count(v) ? state[v] : 0;
                if (s == 1) {
                    if (cycle) {
                        auto begin = std::find(stack.begin(), stack.end(), v);
                        cycle->assign(begin, stack.end());
                        cycle->push_back(v);
                    }
                    return true;
                }
                if (s == 0 && dfs(v)) return true;
            }
        }
        stack.pop_back();
        state[u] = 2;
        return false;
    };
    for (const auto& h : edges) {
        if ((state.count(h.child) ? state[h.child] : 0) == 0) {
            stack.clear();
            if (dfs(h.child)) return false;
        }
    }
    return true;
}

}  // namespace ontograft
