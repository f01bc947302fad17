#include "ingest/ingest.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ingest/csv.hpp"

namespace ontograft {

namespace {

std::string row_text(const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        out += row[i];
    }
    return out;
}

ConceptId parse_id_cell(const std::string& cell, std::size_t row_no) {
    std::string id = trim(cell);
    if (!is_valid_concept_id(id)) {
        throw ParseError(ParseErrorKind::BadConceptId,
                         "row " + std::to_string(row_no) + ": bad concept id '" + id + "'");
    }
    return id;
}

void require_width(const std::vector<std::string>& row, std::size_t expected, std::size_t row_no) {
    if (row.size() != expected) {
        throw ParseError(ParseErrorKind::MalformedRow,
                         "row " + std::to_string(row_no) + ": expected " +
                             std::to_string(expected) + " columns, got " +
                             std::to_string(row.size()));
    }
}

bool parse_bool_cell(const std::string& cell, std::size_t row_no) {
    std::string v = normalize_relation(cell);  // trim + lowercase
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0" || v.empty()) return false;
    throw ParseError(ParseErrorKind::MalformedRow,
                     "row " + std::to_string(row_no) + ": bad boolean '" + cell + "'");
}

Finding* find_or_create(ValidationReport& report, const std::string& check_id, Severity sev) {
    for (auto& f : report.findings)
        if (f.check_id == check_id) return &f;
    report.findings.push_back(Finding{check_id, sev, 0, {}});
    return &report.findings.back();
}

}  // namespace

bool ValidationReport::has_errors() const {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::Error; });
}

long long ValidationReport::total(const std::string& check_id) const {
    long long n = 0;
    for (const auto& f : findings)
        if (f.check_id == check_id) n += f.count;
    return n;
}

NodeTable parse_nodes(std::istream& in, ValidationReport*) {
    csv::Table table = csv::read(in);
    int id_col = table.column("default_id");
    if (id_col < 0)
        throw ParseError(ParseErrorKind::MissingColumn, "nodes: missing column 'default_id'");
    int obs_col = table.column("obsolete");

    NodeTable nodes;
    std::unordered_set<std::string> seen;
    std::size_t row_no = 1;
    for (const auto& row : table.rows) {
        ++row_no;
        require_width(row, table.header.size(), row_no);
        NodeRecord rec;
        rec.id = parse_id_cell(row[id_col], row_no);
        rec.obsolete = obs_col >= 0 && parse_bool_cell(row[obs_col], row_no);
        if (!seen.insert(rec.id).second)
            throw ParseError(ParseErrorKind::DuplicateId,
                             "row " + std::to_string(row_no) + ": duplicate id '" + rec.id + "'");
        nodes.records.push_back(std::move(rec));
    }
    return nodes;
}

MappingSet parse_mappings(std::istream& in, ValidationReport* report) {
    csv::Table table = csv::read(in);
    for (const char* col : {"source_id", "target_id", "relation", "provenance"})
        if (table.column(col) < 0)
            throw ParseError(ParseErrorKind::MissingColumn,
                             std::string("mappings: missing column '") + col + "'");
    int src = table.column("source_id"), tgt = table.column("target_id");
    int rel = table.column("relation"), prov = table.column("provenance");

    MappingSet mappings;
    std::set<Mapping> seen;
    std::size_t row_no = 1;
    for (const auto& row : table.rows) {
        ++row_no;
        require_width(row, table.header.size(), row_no);
        Mapping m;
        m.source = parse_id_cell(row[src], row_no);
        m.target = parse_id_cell(row[tgt], row_no);
        m.relation = normalize_relation(row[rel]);
        m.provenance = trim(row[prov]);
        if (m.source == m.target) {
            // reflexive mapping carries no information; rejected
            if (report) find_or_create(*report, "ingest_reflexive_mapping", Severity::Warning)
                            ->add_sample(row_text(row));
            continue;
        }
        if (!seen.insert(m).second) {
            if (report) find_or_create(*report, "ingest_duplicate_row", Severity::Warning)
                            ->add_sample(row_text(row));
            continue;
        }
        mappings.push_back(std::move(m));
    }
    return mappings;
}

HierarchyEdgeSet parse_hierarchy(std::istream& in, ValidationReport* report) {
    csv::Table table = csv::read(in);
    int src = table.column("source_id"), tgt = table.column("target_id");
    if (src < 0 || tgt < 0)
        throw ParseError(ParseErrorKind::MissingColumn,
                         "hierarchy: missing column 'source_id' or 'target_id'");

    HierarchyEdgeSet edges;
    std::set<HierarchyEdge> seen;
    std::size_t row_no = 1;
    for (const auto& row : table.rows) {
        ++row_no;
        require_width(row, table.header.size(), row_no);
        HierarchyEdge h;
        h.child = parse_id_cell(row[src], row_no);
        h.parent = parse_id_cell(row[tgt], row_no);
        if (h.child == h.parent)
            throw ParseError(ParseErrorKind::SelfEdge,
                             "row " + std::to_string(row_no) + ": self edge '" + h.child + "'");
        if (!seen.insert(h).second) {
            if (report) find_or_create(*report, "ingest_duplicate_row", Severity::Warning)
                            ->add_sample(row_text(row));
            continue;
        }
        edges.push_back(std::move(h));
    }
    return edges;
}

AlignmentConfig parse_config(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ParseErrorKind::BadConfig, std::string("config: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("seed") || !doc.contains("sources") ||
        !doc.contains("mapping_type_groups"))
        throw ParseError(ParseErrorKind::BadConfig,
                         "config: requires 'seed', 'sources', 'mapping_type_groups'");

    AlignmentConfig config;
    config.seed = trim(doc["seed"].get<std::string>());
    for (const auto& s : doc["sources"]) config.sources.push_back(trim(s.get<std::string>()));

    if (config.sources.empty() || config.sources.front() != config.seed)
        throw ParseError(ParseErrorKind::SeedNotFirst,
                         "config: seed '" + config.seed + "' must be the first source");
    std::unordered_set<std::string> seen_sources;
    for (const auto& s : config.sources)
        if (!seen_sources.insert(s).second)
            throw ParseError(ParseErrorKind::DuplicateSource, "config: duplicate source '" + s + "'");

    std::unordered_set<std::string> seen_relations;
    for (const auto& g : doc["mapping_type_groups"]) {
        MappingTypeGroup group;
        group.name = trim(g.at("name").get<std::string>());
        for (const auto& r : g.at("relations"))
            group.relations.push_back(normalize_relation(r.get<std::string>()));
        if (group.relations.empty())
            throw ParseError(ParseErrorKind::EmptyGroup, "config: empty group '" + group.name + "'");
        for (const auto& r : group.relations)
            if (!seen_relations.insert(r).second)
                throw ParseError(ParseErrorKind::OverlappingGroups,
                                 "config: relation '" + r + "' appears in more than one group");
        config.groups.push_back(std::move(group));
    }
    if (config.groups.empty())
        throw ParseError(ParseErrorKind::BadConfig, "config: no mapping type groups");
    return config;
}

namespace {

// Per-source hierarchy subgraphs keyed by the child's source prefix.
std::map<std::string, HierarchyEdgeSet> group_by_child_source(const HierarchyEdgeSet& edges) {
    std::map<std::string, HierarchyEdgeSet> out;
    for (const auto& h : edges) out[std::string(source_of(h.child))].push_back(h);
    return out;
}

// Returns a node on some cycle, or empty when acyclic.
std::string find_cycle_node(const HierarchyEdgeSet& edges) {
    std::unordered_map<std::string, std::vector<std::string>> adj;
    for (const auto& h : edges) adj[h.child].push_back(h.parent);
    std::unordered_map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    std::string witness;
    std::function<bool(const std::string&)> dfs = [&](const std::string& u) {
        state[u] = 1;
        auto it = adj.find(u);
        if (it != adj.end()) {
            for (const auto& v : it->second) {
                int s = state.count(v) ? state[v] : 0;
                if (s == 1) {
                    witness = v;
                    return true;
                }
                if (s == 0 && dfs(v)) return true;
            }
        }
        state[u] = 2;
        return false;
    };
    for (const auto& h : edges) {
        if ((state.count(h.child) ? state[h.child] : 0) == 0 && dfs(h.child)) return witness;
    }
    return {};
}

}  // namespace

ValidationReport validate_inputs(const InputBundle& bundle) {
    ValidationReport report;
    const auto known = bundle.nodes.all_ids();
    const auto obsolete = bundle.nodes.obsolete_ids();

    // v1: dangling endpoints
    {
        Finding f{"v1_dangling_endpoint", Severity::Warning, 0, {}};
        for (const auto& m : bundle.mappings)
            if (!known.count(m.source) || !known.count(m.target))
                f.add_sample(m.source + "," + m.target + "," + m.relation);
        for (const auto& h : bundle.hierarchy)
            if (!known.count(h.child) || !known.count(h.parent))
                f.add_sample(h.child + "," + h.parent);
        if (f.count) report.findings.push_back(std::move(f));
    }

    // v2: unknown source prefixes
    {
        Finding f{"v2_unknown_source", Severity::Error, 0, {}};
        std::set<std::string> prefixes;
        for (const auto& id : known) prefixes.insert(std::string(source_of(id)));
        for (const auto& m : bundle.mappings) {
            prefixes.insert(std::string(source_of(m.source)));
            prefixes.insert(std::string(source_of(m.target)));
        }
        for (const auto& h : bundle.hierarchy) {
            prefixes.insert(std::string(source_of(h.child)));
            prefixes.insert(std::string(source_of(h.parent)));
        }
        for (const auto& p : prefixes)
            if (!bundle.config.priority_of(p)) f.add_sample(p);
        if (f.count) report.findings.push_back(std::move(f));
    }

    // v3: relation tags covered by no group
    {
        Finding f{"v3_unusable_relation", Severity::Warning, 0, {}};
        std::set<std::string> covered;
        for (const auto& g : bundle.config.groups)
            covered.insert(g.relations.begin(), g.relations.end());
        std::set<std::string> unusable;
        long long rows = 0;
        for (const auto& m : bundle.mappings)
            if (!covered.count(m.relation)) {
                ++rows;
                unusable.insert(m.relation);
            }
        if (rows) {
            f.count = rows;
            for (const auto& r : unusable) {
                if (f.sample_rows.size() >= 10) break;
                f.sample_rows.push_back(r);
            }
            report.findings.push_back(std::move(f));
        }
    }

    // v4/v5: per-source acyclicity and root existence
    {
        Finding cycles{"v4_cyclic_source_hierarchy", Severity::Error, 0, {}};
        Finding rootless{"v5_rootless_source_hierarchy", Severity::Error, 0, {}};
        for (const auto& [source, edges] : group_by_child_source(bundle.hierarchy)) {
            std::string node = find_cycle_node(edges);
            if (!node.empty()) cycles.add_sample(source + ": cycle through " + node);
            std::set<std::string> children, parents;
            for (const auto& h : edges) {
                children.insert(h.child);
                parents.insert(h.parent);
            }
            bool has_root = std::any_of(parents.begin(), parents.end(),
                                        [&](const std::string& p) { return !children.count(p); });
            if (!edges.empty() && !has_root) rootless.add_sample(source);
        }
        if (cycles.count) report.findings.push_back(std::move(cycles));
        if (rootless.count) report.findings.push_back(std::move(rootless));
    }

    // v6: hierarchy edges touching obsolete concepts
    {
        Finding f{"v6_obsolete_hierarchy_edge", Severity::Warning, 0, {}};
        for (const auto& h : bundle.hierarchy)
            if (obsolete.count(h.child) || obsolete.count(h.parent))
                f.add_sample(h.child + "," + h.parent);
        if (f.count) report.findings.push_back(std::move(f));
    }

    return report;
}

void apply_validation_drops(InputBundle& bundle, const ValidationReport& report) {
    const auto known = bundle.nodes.all_ids();
    const auto obsolete = bundle.nodes.obsolete_ids();

    std::erase_if(bundle.mappings, [&](const Mapping& m) {
        return !known.count(m.source) || !known.count(m.target);
    });
    std::erase_if(bundle.hierarchy, [&](const HierarchyEdge& h) {
        return !known.count(h.child) || !known.count(h.parent) ||
               obsolete.count(h.child) || obsolete.count(h.parent);
    });
    bundle.validated = !report.has_errors();
}

}  // namespace ontograft
