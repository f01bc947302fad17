#include "report/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace ontograft {

namespace {

double ratio_of(long long count, long long total) {
    if (total == 0) return 0.0;
    double r = static_cast<double>(count) / static_cast<double>(total);
    return std::floor(r * 100.0 + 0.5) / 100.0;  // half-up, 2 decimals
}

std::set<std::string> prefixes_of(const NodeTable& table) {
    std::set<std::string> out;
    for (const auto& r : table.records) out.insert(std::string(source_of(r.id)));
    return out;
}

}  // namespace

long long count_connected_subgraphs(const HierarchyEdgeSet& edges) {
    std::unordered_map<std::string, std::string> parent;
    std::function<std::string(std::string)> find = [&](std::string x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto ensure = [&](const std::string& x) {
        if (!parent.count(x)) parent[x] = x;
    };
    for (const auto& h : edges) {
        ensure(h.child);
        ensure(h.parent);
        parent[find(h.child)] = find(h.parent);
    }
    std::set<std::string> roots;
    for (const auto& [node, _] : parent) roots.insert(find(node));
    return static_cast<long long>(roots.size());
}

PipelineMetrics compute_metrics(const InputBundle& bundle, const DedupResult& dedup,
                                const ConnectivityResult& conn) {
    PipelineMetrics m;

    m.input.concept_sources = static_cast<long long>(prefixes_of(bundle.nodes).size());
    m.input.concepts = static_cast<long long>(bundle.nodes.size());
    m.input.concept_merges = 0;
    m.input.mappings = static_cast<long long>(bundle.mappings.size());
    m.input.connected_subgraphs = count_connected_subgraphs(bundle.hierarchy);
    m.input.hierarchy_edges = static_cast<long long>(bundle.hierarchy.size());

    m.output.concept_sources = static_cast<long long>(prefixes_of(dedup.domain_concepts).size());
    m.output.concepts = static_cast<long long>(dedup.domain_concepts.size());
    m.output.concept_merges = static_cast<long long>(dedup.canonical_merges.size());
    m.output.mappings = static_cast<long long>(dedup.domain_mappings.size());
    m.output.connected_subgraphs = count_connected_subgraphs(conn.domain_hierarchy);
    m.output.hierarchy_edges = static_cast<long long>(conn.domain_hierarchy.size());

    // Deduplication status partition; merged concepts are classified by the
    // source of their canonical target.
    std::unordered_map<std::string, std::string> canonical_of;
    for (const auto& x : dedup.canonical_merges) canonical_of.emplace(x.source, x.target);
    for (const auto& x : dedup.obsolete_merges) canonical_of.emplace(x.source, x.target);

    const std::string& seed = bundle.config.seed;
    for (const auto& r : bundle.nodes.records) {
        auto it = canonical_of.find(r.id);
        if (it != canonical_of.end()) {
            if (source_of(it->second) == seed)
                ++m.merged_to_seed.count;
            else
                ++m.merged_to_other.count;
        } else if (source_of(r.id) == seed) {
            ++m.seed.count;
        } else {
            ++m.unmapped.count;
        }
    }

    // Connectivity status partition. Seed and merged-to-seed concepts anchor
    // the domain hierarchy by construction; everything else is connected iff
    // its surviving name reached the DAG.
    m.connected_seed_plus_merged.count = m.seed.count + m.merged_to_seed.count;
    for (const auto& r : bundle.nodes.records) {
        auto it = canonical_of.find(r.id);
        const std::string& resolved = it != canonical_of.end() ? it->second : r.id;
        if (it == canonical_of.end() && source_of(r.id) == seed) continue;
        if (it != canonical_of.end() && source_of(it->second) == seed) continue;
        if (conn.connected.count(resolved))
            ++m.connected_other.count;
        else
            ++m.disconnected.count;
    }

    for (StatusCount* s : {&m.seed, &m.merged_to_seed, &m.merged_to_other, &m.unmapped,
                           &m.connected_seed_plus_merged, &m.connected_other, &m.disconnected})
        s->ratio = ratio_of(s->count, m.input.concepts);

    return m;
}

TableProfile profile_table(const std::string& name, const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    TableProfile profile;
    profile.table = name;
    profile.rows = static_cast<long long>(rows.size());
    for (std::size_t col = 0; col < header.size(); ++col) {
        ColumnProfile cp;
        cp.name = header[col];
        std::set<std::string> distinct;
        for (const auto& row : rows) {
            const std::string& cell = col < row.size() ? row[col] : std::string();
            if (cell.empty())
                ++cp.nulls;
            else
                distinct.insert(cell);
        }
        cp.distinct = static_cast<long long>(distinct.size());
        profile.columns.push_back(std::move(cp));
    }
    for (const auto& row : rows)
        for (const auto& cell : row)
            if (is_valid_concept_id(cell))
                ++profile.source_prefix_counts[std::string(source_of(cell))];
    return profile;
}

namespace {

using nlohmann::json;

json stage_json(const StageCounts& s) {
    return json{{"concept_sources", s.concept_sources},
                {"concepts", s.concepts},
                {"concept_merges", s.concept_merges},
                {"mappings", s.mappings},
                {"connected_subgraphs", s.connected_subgraphs},
                {"hierarchy_edges", s.hierarchy_edges}};
}

json status_json(const StatusCount& s) {
    return json{{"count", s.count}, {"ratio", s.ratio}};
}

std::string escape_html(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string format_ratio(double r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << r;
    return os.str();
}

}  // namespace

RenderedReport render_report(const PipelineMetrics& metrics,
                             const std::vector<TableProfile>& profiles,
                             const ValidationReport& validation,
                             const std::vector<AlignmentStep>& steps) {
    json doc;
    doc["metrics"]["input"] = stage_json(metrics.input);
    doc["metrics"]["output"] = stage_json(metrics.output);
    doc["metrics"]["status"] = {
        {"seed", status_json(metrics.seed)},
        {"merged_to_seed", status_json(metrics.merged_to_seed)},
        {"merged_to_other", status_json(metrics.merged_to_other)},
        {"unmapped", status_json(metrics.unmapped)},
        {"connected_seed_plus_merged", status_json(metrics.connected_seed_plus_merged)},
        {"connected_other", status_json(metrics.connected_other)},
        {"disconnected", status_json(metrics.disconnected)},
    };
    doc["metrics"]["durations_ms"] = metrics.durations_ms;

    doc["profiles"] = json::array();
    for (const auto& p : profiles) {
        json cols = json::array();
        for (const auto& c : p.columns)
            cols.push_back({{"name", c.name}, {"distinct", c.distinct}, {"nulls", c.nulls}});
        doc["profiles"].push_back({{"table", p.table},
                                   {"rows", p.rows},
                                   {"columns", cols},
                                   {"source_prefix_counts", p.source_prefix_counts}});
    }

    doc["alignment_steps"] = json::array();
    for (const auto& s : steps)
        doc["alignment_steps"].push_back({{"step_index", s.step_index},
                                          {"group_name", s.group_name},
                                          {"source", s.source},
                                          {"mappings_considered", s.mappings_considered},
                                          {"merges_produced", s.merges_produced},
                                          {"dropped_multi_target", s.dropped_multi_target}});

    doc["validation"] = json::array();
    for (const auto& f : validation.findings)
        doc["validation"].push_back(
            {{"check_id", f.check_id},
             {"severity", f.severity == Severity::Error ? "error" : "warning"},
             {"count", f.count},
             {"sample_rows", f.sample_rows}});

    std::ostringstream html;
    html << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
         << "<title>Ontology integration report</title>\n"
         << "<style>\n"
         << "body{font-family:sans-serif;margin:2em;color:#222;}\n"
         << "h1{border-bottom:2px solid #444;}\n"
         << "h2{margin-top:1.6em;}\n"
         << "table{border-collapse:collapse;margin:0.6em 0;}\n"
         << "th,td{border:1px solid #bbb;padding:4px 10px;text-align:left;}\n"
         << "th{background:#eee;}\ntd.num{text-align:right;}\n"
         << ".warning{color:#945400;}\n.error{color:#a00000;}\n"
         << "</style>\n</head>\n<body>\n<h1>Ontology integration report</h1>\n";

    html << "<h2>Overview</h2>\n<table>\n<tr><th>Metric</th><th>Input</th><th>Output</th></tr>\n";
    auto overview_row = [&](const char* label, long long in, long long out) {
        html << "<tr><td>" << label << "</td><td class=\"num\">" << in << "</td><td class=\"num\">"
             << out << "</td></tr>\n";
    };
    overview_row("Concept sources", metrics.input.concept_sources, metrics.output.concept_sources);
    overview_row("Concepts", metrics.input.concepts, metrics.output.concepts);
    overview_row("Concept merges", metrics.input.concept_merges, metrics.output.concept_merges);
    overview_row("Mappings", metrics.input.mappings, metrics.output.mappings);
    overview_row("Connected subgraphs", metrics.input.connected_subgraphs,
                 metrics.output.connected_subgraphs);
    overview_row("Hierarchy edges", metrics.input.hierarchy_edges,
                 metrics.output.hierarchy_edges);
    html << "</table>\n";

    html << "<h2>Concept status</h2>\n"
         << "<table>\n<tr><th>Stage</th><th>Concept set</th><th>Count</th><th>Ratio</th></tr>\n";
    auto status_row = [&](const char* stage, const char* label, const StatusCount& s) {
        html << "<tr><td>" << stage << "</td><td>" << label << "</td><td class=\"num\">" << s.count
             << "</td><td class=\"num\">" << format_ratio(s.ratio) << "</td></tr>\n";
    };
    status_row("Deduplication", "Seed", metrics.seed);
    status_row("Deduplication", "Merged to seed", metrics.merged_to_seed);
    status_row("Deduplication", "Merged to other", metrics.merged_to_other);
    status_row("Deduplication", "Unmapped", metrics.unmapped);
    status_row("Connectivity", "Seed + merged to seed", metrics.connected_seed_plus_merged);
    status_row("Connectivity", "Connected (other)", metrics.connected_other);
    status_row("Connectivity", "Disconnected", metrics.disconnected);
    html << "</table>\n";

    html << "<h2>Input profiles</h2>\n";
    for (const auto& p : profiles) {
        html << "<h3>" << escape_html(p.table) << " (" << p.rows << " rows)</h3>\n"
             << "<table>\n<tr><th>Column</th><th>Distinct</th><th>Nulls</th></tr>\n";
        for (const auto& c : p.columns)
            html << "<tr><td>" << escape_html(c.name) << "</td><td class=\"num\">" << c.distinct
                 << "</td><td class=\"num\">" << c.nulls << "</td></tr>\n";
        html << "</table>\n";
        if (!p.source_prefix_counts.empty()) {
            html << "<table>\n<tr><th>Source prefix</th><th>Id cells</th></tr>\n";
            for (const auto& [prefix, count] : p.source_prefix_counts)
                html << "<tr><td>" << escape_html(prefix) << "</td><td class=\"num\">" << count
                     << "</td></tr>\n";
            html << "</table>\n";
        }
    }

    html << "<h2>Alignment steps</h2>\n<table>\n"
         << "<tr><th>#</th><th>Group</th><th>Source</th><th>Considered</th>"
         << "<th>Merges</th><th>Held back (multi-target)</th></tr>\n";
    for (const auto& s : steps)
        html << "<tr><td class=\"num\">" << s.step_index << "</td><td>" << escape_html(s.group_name)
             << "</td><td>" << escape_html(s.source) << "</td><td class=\"num\">"
             << s.mappings_considered << "</td><td class=\"num\">" << s.merges_produced
             << "</td><td class=\"num\">" << s.dropped_multi_target << "</td></tr>\n";
    html << "</table>\n";

    html << "<h2>Connectivity</h2>\n<p>Connected subgraphs: "
         << metrics.input.connected_subgraphs << " &rarr; " << metrics.output.connected_subgraphs
         << "; hierarchy edges: " << metrics.input.hierarchy_edges << " &rarr; "
         << metrics.output.hierarchy_edges << ".</p>\n";

    html << "<h2>Validation findings</h2>\n";
    if (validation.findings.empty()) {
        html << "<p>No findings.</p>\n";
    } else {
        html << "<table>\n<tr><th>Check</th><th>Severity</th><th>Count</th><th>Samples</th></tr>\n";
        for (const auto& f : validation.findings) {
            std::string cls = f.severity == Severity::Error ? "error" : "warning";
            html << "<tr><td>" << escape_html(f.check_id) << "</td><td class=\"" << cls << "\">"
                 << (f.severity == Severity::Error ? "error" : "warning")
                 << "</td><td class=\"num\">" << f.count << "</td><td>";
            for (std::size_t i = 0; i < f.sample_rows.size(); ++i) {
                if (i) html << "<br>";
                html << escape_html(f.sample_rows[i]);
            }
            html << "</td></tr>\n";
        }
        html << "</table>\n";
    }

    html << "<h2>Stage durations</h2>\n<table>\n<tr><th>Stage</th><th>ms</th></tr>\n";
    for (const auto& [stage, ms] : metrics.durations_ms)
        html << "<tr><td>" << escape_html(stage) << "</td><td class=\"num\">" << ms
             << "</td></tr>\n";
    html << "</table>\n</body>\n</html>\n";

    RenderedReport out;
    out.html = html.str();
    out.json = doc.dump(2) + "\n";
    return out;
}

}  // namespace ontograft
