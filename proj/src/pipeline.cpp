#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "ingest/csv.hpp"

namespace ontograft {

namespace fs = std::filesystem;

namespace {

using Rows = std::vector<std::vector<std::string>>;

struct OutputTable {
    std::string filename;
    std::vector<std::string> header;
    Rows rows;
};

void canonical_sort(Rows& rows) { std::sort(rows.begin(), rows.end()); }

std::string pad_index(std::size_t index) {
    std::string s = std::to_string(index);
    while (s.size() < 4) s.insert(s.begin(), '0');
    return s;
}

void write_table(const fs::path& path, const OutputTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    csv::Table t;
    t.header = table.header;
    t.rows = table.rows;
    csv::write(out, t);
}

long long elapsed_ms(std::chrono::steady_clock::time_point since) {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now() - since).count();
}

std::string summarize(const ValidationReport& report, Severity severity) {
    std::ostringstream os;
    for (const auto& f : report.findings) {
        if (f.severity != severity) continue;
        os << f.check_id << " (" << f.count << ")";
        for (const auto& s : f.sample_rows) os << "\n  " << s;
        os << "\n";
    }
    return os.str();
}

}  // namespace

RunOutcome run(const RunOptions& options) {
    RunOutcome outcome;
    auto started = std::chrono::steady_clock::now();

    InputBundle bundle;
    try {
        {
            std::ifstream in(options.input_dir / "nodes.csv", std::ios::binary);
            if (!in) throw std::runtime_error("missing nodes.csv in " + options.input_dir.string());
            bundle.nodes = parse_nodes(in, &outcome.validation);
        }
        {
            std::ifstream in(options.input_dir / "mappings.csv", std::ios::binary);
            if (!in)
                throw std::runtime_error("missing mappings.csv in " + options.input_dir.string());
            bundle.mappings = parse_mappings(in, &outcome.validation);
        }
        {
            std::ifstream in(options.input_dir / "edges_hierarchy.csv", std::ios::binary);
            if (!in)
                throw std::runtime_error("missing edges_hierarchy.csv in " +
                                         options.input_dir.string());
            bundle.hierarchy = parse_hierarchy(in, &outcome.validation);
        }
        {
            std::ifstream in(options.config_path, std::ios::binary);
            if (!in) throw std::runtime_error("missing config " + options.config_path.string());
            bundle.config = parse_config(in);
        }
    } catch (const std::exception& e) {
        outcome.status = RunStatus::ValidationFailed;
        outcome.diagnostic = e.what();
        return outcome;
    }
    long long ingest_ms = elapsed_ms(started);

    auto catalogue = validate_inputs(bundle);
    outcome.validation.findings.insert(outcome.validation.findings.end(),
                                       catalogue.findings.begin(), catalogue.findings.end());
    if (outcome.validation.has_errors()) {
        outcome.status = RunStatus::ValidationFailed;
        outcome.diagnostic = "validation errors:\n" + summarize(outcome.validation, Severity::Error);
        return outcome;
    }
    if (options.fail_on_warning && !outcome.validation.findings.empty()) {
        outcome.status = RunStatus::WarningsRejected;
        outcome.diagnostic =
            "validation warnings (fail-on-warning set):\n" +
            summarize(outcome.validation, Severity::Warning);
        return outcome;
    }
    apply_validation_drops(bundle, catalogue);

    auto dedup_started = std::chrono::steady_clock::now();
    DedupResult dedup = deduplicate(bundle);
    outcome.validation.findings.insert(outcome.validation.findings.end(),
                                       dedup.notes.findings.begin(), dedup.notes.findings.end());
    long long dedup_ms = elapsed_ms(dedup_started);

    auto connect_started = std::chrono::steady_clock::now();
    ConnectivityResult conn =
        connect_concepts(dedup.unmerged, bundle.hierarchy, dedup.canonical_merges, bundle.config);
    Path cycle;
    if (!verify_dag(conn.domain_hierarchy, &cycle)) {
        std::string witness;
        for (const auto& id : cycle) witness += (witness.empty() ? "" : " -> ") + id;
        outcome.status = RunStatus::InternalError;
        outcome.diagnostic = "output hierarchy is not a DAG: " + witness;
        return outcome;
    }
    long long connect_ms = elapsed_ms(connect_started);

    auto report_started = std::chrono::steady_clock::now();
    outcome.metrics = compute_metrics(bundle, dedup, conn);

    // Output tables in canonical (lexicographic, all columns) sort.
    std::vector<OutputTable> tables;
    {
        OutputTable t{"merges.csv", {"source_id", "target_id"}, {}};
        for (const auto& x : dedup.canonical_merges) t.rows.push_back({x.source, x.target});
        tables.push_back(std::move(t));
    }
    {
        OutputTable t{"merges_obsolete.csv", {"source_id", "target_id"}, {}};
        for (const auto& x : dedup.obsolete_merges) t.rows.push_back({x.source, x.target});
        tables.push_back(std::move(t));
    }
    {
        OutputTable t{"nodes_domain.csv", {"default_id"}, {}};
        for (const auto& r : dedup.domain_concepts.records) t.rows.push_back({r.id});
        tables.push_back(std::move(t));
    }
    {
        OutputTable t{"nodes_unmapped.csv", {"default_id"}, {}};
        for (const auto& id : dedup.unmerged) t.rows.push_back({id});
        tables.push_back(std::move(t));
    }
    {
        OutputTable t{"mappings_domain.csv", {"source_id", "target_id", "relation", "provenance"},
                      {}};
        for (const auto& m : dedup.domain_mappings)
            t.rows.push_back({m.source, m.target, m.relation, m.provenance});
        tables.push_back(std::move(t));
    }
    {
        OutputTable t{"alignment_steps.csv",
                      {"step_index", "group_name", "source", "mappings_considered",
                       "merges_produced", "dropped_multi_target"},
                      {}};
        for (const auto& s : dedup.steps)
            t.rows.push_back({pad_index(s.step_index), s.group_name, s.source,
                              std::to_string(s.mappings_considered),
                              std::to_string(s.merges_produced),
                              std::to_string(s.dropped_multi_target)});
        tables.push_back(std::move(t));
    }
    {
        OutputTable t{"edges_hierarchy_domain.csv", {"source_id", "target_id"}, {}};
        for (const auto& h : conn.domain_hierarchy) t.rows.push_back({h.child, h.parent});
        tables.push_back(std::move(t));
    }
    {
        OutputTable t{"connectivity_attachments.csv",
                      {"concept", "anchor", "original_path_length", "pruned_path_length"},
                      {}};
        for (const auto& a : conn.attachments)
            t.rows.push_back({a.concept_id, a.anchor, std::to_string(a.original_path_length),
                              std::to_string(a.pruned_path_length)});
        tables.push_back(std::move(t));
    }
    for (auto& t : tables) canonical_sort(t.rows);

    std::vector<TableProfile> profiles;
    {
        Rows rows;
        for (const auto& r : bundle.nodes.records)
            rows.push_back({r.id, r.obsolete ? "true" : "false"});
        profiles.push_back(profile_table("nodes.csv", {"default_id", "obsolete"}, rows));
        rows.clear();
        for (const auto& m : bundle.mappings)
            rows.push_back({m.source, m.target, m.relation, m.provenance});
        profiles.push_back(profile_table(
            "mappings.csv", {"source_id", "target_id", "relation", "provenance"}, rows));
        rows.clear();
        for (const auto& h : bundle.hierarchy) rows.push_back({h.child, h.parent});
        profiles.push_back(
            profile_table("edges_hierarchy.csv", {"source_id", "target_id"}, rows));
    }
    for (const auto& t : tables) profiles.push_back(profile_table(t.filename, t.header, t.rows));

    outcome.metrics.durations_ms["ingest"] = ingest_ms;
    outcome.metrics.durations_ms["dedup"] = dedup_ms;
    outcome.metrics.durations_ms["connect"] = connect_ms;
    outcome.metrics.durations_ms["report"] = elapsed_ms(report_started);
    outcome.metrics.durations_ms["total"] = elapsed_ms(started);

    RenderedReport rendered;
    if (options.emit_report)
        rendered = render_report(outcome.metrics, profiles, outcome.validation, dedup.steps);

    // Stage everything, then move into place; a failed run leaves no outputs.
    fs::path staging = options.output_dir;
    staging += ".staging";
    std::error_code ec;
    fs::remove_all(staging, ec);
    fs::create_directories(staging);
    try {
        for (const auto& t : tables) write_table(staging / t.filename, t);
        if (options.emit_report) {
            fs::create_directories(staging / "report");
            std::ofstream html(staging / "report" / "index.html", std::ios::binary);
            html << rendered.html;
            std::ofstream json(staging / "report" / "metrics.json", std::ios::binary);
            json << rendered.json;
        }
        if (!fs::exists(options.output_dir)) {
            fs::rename(staging, options.output_dir);
        } else {
            for (const auto& entry : fs::recursive_directory_iterator(staging)) {
                if (!entry.is_regular_file()) continue;
                fs::path rel = fs::relative(entry.path(), staging);
                fs::create_directories((options.output_dir / rel).parent_path());
                fs::rename(entry.path(), options.output_dir / rel);
            }
            fs::remove_all(staging);
        }
    } catch (const std::exception& e) {
        fs::remove_all(staging, ec);
        outcome.status = RunStatus::InternalError;
        outcome.diagnostic = e.what();
        return outcome;
    }

    return outcome;
}

}  // namespace ontograft
