#include "ontograft.h"

#include <new>
#include <string>

#include "pipeline.hpp"

struct og_run {
    ontograft::RunOptions options;
    ontograft::RunOutcome outcome;
    bool executed = false;
};

namespace {

long long status_value(const ontograft::StatusCount& s, const std::string& field, bool& ok) {
    if (field == "count") return s.count;
    if (field == "ratio_x100") return static_cast<long long>(s.ratio * 100.0 + 0.5);
    ok = false;
    return 0;
}

long long stage_value(const ontograft::StageCounts& s, const std::string& field, bool& ok) {
    if (field == "concept_sources") return s.concept_sources;
    if (field == "concepts") return s.concepts;
    if (field == "concept_merges") return s.concept_merges;
    if (field == "mappings") return s.mappings;
    if (field == "connected_subgraphs") return s.connected_subgraphs;
    if (field == "hierarchy_edges") return s.hierarchy_edges;
    ok = false;
    return 0;
}

}  // namespace

extern "C" {

const char* og_version(void) { return "0.1.0"; }

og_run* og_run_create(const char* input_dir, const char* config_path, const char* output_dir,
                      unsigned flags) {
    if (!input_dir || !config_path || !output_dir) return nullptr;
    auto* run = new (std::nothrow) og_run();
    if (!run) return nullptr;
    run->options.input_dir = input_dir;
    run->options.config_path = config_path;
    run->options.output_dir = output_dir;
    run->options.fail_on_warning = (flags & OG_FLAG_FAIL_ON_WARNING) != 0;
    run->options.emit_report = (flags & OG_FLAG_NO_REPORT) == 0;
    return run;
}

void og_run_free(og_run* run) { delete run; }

og_status og_run_execute(og_run* run) {
    if (!run) return OG_ERR_ARGUMENT;
    try {
        run->outcome = ontograft::run(run->options);
    } catch (const std::exception& e) {
        run->outcome.status = ontograft::RunStatus::InternalError;
        run->outcome.diagnostic = e.what();
    }
    run->executed = true;
    switch (run->outcome.status) {
        case ontograft::RunStatus::Ok: return OG_OK;
        case ontograft::RunStatus::ValidationFailed: return OG_ERR_VALIDATION;
        case ontograft::RunStatus::WarningsRejected: return OG_ERR_WARNINGS;
        case ontograft::RunStatus::InternalError: return OG_ERR_INTERNAL;
    }
    return OG_ERR_INTERNAL;
}

int og_run_exit_code(const og_run* run) {
    if (!run || !run->executed) return static_cast<int>(ontograft::RunStatus::InternalError);
    return static_cast<int>(run->outcome.status);
}

const char* og_run_diagnostic(const og_run* run) {
    if (!run) return "";
    return run->outcome.diagnostic.c_str();
}

og_status og_run_metric(const og_run* run, const char* key, long long* value) {
    if (!run || !key || !value || !run->executed) return OG_ERR_ARGUMENT;
    std::string k(key);
    auto dot = k.find('.');
    if (dot == std::string::npos) return OG_ERR_ARGUMENT;
    std::string head = k.substr(0, dot), rest = k.substr(dot + 1);
    bool ok = true;
    const auto& m = run->outcome.metrics;
    if (head == "input") {
        *value = stage_value(m.input, rest, ok);
    } else if (head == "output") {
        *value = stage_value(m.output, rest, ok);
    } else if (head == "status") {
        auto dot2 = rest.find('.');
        if (dot2 == std::string::npos) return OG_ERR_ARGUMENT;
        std::string name = rest.substr(0, dot2), field = rest.substr(dot2 + 1);
        const ontograft::StatusCount* s = nullptr;
        if (name == "seed") s = &m.seed;
        else if (name == "merged_to_seed") s = &m.merged_to_seed;
        else if (name == "merged_to_other") s = &m.merged_to_other;
        else if (name == "unmapped") s = &m.unmapped;
        else if (name == "connected_seed_plus_merged") s = &m.connected_seed_plus_merged;
        else if (name == "connected_other") s = &m.connected_other;
        else if (name == "disconnected") s = &m.disconnected;
        if (!s) return OG_ERR_ARGUMENT;
        *value = status_value(*s, field, ok);
    } else {
        return OG_ERR_ARGUMENT;
    }
    return ok ? OG_OK : OG_ERR_ARGUMENT;
}

size_t og_run_finding_count(const og_run* run) {
    if (!run) return 0;
    return run->outcome.validation.findings.size();
}

og_status og_run_finding(const og_run* run, size_t index, const char** check_id,
                         og_severity* severity, long long* count) {
    if (!run || index >= run->outcome.validation.findings.size()) return OG_ERR_ARGUMENT;
    const auto& f = run->outcome.validation.findings[index];
    if (check_id) *check_id = f.check_id.c_str();
    if (severity)
        *severity = f.severity == ontograft::Severity::Error ? OG_SEVERITY_ERROR
                                                             : OG_SEVERITY_WARNING;
    if (count) *count = f.count;
    return OG_OK;
}

}  // extern "C"
