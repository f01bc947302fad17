#pragma once
// End-to-end run: ingest -> dedup -> connect -> report, with atomic output
// staging. This is the surface the C API and the CLI sit on.

#include <filesystem>
#include <string>

#include "connect/connect.hpp"
#include "dedup/dedup.hpp"
#include "ingest/ingest.hpp"
#include "report/report.hpp"

namespace ontograft {

struct RunOptions {
    std::filesystem::path input_dir;    // nodes.csv, mappings.csv, edges_hierarchy.csv
    std::filesystem::path config_path;  // config.json
    std::filesystem::path output_dir;
    bool fail_on_warning = false;
    bool emit_report = true;
};

// Exit codes of a run.
//   0 success
//   1 parse failure or validation errors, nothing written
//   2 validation warnings with fail_on_warning set, nothing written
//   3 internal invariant violation (output hierarchy not a DAG)
enum class RunStatus : int {
    Ok = 0,
    ValidationFailed = 1,
    WarningsRejected = 2,
    InternalError = 3,
};

struct RunOutcome {
    RunStatus status = RunStatus::Ok;
    std::string diagnostic;  // human-readable, empty on success
    PipelineMetrics metrics;
    ValidationReport validation;
};

RunOutcome run(const RunOptions& options);

}  // namespace ontograft
