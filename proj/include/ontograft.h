/* ontograft: C API for the ontology integration pipeline.
 *
 * A run deduplicates knowledge-graph concepts through priority-ordered
 * mapping alignment and assembles the survivors into a single seed-rooted
 * DAG hierarchy, writing the output tables and an HTML/JSON report.
 *
 * All handles are opaque; every string returned by the library is owned by
 * the handle it came from and stays valid until that handle is freed.
 */
#ifndef ONTOGRAFT_H
#define ONTOGRAFT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct og_run og_run;

typedef enum og_status {
    OG_OK = 0,
    OG_ERR_ARGUMENT = 1,   /* bad handle or parameter */
    OG_ERR_VALIDATION = 2, /* parse failure or validation errors */
    OG_ERR_WARNINGS = 3,   /* warnings rejected by OG_FLAG_FAIL_ON_WARNING */
    OG_ERR_INTERNAL = 4,   /* invariant violation, nothing written */
} og_status;

enum {
    OG_FLAG_FAIL_ON_WARNING = 1 << 0,
    OG_FLAG_NO_REPORT = 1 << 1,
};

typedef enum og_severity {
    OG_SEVERITY_WARNING = 0,
    OG_SEVERITY_ERROR = 1,
} og_severity;

const char* og_version(void);

/* Creates a run handle. input_dir must contain nodes.csv, mappings.csv and
 * edges_hierarchy.csv; config_path names the alignment config JSON. Returns
 * NULL only on allocation failure. */
og_run* og_run_create(const char* input_dir, const char* config_path, const char* output_dir,
                      unsigned flags);

void og_run_free(og_run* run);

/* Executes the full pipeline. Output tables and the report are staged and
 * moved into output_dir only on success. */
og_status og_run_execute(og_run* run);

/* Process exit code matching the CLI contract: 0 ok, 1 validation errors,
 * 2 warnings rejected, 3 internal error. */
int og_run_exit_code(const og_run* run);

/* Human-readable diagnostic of the last execute; empty string on success. */
const char* og_run_diagnostic(const og_run* run);

/* Metric lookup by dotted key, e.g. "input.concepts", "output.concept_merges",
 * "status.merged_to_seed.count", "status.disconnected.count".
 * Returns OG_OK and stores the value, or OG_ERR_ARGUMENT for unknown keys. */
og_status og_run_metric(const og_run* run, const char* key, long long* value);

/* Validation findings recorded by the run. */
size_t og_run_finding_count(const og_run* run);
og_status og_run_finding(const og_run* run, size_t index, const char** check_id,
                         og_severity* severity, long long* count);

#ifdef __cplusplus
}
#endif

#endif /* ONTOGRAFT_H */
