// integrate: run the full ontology integration pipeline from the shell.
//
// Links only the C API so it exercises the same surface as any other
// embedding client.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "ontograft.h"

int main(int argc, char** argv) {
    CLI::App app{"Deduplicate knowledge-graph concepts and assemble a seed-rooted DAG hierarchy"};
    app.name("integrate");

    std::string input_dir, config_path, output_dir;
    bool fail_on_warning = false;
    bool no_report = false;

    app.add_option("--input", input_dir,
                   "Directory with nodes.csv, mappings.csv, edges_hierarchy.csv")
        ->required();
    app.add_option("--config", config_path, "Alignment config (JSON)")->required();
    app.add_option("--output", output_dir, "Output directory")->required();
    app.add_flag("--fail-on-warning", fail_on_warning, "Exit 2 on validation warnings");
    app.add_flag("--no-report", no_report, "Skip the HTML/JSON report");

    CLI11_PARSE(app, argc, argv);

    unsigned flags = 0;
    if (fail_on_warning) flags |= OG_FLAG_FAIL_ON_WARNING;
    if (no_report) flags |= OG_FLAG_NO_REPORT;

    og_run* run = og_run_create(input_dir.c_str(), config_path.c_str(), output_dir.c_str(), flags);
    if (!run) {
        std::fprintf(stderr, "integrate: out of memory\n");
        return 3;
    }

    og_status status = og_run_execute(run);
    int exit_code = og_run_exit_code(run);

    if (status != OG_OK) {
        std::fprintf(stderr, "integrate: %s\n", og_run_diagnostic(run));
    } else {
        long long in_concepts = 0, out_concepts = 0, merges = 0, subgraphs = 0;
        og_run_metric(run, "input.concepts", &in_concepts);
        og_run_metric(run, "output.concepts", &out_concepts);
        og_run_metric(run, "output.concept_merges", &merges);
        og_run_metric(run, "output.connected_subgraphs", &subgraphs);
        std::printf("concepts %lld -> %lld, merges %lld, connected subgraphs %lld\n", in_concepts,
                    out_concepts, merges, subgraphs);
        size_t findings = og_run_finding_count(run);
        if (findings) std::printf("validation findings: %zu (see report)\n", findings);
    }

    og_run_free(run);
    return exit_code;
}
