#pragma once
// Input parsing and the pre-run validation check catalogue (v1..v6).

#include <algorithm>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace ontograft {

enum class ParseErrorKind {
    MalformedRow,
    BadConceptId,
    DuplicateId,
    SelfEdge,
    MissingColumn,
    SeedNotFirst,
    DuplicateSource,
    OverlappingGroups,
    EmptyGroup,
    BadConfig,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ParseErrorKind kind() const { return kind_; }

private:
    ParseErrorKind kind_;
};

enum class Severity { Warning, Error };

struct Finding {
    std::string check_id;
    Severity severity = Severity::Warning;
    long long count = 0;
    std::vector<std::string> sample_rows;  // the 10 smallest, sorted

    // Keeps the lexicographically smallest samples so the retained set does
    // not depend on input row order.
    void add_sample(const std::string& row) {
        ++count;
        auto it = std::lower_bound(sample_rows.begin(), sample_rows.end(), row);
        if (sample_rows.size() >= 10) {
            if (it == sample_rows.end()) return;
            sample_rows.pop_back();
            it = std::lower_bound(sample_rows.begin(), sample_rows.end(), row);
        }
        sample_rows.insert(it, row);
    }
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool has_errors() const;
    long long total(const std::string& check_id) const;
};

struct InputBundle {
    NodeTable nodes;
    MappingSet mappings;
    HierarchyEdgeSet hierarchy;
    AlignmentConfig config;
    bool validated = false;
};

// report, when given, collects ingestion warnings (duplicate rows,
// rejected reflexive mappings).
NodeTable parse_nodes(std::istream& in, ValidationReport* report = nullptr);
MappingSet parse_mappings(std::istream& in, ValidationReport* report = nullptr);
HierarchyEdgeSet parse_hierarchy(std::istream& in, ValidationReport* report = nullptr);
AlignmentConfig parse_config(std::istream& in);

// Runs the fixed catalogue:
//   v1 dangling mapping/hierarchy endpoints        (Warning)
//   v2 source prefix absent from config.sources    (Error)
//   v3 relation tag covered by no group            (Warning)
//   v4 per-source hierarchy cycle                  (Error)
//   v5 nonempty per-source hierarchy without root  (Error)
//   v6 hierarchy edge touching an obsolete concept (Warning)
ValidationReport validate_inputs(const InputBundle& bundle);

// Drops the rows flagged by v1 and v6 so the pipeline only sees endpoints
// that exist and current-concept hierarchy edges. Marks the bundle
// validated when the report has no errors.
void apply_validation_drops(InputBundle& bundle, const ValidationReport& report);

}  // namespace ontograft
