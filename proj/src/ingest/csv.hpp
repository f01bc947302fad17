#pragma once
// Minimal delimited-table reader/writer. RFC-4180 quoting; comma by
// default, tab accepted.

#include <iosfwd>
#include <string>
#include <vector>

namespace ontograft::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

// Reads the whole stream. Detects the delimiter from the header row when
// `delimiter` is 0 (tab if present, else comma). Cells are not trimmed.
Table read(std::istream& in, char delimiter = 0);
Table read_file(const std::string& path, char delimiter = 0);

std::string escape_cell(const std::string& cell, char delimiter);
void write(std::ostream& out, const Table& table, char delimiter = ',');

}  // namespace ontograft::csv
