#include "ingest/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ontograft::csv {

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

// One record, honoring quoted cells that may span lines.
bool parse_record(std::istream& in, char delim, std::vector<std::string>& out) {
    out.clear();
    std::string cell;
    bool in_quotes = false;
    bool any = false;
    int ch;
    while ((ch = in.get()) != EOF) {
        any = true;
        char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    cell.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == delim) {
            out.push_back(std::move(cell));
            cell.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            out.push_back(std::move(cell));
            return true;
        } else if (c == '\n') {
            out.push_back(std::move(cell));
            return true;
        } else {
            cell.push_back(c);
        }
    }
    if (!any) return false;
    out.push_back(std::move(cell));
    return true;
}

}  // namespace

Table read(std::istream& in, char delimiter) {
    if (delimiter == 0) {
        // sniff from the first line without consuming it
        std::string first;
        auto pos = in.tellg();
        std::getline(in, first);
        delimiter = first.find('\t') != std::string::npos ? '\t' : ',';
        in.clear();
        in.seekg(pos);
    }
    Table table;
    std::vector<std::string> record;
    if (!parse_record(in, delimiter, record)) return table;
    table.header = record;
    while (parse_record(in, delimiter, record)) {
        if (record.size() == 1 && record[0].empty()) continue;  // blank line
        table.rows.push_back(record);
    }
    return table;
}

Table read_file(const std::string& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return read(in, delimiter);
}

std::string escape_cell(const std::string& cell, char delimiter) {
    bool needs_quotes = cell.find(delimiter) != std::string::npos ||
                        cell.find('"') != std::string::npos ||
                        cell.find('\n') != std::string::npos ||
                        cell.find('\r') != std::string::npos;
    if (!needs_quotes) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

void write(std::ostream& out, const Table& table, char delimiter) {
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.put(delimiter);
            out << escape_cell(row[i], delimiter);
        }
        out.put('\n');
    };
    emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
}

}  // namespace ontograft::csv
