#include "persistlab/csv.hpp"

#include <cstdio>
#include <sstream>

namespace persistlab {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv_header(std::ostream& out, const std::string& config_json,
                      std::uint64_t seed) {
    out << "# " << kToolName << " " << kToolVersion << "\n";
    out << "# config " << config_json << "\n";
    out << "# seed " << seed << "\n";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ",";
        out << cells[i];
    }
    out << "\n";
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            table.comments.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (table.columns.empty()) {
            table.columns = std::move(cells);
        } else {
            if (cells.size() != table.columns.size())
                throw IoError("CSV row has " + std::to_string(cells.size()) +
                              " cells, expected " +
                              std::to_string(table.columns.size()));
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.columns.empty()) throw IoError("CSV has no header row");
    if (table.rows.empty()) throw IoError("CSV has no data rows");
    return table;
}

}  // namespace persistlab
