#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "persistlab/errors.hpp"

namespace persistlab {

inline constexpr const char* kToolName = "persist-lab";
inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest round-trip decimal form of a double (%.17g), locale-independent.
std::string format_double(double v);

/// Writes the self-describing comment header every CSV starts with:
///   # persist-lab <version>
///   # config <one-line JSON echo of the effective configuration>
///   # seed <master seed>
void write_csv_header(std::ostream& out, const std::string& config_json,
                      std::uint64_t seed);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

/// CSV (as produced by this tool) parsed back: comment lines are kept
/// separately, the first non-comment line is the column header.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// Parses CSV text; throws IoError on structural problems (missing header,
/// ragged rows, empty body).
CsvTable parse_csv(const std::string& text);

}  // namespace persistlab
