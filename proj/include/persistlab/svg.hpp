#pragma once

#include <string>

#include "persistlab/csv.hpp"

namespace persistlab {

enum class PlotKind { Auto, Line, Heatmap };

/// Renders a CSV produced by this tool into a self-contained SVG string.
/// Column layout picks the rendering: lambda,a,b,tc becomes a log-log
/// heatmap; two-or-more-column numeric tables become polylines of each value
/// column against the first. Throws IoError on malformed or empty input.
std::string render_svg(const CsvTable& table, PlotKind kind = PlotKind::Auto);

}  // namespace persistlab
