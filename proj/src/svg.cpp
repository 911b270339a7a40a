#include "persistlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace persistlab {

namespace {

std::optional<double> to_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 20, kMarginB = 50;

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b"};

struct Scale {
    double lo, hi;
    bool log_scale;
    double pix_lo, pix_hi;

    double operator()(double v) const {
        double t = log_scale ? (std::log(v) - std::log(lo)) /
                                   (std::log(hi) - std::log(lo))
                             : (v - lo) / (hi - lo);
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

void axes(std::ostringstream& svg, const Scale& sx, const Scale& sy,
          const std::string& xlabel, const std::string& ylabel) {
    svg << "<rect x='" << kMarginL << "' y='" << kMarginT << "' width='"
        << (kWidth - kMarginL - kMarginR) << "' height='"
        << (kHeight - kMarginT - kMarginB)
        << "' fill='none' stroke='#333' stroke-width='1'/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = i / 4.0;
        const double vx = sx.log_scale
                              ? sx.lo * std::pow(sx.hi / sx.lo, fx)
                              : sx.lo + fx * (sx.hi - sx.lo);
        const double vy = sy.log_scale
                              ? sy.lo * std::pow(sy.hi / sy.lo, fx)
                              : sy.lo + fx * (sy.hi - sy.lo);
        svg << "<text x='" << sx(vx) << "' y='" << (kHeight - kMarginB + 18)
            << "' font-size='11' text-anchor='middle'>" << num(vx) << "</text>\n";
        svg << "<text x='" << (kMarginL - 8) << "' y='" << (sy(vy) + 4)
            << "' font-size='11' text-anchor='end'>" << num(vy) << "</text>\n";
    }
    svg << "<text x='" << (kMarginL + (kWidth - kMarginL - kMarginR) / 2)
        << "' y='" << (kHeight - 10)
        << "' font-size='13' text-anchor='middle'>" << xlabel << "</text>\n";
    svg << "<text x='16' y='" << (kMarginT + (kHeight - kMarginT - kMarginB) / 2)
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
        << (kMarginT + (kHeight - kMarginT - kMarginB) / 2) << ")'>" << ylabel
        << "</text>\n";
}

std::string viridis(double t) {
    // few-anchor approximation of the viridis ramp
    static const double anchors[][3] = {{68, 1, 84},    {59, 82, 139},
                                        {33, 145, 140}, {94, 201, 98},
                                        {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double f = t - i;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(anchors[i][0] + f * (anchors[i + 1][0] - anchors[i][0])),
                  static_cast<int>(anchors[i][1] + f * (anchors[i + 1][1] - anchors[i][1])),
                  static_cast<int>(anchors[i][2] + f * (anchors[i + 1][2] - anchors[i][2])));
    return buf;
}

std::string render_line(const CsvTable& table) {
    std::vector<std::vector<double>> cols(table.columns.size());
    for (const auto& row : table.rows) {
        std::vector<double> vals;
        vals.reserve(row.size());
        bool ok = true;
        for (const auto& cell : row) {
            auto v = to_double(cell);
            if (!v) {
                ok = false;
                break;
            }
            vals.push_back(*v);
        }
        if (!ok) continue;  // rows with error cells are not plottable
        for (std::size_t c = 0; c < vals.size(); ++c) cols[c].push_back(vals[c]);
    }
    if (cols.empty() || cols[0].size() < 2)
        throw IoError("line plot needs at least two numeric rows");

    auto range = [](const std::vector<double>& v) {
        auto [mn, mx] = std::minmax_element(v.begin(), v.end());
        double lo = *mn, hi = *mx;
        if (lo == hi) {
            lo -= 1;
            hi += 1;
        }
        return std::pair<double, double>{lo, hi};
    };
    const auto [xlo, xhi] = range(cols[0]);
    double ylo = cols[1][0], yhi = cols[1][0];
    for (std::size_t c = 1; c < cols.size(); ++c) {
        const auto [lo, hi] = range(cols[c]);
        ylo = std::fmin(ylo, lo);
        yhi = std::fmax(yhi, hi);
    }
    if (ylo == yhi) {
        ylo -= 1;
        yhi += 1;
    }

    const Scale sx{xlo, xhi, false, static_cast<double>(kMarginL),
                   static_cast<double>(kWidth - kMarginR)};
    const Scale sy{ylo, yhi, false, static_cast<double>(kHeight - kMarginB),
                   static_cast<double>(kMarginT)};

    std::ostringstream svg;
    axes(svg, sx, sy, table.columns[0], table.columns.size() == 2
                                            ? table.columns[1]
                                            : std::string("value"));
    for (std::size_t c = 1; c < cols.size(); ++c) {
        svg << "<polyline fill='none' stroke='"
            << kSeriesColors[(c - 1) % 6] << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < cols[0].size(); ++i)
            svg << num(sx(cols[0][i])) << "," << num(sy(cols[c][i])) << " ";
        svg << "'/>\n";
        svg << "<text x='" << (kWidth - kMarginR - 6) << "' y='"
            << (kMarginT + 16 * static_cast<int>(c)) << "' font-size='12' "
            << "text-anchor='end' fill='" << kSeriesColors[(c - 1) % 6] << "'>"
            << table.columns[c] << "</text>\n";
    }
    return svg.str();
}

std::string render_heatmap(const CsvTable& table) {
    // lambda,a,b,tc layout: x = a, y = b, color = tc, log-log axes
    if (table.columns.size() < 4)
        throw IoError("heatmap needs the lambda,a,b,tc layout");
    std::vector<double> as, bs, tcs;
    for (const auto& row : table.rows) {
        const auto a = to_double(row[1]), b = to_double(row[2]),
                   tc = to_double(row[3]);
        if (!a || !b || !tc) continue;
        as.push_back(*a);
        bs.push_back(*b);
        tcs.push_back(*tc);
    }
    if (tcs.empty()) throw IoError("heatmap needs at least one numeric cell");

    auto uniq = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const std::vector<double> ua = uniq(as), ub = uniq(bs);
    const double tlo = *std::min_element(tcs.begin(), tcs.end());
    const double thi = *std::max_element(tcs.begin(), tcs.end());

    const double pad = std::pow(ua.size() > 1 ? ua[1] / ua[0] : 2.0, 0.5);
    const Scale sx{ua.front() / pad, ua.back() * pad, true,
                   static_cast<double>(kMarginL),
                   static_cast<double>(kWidth - kMarginR)};
    const double pady = std::pow(ub.size() > 1 ? ub[1] / ub[0] : 2.0, 0.5);
    const Scale sy{ub.front() / pady, ub.back() * pady, true,
                   static_cast<double>(kHeight - kMarginB),
                   static_cast<double>(kMarginT)};

    std::ostringstream svg;
    for (std::size_t i = 0; i < tcs.size(); ++i) {
        const double x0 = sx(as[i] / pad), x1 = sx(as[i] * pad);
        const double y0 = sy(bs[i] * pady), y1 = sy(bs[i] / pady);
        const double t = thi > tlo ? (tcs[i] - tlo) / (thi - tlo) : 0.5;
        svg << "<rect x='" << num(x0) << "' y='" << num(y0) << "' width='"
            << num(x1 - x0) << "' height='" << num(y1 - y0) << "' fill='"
            << viridis(t) << "'/>\n";
    }
    axes(svg, sx, sy, table.columns[1], table.columns[2]);
    svg << "<text x='" << (kWidth - kMarginR - 6) << "' y='" << (kMarginT + 16)
        << "' font-size='12' text-anchor='end'>" << table.columns[3] << " in ["
        << num(tlo) << ", " << num(thi) << "]</text>\n";
    return svg.str();
}

}  // namespace

std::string render_svg(const CsvTable& table, PlotKind kind) {
    if (table.columns.size() < 2)
        throw IoError("plot needs at least two columns");
    if (kind == PlotKind::Auto) {
        kind = (table.columns.size() == 4 && table.columns[0] == "lambda" &&
                table.columns[1] == "a" && table.columns[2] == "b")
                   ? PlotKind::Heatmap
                   : PlotKind::Line;
    }

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "' viewBox='0 0 " << kWidth << " "
        << kHeight << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    svg << (kind == PlotKind::Heatmap ? render_heatmap(table)
                                      : render_line(table));
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace persistlab
