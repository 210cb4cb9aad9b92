#ifndef HNWSN_SVG_PLOT_HPP
#define HNWSN_SVG_PLOT_HPP

// Self-contained SVG line charts from CSV tables.
//
// Tick rule: steps are drawn from {1, 2, 2.5, 5} x 10^k. The smallest step
// giving at most 8 ticks inside the padded data range is used; if that leaves
// fewer than 5 ticks the axis is widened by one step at a time, upper end
// first, until it holds 5.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hnwsn/io.hpp"

namespace hnwsn {

struct PlotSpec
{
    std::string x_column = "N";
    std::vector<std::string> y_columns{"p_hat"};
    std::string series_key = "model";
    std::string title = "Detection probability vs number of sensors";
    std::string x_label = "Number of sensors";
    std::string y_label = "Detection probability";
    int width = 800;
    int height = 500;
};

struct AxisTicks
{
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.2;
    std::vector<double> values;
};

inline AxisTicks nice_ticks(double data_lo, double data_hi)
{
    if (!std::isfinite(data_lo) || !std::isfinite(data_hi) || data_lo > data_hi)
        throw std::invalid_argument("nice_ticks: invalid data range");
    if (data_hi == data_lo) {
        const double pad = data_lo == 0.0 ? 1.0 : 0.5 * std::fabs(data_lo);
        data_lo -= pad;
        data_hi += pad;
    }
    const double span = data_hi - data_lo;
    static constexpr double mantissas[] = {1.0, 2.0, 2.5, 5.0};

    auto count_in = [](double lo, double hi, double step) {
        return static_cast<long>(std::floor(hi / step + 1e-9) - std::ceil(lo / step - 1e-9)) + 1;
    };

    double step = 0.0;
    for (int e = static_cast<int>(std::floor(std::log10(span))) - 2; step == 0.0; ++e) {
        for (double m : mantissas) {
            const double s = m * std::pow(10.0, e);
            if (count_in(data_lo, data_hi, s) <= 8) {
                step = s;
                break;
            }
        }
    }

    AxisTicks t;
    t.step = step;
    t.lo = data_lo;
    t.hi = data_hi;
    bool upper = true;
    while (count_in(t.lo, t.hi, step) < 5) {
        if (upper)
            t.hi = (std::floor(t.hi / step + 1e-9) + 1.0) * step;
        else
            t.lo = (std::ceil(t.lo / step - 1e-9) - 1.0) * step;
        upper = !upper;
    }
    const double first = std::ceil(t.lo / step - 1e-9);
    const long n = count_in(t.lo, t.hi, step);
    for (long i = 0; i < n; ++i) {
        double v = (first + static_cast<double>(i)) * step;
        if (std::fabs(v) < 1e-12 * step) v = 0.0;
        t.values.push_back(v);
    }
    return t;
}

namespace detail {

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string fmt(double v, int decimals = 2)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline int tick_decimals(double step)
{
    int d = 0;
    while (d < 12 && std::fabs(step * std::pow(10.0, d) - std::round(step * std::pow(10.0, d))) > 1e-6) ++d;
    return d;
}

inline std::optional<double> parse_cell(const std::string& cell)
{
    if (cell.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(v)) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                           "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace detail

struct PlotSeries
{
    std::string label;
    std::vector<std::pair<double, double>> points;  ///< sorted by x
};

/// Groups table rows into one series per series_key value (and per y column
/// when several are plotted). Blank or non-numeric cells are skipped.
inline std::vector<PlotSeries> collect_series(const CsvTable& table, const PlotSpec& spec)
{
    std::vector<std::string> missing;
    const auto xcol = table.column(spec.x_column);
    if (!xcol) missing.push_back(spec.x_column);
    const auto kcol = table.column(spec.series_key);
    if (!kcol) missing.push_back(spec.series_key);
    std::vector<std::size_t> ycols;
    for (const auto& y : spec.y_columns) {
        if (auto c = table.column(y))
            ycols.push_back(*c);
        else
            missing.push_back(y);
    }
    if (spec.y_columns.empty()) throw ConfigError("plot: at least one y column is required");
    if (!missing.empty()) {
        std::string msg = "plot: missing column(s):";
        for (const auto& m : missing) msg += " " + m;
        throw ConfigError(msg);
    }

    std::vector<PlotSeries> series;
    std::map<std::string, std::size_t> index;
    for (const auto& row : table.rows) {
        const auto x = detail::parse_cell(row[*xcol]);
        if (!x) continue;
        for (std::size_t yi = 0; yi < ycols.size(); ++yi) {
            const auto y = detail::parse_cell(row[ycols[yi]]);
            if (!y) continue;
            std::string label = row[*kcol];
            if (ycols.size() > 1) label += " " + spec.y_columns[yi];
            auto [it, inserted] = index.try_emplace(label, series.size());
            if (inserted) series.push_back({label, {}});
            series[it->second].points.emplace_back(*x, *y);
        }
    }
    for (auto& s : series) std::stable_sort(s.points.begin(), s.points.end(),
                                            [](const auto& a, const auto& b) { return a.first < b.first; });
    return series;
}

inline std::string render_svg(const CsvTable& table, const PlotSpec& spec)
{
    if (spec.width < 200 || spec.height < 150) throw ConfigError("plot: width/height too small (min 200x150)");
    const auto series = collect_series(table, spec);
    if (series.empty()) throw ConfigError("plot: no data rows to plot");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (ymin >= 0.0) ymin = 0.0;
    const AxisTicks xt = nice_ticks(xmin, xmax);
    const AxisTicks yt = nice_ticks(ymin, ymax);

    const double left = 80, right = 180, top = 50, bottom = 60;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;
    auto px = [&](double x) { return left + (x - xt.lo) / (xt.hi - xt.lo) * pw; };
    auto py = [&](double y) { return top + ph - (y - yt.lo) / (yt.hi - yt.lo) * ph; };
    using detail::fmt;

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\" font-family=\"sans-serif\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
      << detail::xml_escape(spec.title) << "</text>\n";

    // grid + ticks
    const int xdec = detail::tick_decimals(xt.step);
    const int ydec = detail::tick_decimals(yt.step);
    o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double v : xt.values)
        o << "<line x1=\"" << fmt(px(v)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(v)) << "\" y2=\""
          << fmt(top + ph) << "\"/>\n";
    for (double v : yt.values)
        o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(py(v)) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
          << fmt(py(v)) << "\"/>\n";
    o << "</g>\n";
    o << "<g font-size=\"11\" fill=\"black\">\n";
    for (double v : xt.values)
        o << "<text x=\"" << fmt(px(v)) << "\" y=\"" << fmt(top + ph + 18) << "\" text-anchor=\"middle\">"
          << fmt(v, xdec) << "</text>\n";
    for (double v : yt.values)
        o << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(py(v) + 4) << "\" text-anchor=\"end\">"
          << fmt(v, ydec) << "</text>\n";
    o << "</g>\n";

    // axes
    o << "<g stroke=\"black\" stroke-width=\"1.5\">\n";
    o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
      << fmt(top + ph) << "\"/>\n";
    o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left) << "\" y2=\""
      << fmt(top + ph) << "\"/>\n";
    o << "</g>\n";
    o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(spec.height - 15.0)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::xml_escape(spec.x_label) << "</text>\n";
    o << "<text x=\"20\" y=\"" << fmt(top + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << fmt(top + ph / 2) << ")\">" << detail::xml_escape(spec.y_label)
      << "</text>\n";

    // data
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* colour = detail::kPalette[i % std::size(detail::kPalette)];
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < series[i].points.size(); ++k) {
            if (k) o << ' ';
            o << fmt(px(series[i].points[k].first)) << ',' << fmt(py(series[i].points[k].second));
        }
        o << "\"/>\n";
        for (auto [x, y] : series[i].points)
            o << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"3\" fill=\"" << colour
              << "\"/>\n";
    }

    // legend
    const double lx = left + pw + 15;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* colour = detail::kPalette[i % std::size(detail::kPalette)];
        const double ly = top + 10 + 20.0 * static_cast<double>(i);
        o << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 20) << "\" y2=\""
          << fmt(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly + 4) << "\" font-size=\"12\">"
          << detail::xml_escape(series[i].label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace hnwsn

#endif  // HNWSN_SVG_PLOT_HPP
