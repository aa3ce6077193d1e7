#pragma once

// curve.csv and curve.svg.
//
// curve.csv columns: query_index,distance,precision_window,mean_search_length_window
// Reals carry 12 significant digits; an empty window is written as NA.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "minds/detail/format.hpp"
#include "minds/errors.hpp"
#include "minds/simulator.hpp"

namespace minds {

inline constexpr const char* kCurveHeader = "query_index,distance,precision_window,mean_search_length_window";

inline void write_curve_csv(std::ostream& os, const LearningCurve& curve) {
    auto opt = [](const std::optional<double>& v) { return v ? detail::format_real(*v) : std::string("NA"); };
    os << kCurveHeader << '\n';
    for (const auto& row : curve.rows) {
        os << row.query_index << ',' << detail::format_real(row.distance) << ',' << opt(row.precision_window) << ','
           << opt(row.mean_search_length_window) << '\n';
    }
}

namespace detail {

inline double parse_real(const std::string& field, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size()) {
        throw ScenarioError("curve.csv line " + std::to_string(line) + ": bad number '" + field + "'");
    }
    return v;
}

inline std::optional<double> parse_optional_real(const std::string& field, std::size_t line) {
    if (field == "NA") return std::nullopt;
    return parse_real(field, line);
}

} // namespace detail

inline LearningCurve read_curve_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCurveHeader) throw ScenarioError("curve.csv: missing or wrong header");

    LearningCurve curve;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 4) {
            throw ScenarioError("curve.csv line " + std::to_string(lineno) + ": expected 4 fields");
        }
        CurveRow row;
        char* end = nullptr;
        row.query_index = std::strtoull(fields[0].c_str(), &end, 10);
        if (fields[0].empty() || *end != '\0') {
            throw ScenarioError("curve.csv line " + std::to_string(lineno) + ": bad query_index");
        }
        row.distance = detail::parse_real(fields[1], lineno);
        row.precision_window = detail::parse_optional_real(fields[2], lineno);
        row.mean_search_length_window = detail::parse_optional_real(fields[3], lineno);
        curve.rows.push_back(row);
    }
    return curve;
}

// Static line chart of distance against query index.
inline void write_curve_svg(std::ostream& os, const LearningCurve& curve) {
    constexpr double width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double max_x = 1.0, max_y = 0.0;
    for (const auto& r : curve.rows) {
        max_x = std::max(max_x, static_cast<double>(r.query_index));
        max_y = std::max(max_y, r.distance);
    }
    if (max_y <= 0.0) max_y = 1.0;

    auto px = [&](double x) { return left + plot_w * x / max_x; };
    auto py = [&](double y) { return top + plot_h * (1.0 - y / max_y); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
       << top + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">queries</text>\n";
    os << "<text x=\"14\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
       << top + plot_h / 2 << ")\">distance</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << num(max_y)
       << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h + 4 << "\" text-anchor=\"end\" font-size=\"10\">0</text>\n";
    os << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 16
       << "\" text-anchor=\"end\" font-size=\"10\">" << static_cast<unsigned long long>(max_x) << "</text>\n";

    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.rows.size(); ++i) {
        const auto& r = curve.rows[i];
        if (i) os << ' ';
        os << num(px(static_cast<double>(r.query_index))) << ',' << num(py(r.distance));
    }
    os << "\"/>\n</svg>\n";
}

} // namespace minds
