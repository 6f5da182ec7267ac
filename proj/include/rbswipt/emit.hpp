#pragma once

// CSV and SVG output for sweep tables.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rbswipt/error.hpp"
#include "rbswipt/sweep.hpp"

namespace rbswipt::emit {

inline constexpr const char* kCsvHeader = "axis,P_recv_PT_W,P_recv_IT_W,P_charge_W,R_b_bits,eta_SHG,status";

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void emit_csv(const std::vector<sweep::Row>& rows, std::ostream& out) {
    if (rows.empty()) throw Error("no rows to write");
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        const auto& x = r.result;
        out << format_double(r.axis) << ',' << format_double(x.P_recv_PT) << ','
            << format_double(x.P_recv_IT) << ',' << format_double(x.P_hat_charge) << ','
            << format_double(x.R_b) << ',' << format_double(x.eta_SHG) << ',' << to_string(x.status)
            << '\n';
    }
}

namespace detail {

// Renders to memory first so a failure never leaves a partial file behind.
template <typename Render>
void write_file(const std::string& path, Render&& render) {
    std::ostringstream buf;
    render(buf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    const std::string text = buf.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw Error("failed writing '" + path + "'");
    }
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Series {
    std::string label;
    std::string unit;
    std::vector<double> y;
};

inline std::vector<Series> series_for(const std::vector<sweep::Row>& rows, const std::vector<sweep::Output>& outputs) {
    std::vector<Series> out;
    const auto pick = [&](sweep::Output o, const char* label, const char* unit, auto get) {
        if (std::find(outputs.begin(), outputs.end(), o) == outputs.end()) return;
        Series s{label, unit, {}};
        for (const auto& r : rows) s.y.push_back(get(r.result));
        out.push_back(std::move(s));
    };
    pick(sweep::Output::P_recv_PT, "P_recv,PT", "W", [](const LinkResult& r) { return r.P_recv_PT; });
    pick(sweep::Output::P_recv_IT, "P_recv,IT", "W", [](const LinkResult& r) { return r.P_recv_IT; });
    pick(sweep::Output::P_hat_charge, "P_charge", "W", [](const LinkResult& r) { return r.P_hat_charge; });
    pick(sweep::Output::R_b, "R_b", "bit/s/Hz", [](const LinkResult& r) { return r.R_b; });
    pick(sweep::Output::eta_SHG, "eta_SHG", "1", [](const LinkResult& r) { return r.eta_SHG; });
    pick(sweep::Output::status, "status (0 ok, 1 below threshold, 2 unstable)", "1",
         [](const LinkResult& r) { return static_cast<double>(r.status); });
    return out;
}

}  // namespace detail

inline void write_csv(const std::vector<sweep::Row>& rows, const std::string& path) {
    if (rows.empty()) throw Error("no rows to write");
    detail::write_file(path, [&](std::ostream& out) { emit_csv(rows, out); });
}

// Stacked panels, one per requested output, sharing the sweep axis.
inline void emit_plot_data(const std::vector<sweep::Row>& rows, std::ostream& out,
                           const std::string& axis_label, const std::string& axis_unit,
                           const std::vector<sweep::Output>& outputs = sweep::all_outputs()) {
    if (rows.empty()) throw Error("no rows to plot");
    const auto series = detail::series_for(rows, outputs);
    if (series.empty()) throw Error("no outputs selected for plotting");

    constexpr double width = 640.0;
    constexpr double panel_h = 180.0;
    constexpr double left = 80.0;
    constexpr double right = 20.0;
    constexpr double top = 30.0;
    constexpr double bottom = 45.0;
    const double plot_w = width - left - right;
    const double plot_h = panel_h - top - bottom;
    const double height = panel_h * static_cast<double>(series.size());

    double x_lo = rows.front().axis;
    double x_hi = rows.front().axis;
    for (const auto& r : rows) {
        x_lo = std::min(x_lo, r.axis);
        x_hi = std::max(x_hi, r.axis);
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    const std::string x_title =
        detail::xml_escape(axis_label + (axis_unit.empty() ? std::string(" [1]") : " [" + axis_unit + "]"));

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt(width) << "\" height=\""
        << detail::fmt(height) << "\" viewBox=\"0 0 " << detail::fmt(width) << ' ' << detail::fmt(height)
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const double y0 = panel_h * static_cast<double>(k);
        double y_lo = *std::min_element(s.y.begin(), s.y.end());
        double y_hi = *std::max_element(s.y.begin(), s.y.end());
        if (y_hi == y_lo) {
            const double pad = y_lo == 0.0 ? 1.0 : 0.05 * std::abs(y_lo);
            y_lo -= pad;
            y_hi += pad;
        }
        const auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
        const auto py = [&](double y) { return y0 + top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };
        const std::string title = detail::xml_escape(s.label + " [" + s.unit + "]");

        out << "<g class=\"series\" id=\"series-" << k << "\">\n";
        out << "<title>" << title << "</title>\n";
        out << "<rect x=\"" << detail::fmt(left) << "\" y=\"" << detail::fmt(y0 + top) << "\" width=\""
            << detail::fmt(plot_w) << "\" height=\"" << detail::fmt(plot_h)
            << "\" fill=\"none\" stroke=\"#888\"/>\n";
        out << "<text x=\"" << detail::fmt(left) << "\" y=\"" << detail::fmt(y0 + top - 8)
            << "\" font-weight=\"bold\">" << title << "</text>\n";
        out << "<text x=\"" << detail::fmt(left - 6) << "\" y=\"" << detail::fmt(y0 + top + 4)
            << "\" text-anchor=\"end\">" << detail::fmt(y_hi) << "</text>\n";
        out << "<text x=\"" << detail::fmt(left - 6) << "\" y=\"" << detail::fmt(y0 + top + plot_h)
            << "\" text-anchor=\"end\">" << detail::fmt(y_lo) << "</text>\n";
        out << "<text x=\"" << detail::fmt(left) << "\" y=\"" << detail::fmt(y0 + top + plot_h + 14)
            << "\">" << detail::fmt(x_lo) << "</text>\n";
        out << "<text x=\"" << detail::fmt(left + plot_w) << "\" y=\"" << detail::fmt(y0 + top + plot_h + 14)
            << "\" text-anchor=\"end\">" << detail::fmt(x_hi) << "</text>\n";
        out << "<text x=\"" << detail::fmt(left + plot_w / 2) << "\" y=\"" << detail::fmt(y0 + top + plot_h + 30)
            << "\" text-anchor=\"middle\">" << x_title << "</text>\n";

        out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out << ' ';
            out << detail::fmt(px(rows[i].axis)) << ',' << detail::fmt(py(s.y[i]));
        }
        out << "\"/>\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << "<circle cx=\"" << detail::fmt(px(rows[i].axis)) << "\" cy=\"" << detail::fmt(py(s.y[i]))
                << "\" r=\"2\" fill=\"#1f77b4\"/>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
}

inline void write_svg(const std::vector<sweep::Row>& rows, const std::string& path, const std::string& axis_label,
                      const std::string& axis_unit,
                      const std::vector<sweep::Output>& outputs = sweep::all_outputs()) {
    if (rows.empty()) throw Error("no rows to plot");
    detail::write_file(path, [&](std::ostream& out) { emit_plot_data(rows, out, axis_label, axis_unit, outputs); });
}

}  // namespace rbswipt::emit
