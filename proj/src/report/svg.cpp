#include "dhopf/report/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dhopf::report {

namespace {

constexpr double kW = 480.0;
constexpr double kH = 340.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 16.0;
constexpr double kTop = 34.0;
constexpr double kBottom = 48.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

// 1-2-5 tick spacing giving roughly five intervals.
double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

std::string render_panel(const Panel& p, double ox, double oy) {
    Range xr, yr;
    for (const auto& s : p.series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    for (double v : p.vlines) xr.add(v);
    xr.finish();
    yr.finish();
    const double pw = kW - kLeft - kRight;
    const double ph = kH - kTop - kBottom;
    const auto X = [&](double v) { return ox + kLeft + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto Y = [&](double v) { return oy + kTop + (1.0 - (v - yr.lo) / (yr.hi - yr.lo)) * ph; };

    std::string s;
    s += "<rect x=\"" + fmt(ox + kLeft) + "\" y=\"" + fmt(oy + kTop) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    s += "<text x=\"" + fmt(ox + kW / 2) + "\" y=\"" + fmt(oy + 20) +
         "\" text-anchor=\"middle\" font-size=\"14\">" + escape(p.title) + "</text>\n";
    s += "<text x=\"" + fmt(ox + kLeft + pw / 2) + "\" y=\"" + fmt(oy + kH - 10) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + escape(p.xlabel) + "</text>\n";
    s += "<text transform=\"translate(" + fmt(ox + 14) + "," + fmt(oy + kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" + escape(p.ylabel) +
         "</text>\n";

    const double xs = nice_step(xr.hi - xr.lo);
    for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi; t += xs) {
        s += "<line x1=\"" + fmt(X(t)) + "\" y1=\"" + fmt(oy + kTop + ph) + "\" x2=\"" + fmt(X(t)) +
             "\" y2=\"" + fmt(oy + kTop + ph + 4) + "\" stroke=\"#333\"/>\n";
        s += "<text x=\"" + fmt(X(t)) + "\" y=\"" + fmt(oy + kTop + ph + 16) +
             "\" text-anchor=\"middle\" font-size=\"10\">" + tick_label(t) + "</text>\n";
    }
    const double ys = nice_step(yr.hi - yr.lo);
    for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi; t += ys) {
        s += "<line x1=\"" + fmt(ox + kLeft - 4) + "\" y1=\"" + fmt(Y(t)) + "\" x2=\"" +
             fmt(ox + kLeft) + "\" y2=\"" + fmt(Y(t)) + "\" stroke=\"#333\"/>\n";
        s += "<text x=\"" + fmt(ox + kLeft - 6) + "\" y=\"" + fmt(Y(t) + 3) +
             "\" text-anchor=\"end\" font-size=\"10\">" + tick_label(t) + "</text>\n";
    }
    for (double v : p.vlines) {
        s += "<line x1=\"" + fmt(X(v)) + "\" y1=\"" + fmt(oy + kTop) + "\" x2=\"" + fmt(X(v)) +
             "\" y2=\"" + fmt(oy + kTop + ph) + "\" stroke=\"#555\" stroke-dasharray=\"2,3\"/>\n";
    }

    double legend_y = oy + kTop + 14;
    for (const auto& ser : p.series) {
        const std::string color = ser.color.empty() ? "#1f77b4" : ser.color;
        if (ser.markers) {
            for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
                if (std::isfinite(ser.x[i]) && std::isfinite(ser.y[i])) {
                    s += "<circle cx=\"" + fmt(X(ser.x[i])) + "\" cy=\"" + fmt(Y(ser.y[i])) +
                         "\" r=\"3\" fill=\"" + color + "\"/>\n";
                }
            }
        } else {
            s += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.4\"";
            if (ser.dashed) {
                s += " stroke-dasharray=\"6,4\"";
            }
            s += " points=\"";
            for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
                if (std::isfinite(ser.x[i]) && std::isfinite(ser.y[i])) {
                    s += fmt(X(ser.x[i])) + "," + fmt(Y(ser.y[i])) + " ";
                }
            }
            s += "\"/>\n";
        }
        if (!ser.label.empty()) {
            s += "<text x=\"" + fmt(ox + kW - kRight - 8) + "\" y=\"" + fmt(legend_y) +
                 "\" text-anchor=\"end\" font-size=\"11\" fill=\"" + color + "\">" +
                 escape(ser.label) + "</text>\n";
            legend_y += 14;
        }
    }
    return s;
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, int columns,
                       const std::string& provenance) {
    const int cols = std::max(1, columns);
    const int rows = static_cast<int>((panels.size() + cols - 1) / cols);
    const double width = kW * cols;
    const double height = kH * std::max(rows, 1);
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) +
         "\" font-family=\"sans-serif\">\n";
    std::string prov = provenance;
    for (std::size_t pos; (pos = prov.find("--")) != std::string::npos;) {
        prov.replace(pos, 2, "- -");
    }
    s += "<!-- " + prov + " -->\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = kW * static_cast<double>(i % cols);
        const double oy = kH * static_cast<double>(i / cols);
        s += render_panel(panels[i], ox, oy);
    }
    s += "</svg>\n";
    return s;
}

}  // namespace dhopf::report
