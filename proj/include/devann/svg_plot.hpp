#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "devann/errors.hpp"
#include "devann/experiment.hpp"

namespace devann {

namespace plot_detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string fmtg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

inline double nice_step(double raw) {
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.0)
        nice = 1.0;
    else if (frac <= 2.0)
        nice = 2.0;
    else if (frac <= 5.0)
        nice = 5.0;
    return nice * mag;
}

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                           "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
inline constexpr int kPaletteSize = 8;

}  // namespace plot_detail

// Mean-curve comparison chart: one line per arm with a translucent stderr
// band, axes with tick labels, and a legend. Output is a pure function of the
// summaries, so identical inputs give byte-identical SVG.
inline std::string render_plot_svg(const std::vector<CurveSummary>& summaries) {
    using namespace plot_detail;
    if (summaries.empty()) throw ContractError("render_plot_svg: no data");

    std::vector<std::string> arm_order;
    std::map<std::string, std::vector<const CurveSummary*>> by_arm;
    for (const CurveSummary& s : summaries) {
        auto [it, inserted] = by_arm.try_emplace(s.arm);
        if (inserted) arm_order.push_back(s.arm);
        it->second.push_back(&s);
    }
    for (auto& [name, points] : by_arm)
        std::sort(points.begin(), points.end(), [](const CurveSummary* a, const CurveSummary* b) {
            return a->generation < b->generation;
        });

    double gen_lo = summaries.front().generation, gen_hi = gen_lo;
    double val_lo = 0.0, val_hi = 0.0;
    bool first = true;
    for (const CurveSummary& s : summaries) {
        gen_lo = std::min(gen_lo, static_cast<double>(s.generation));
        gen_hi = std::max(gen_hi, static_cast<double>(s.generation));
        const double lo = s.mean_best - s.stderr_best, hi = s.mean_best + s.stderr_best;
        if (first) {
            val_lo = lo;
            val_hi = hi;
            first = false;
        } else {
            val_lo = std::min(val_lo, lo);
            val_hi = std::max(val_hi, hi);
        }
    }
    if (gen_lo == gen_hi) {
        gen_lo -= 1.0;
        gen_hi += 1.0;
    }
    if (val_lo == val_hi) {
        val_lo -= 1.0;
        val_hi += 1.0;
    }
    const double val_pad = 0.05 * (val_hi - val_lo);
    const double y_step = nice_step((val_hi + val_pad - (val_lo - val_pad)) / 5.0);
    const double y_lo = std::floor((val_lo - val_pad) / y_step) * y_step;
    const double y_hi = std::ceil((val_hi + val_pad) / y_step) * y_step;
    const double x_step = std::max(1.0, std::floor(nice_step((gen_hi - gen_lo) / 6.0)));

    const double width = 960.0, height = 600.0;
    const double px0 = 70.0, py0 = 30.0, px1 = width - 170.0, py1 = height - 55.0;
    const auto map_x = [&](double g) { return px0 + (g - gen_lo) / (gen_hi - gen_lo) * (px1 - px0); };
    const auto map_y = [&](double v) { return py1 - (v - y_lo) / (y_hi - y_lo) * (py1 - py0); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"600\" "
           "viewBox=\"0 0 960 600\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"600\" fill=\"#ffffff\"/>\n";

    // stderr bands first so every curve stays visible on top of them
    for (std::size_t a = 0; a < arm_order.size(); ++a) {
        const auto& points = by_arm[arm_order[a]];
        const char* color = kPalette[a % kPaletteSize];
        std::string band;
        for (const CurveSummary* p : points) {
            band += fmt2(map_x(p->generation)) + "," + fmt2(map_y(p->mean_best + p->stderr_best));
            band += " ";
        }
        for (auto it = points.rbegin(); it != points.rend(); ++it) {
            band += fmt2(map_x((*it)->generation)) + "," +
                    fmt2(map_y((*it)->mean_best - (*it)->stderr_best));
            if (std::next(it) != points.rend()) band += " ";
        }
        svg += "<polygon class=\"band\" points=\"" + band + "\" fill=\"" + color +
               "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    for (std::size_t a = 0; a < arm_order.size(); ++a) {
        const auto& points = by_arm[arm_order[a]];
        const char* color = kPalette[a % kPaletteSize];
        std::string line;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) line += " ";
            line += fmt2(map_x(points[i]->generation)) + "," + fmt2(map_y(points[i]->mean_best));
        }
        svg += "<polyline class=\"curve\" points=\"" + line + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.8\"/>\n";
        if (points.size() == 1) {
            // a one-point polyline paints nothing, so mark the value explicitly
            svg += "<circle cx=\"" + fmt2(map_x(points[0]->generation)) + "\" cy=\"" +
                   fmt2(map_y(points[0]->mean_best)) + "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
        }
    }

    svg += "<line x1=\"" + fmt2(px0) + "\" y1=\"" + fmt2(py1) + "\" x2=\"" + fmt2(px1) +
           "\" y2=\"" + fmt2(py1) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + fmt2(px0) + "\" y1=\"" + fmt2(py0) + "\" x2=\"" + fmt2(px0) +
           "\" y2=\"" + fmt2(py1) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    for (double g = std::ceil(gen_lo / x_step) * x_step; g <= gen_hi + 1e-9; g += x_step) {
        const double x = map_x(g);
        svg += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(py1) + "\" x2=\"" + fmt2(x) + "\" y2=\"" +
               fmt2(py1 + 5.0) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(py1 + 20.0) +
               "\" text-anchor=\"middle\">" + fmtg(g) + "</text>\n";
    }
    for (double v = y_lo; v <= y_hi + 1e-9 * y_step; v += y_step) {
        const double y = map_y(v);
        svg += "<line x1=\"" + fmt2(px0 - 5.0) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(px0) +
               "\" y2=\"" + fmt2(y) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt2(px0 - 9.0) + "\" y=\"" + fmt2(y + 4.0) +
               "\" text-anchor=\"end\">" + fmtg(v) + "</text>\n";
    }
    svg += "<text x=\"" + fmt2((px0 + px1) / 2.0) + "\" y=\"" + fmt2(py1 + 42.0) +
           "\" text-anchor=\"middle\">generation</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt2((py0 + py1) / 2.0) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + fmt2((py0 + py1) / 2.0) +
           ")\">mean best fitness</text>\n";

    for (std::size_t a = 0; a < arm_order.size(); ++a) {
        const char* color = kPalette[a % kPaletteSize];
        const double lx = px1 + 18.0, ly = py0 + 12.0 + 22.0 * static_cast<double>(a);
        svg += "<line x1=\"" + fmt2(lx) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" + fmt2(lx + 26.0) +
               "\" y2=\"" + fmt2(ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.8\"/>\n";
        svg += "<text x=\"" + fmt2(lx + 32.0) + "\" y=\"" + fmt2(ly + 4.0) + "\">" +
               xml_escape(arm_order[a]) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline void render_plot(const std::string& path, const std::vector<CurveSummary>& summaries) {
    const std::string svg = render_plot_svg(summaries);
    detail::ensure_parent_dir(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LoadError("cannot write svg: " + path);
    out << svg;
    out.flush();
    if (!out) throw LoadError("svg write failed: " + path);
}

}  // namespace devann
