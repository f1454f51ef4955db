/*
Copyright 2026 the cranidnc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "cranidnc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace cranidnc {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;

std::string num(double v, const char* fmt = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string color_for(const std::string& name) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    const int hue = static_cast<int>(h % 360);
    return "hsl(" + std::to_string(hue) + ",65%,40%)";
}

} // namespace

std::string render_plot_svg(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw ValidationError("plot: no data rows");

    // scheduler -> value -> running mean, first-appearance scheduler order
    std::vector<std::string> order;
    std::map<std::string, std::map<double, std::pair<double, int>>> acc;
    for (const ResultRow& r : rows) {
        if (!acc.count(r.scheduler)) order.push_back(r.scheduler);
        auto& cell = acc[r.scheduler][r.value];
        cell.first += r.per_user_hz;
        cell.second += 1;
    }

    double x_min = rows.front().value, x_max = x_min, y_max = 0;
    for (const auto& [name, series] : acc) {
        for (const auto& [x, cell] : series) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_max = std::max(y_max, cell.first / cell.second);
        }
    }
    if (x_max == x_min) {
        x_min -= 1;
        x_max += 1;
    }
    if (y_max <= 0) y_max = 1;
    y_max *= 1.05;

    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + plot_h << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        const double yv = y_max * i / 5.0;
        svg << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
            << num(px(xv)) << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << kTop + plot_h + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << num(xv, "%.4g") << "</text>\n";
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << num(py(yv)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(yv) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << num(yv, "%.4g") << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
        << "\" font-size=\"14\" text-anchor=\"middle\">" << rows.front().variable << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << kTop + plot_h / 2 << ")\">mean throughput (bits/user/Hz)</text>\n";

    // one polyline per scheduler, points sorted by x
    int legend_i = 0;
    for (const std::string& name : order) {
        const std::string color = color_for(name);
        std::string points;
        for (const auto& [x, cell] : acc[name]) {
            if (!points.empty()) points += ' ';
            points += num(px(x)) + "," + num(py(cell.first / cell.second));
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
            << points << "\"/>\n";
        for (const auto& [x, cell] : acc[name])
            svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(cell.first / cell.second))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";

        const double ly = kTop + 10 + 22 * legend_i++;
        svg << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
            << kLeft + plot_w + 45 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kLeft + plot_w + 50 << "\" y=\"" << ly + 4
            << "\" font-size=\"12\">" << name << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace cranidnc
