#include "anomidx/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace anomidx {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 16.0;
constexpr double kTop = 32.0;
constexpr double kBottom = 40.0;
constexpr int kTicks = 5;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const LineChart& chart) {
    double x_lo = 0.0;
    double x_hi = 1.0;
    if (!chart.x.empty()) {
        const auto [lo, hi] = std::minmax_element(chart.x.begin(), chart.x.end());
        x_lo = *lo;
        x_hi = *hi;
    }
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& v : chart.y) {
        if (v) {
            y_lo = std::min(y_lo, *v);
            y_hi = std::max(y_hi, *v);
        }
    }
    if (!std::isfinite(y_lo)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (chart.y_min) y_lo = *chart.y_min;
    if (chart.y_max) y_hi = *chart.y_max;
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" "
           "viewBox=\"0 0 640 360\">\n";
    svg += "<rect width=\"640\" height=\"360\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" +
           escape(chart.title) + "</text>\n";
    svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop + plot_h) + "\" x2=\"" +
           fixed(kLeft + plot_w) + "\" y2=\"" + fixed(kTop + plot_h) + "\"/>\n";
    svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(kLeft) +
           "\" y2=\"" + fixed(kTop + plot_h) + "\"/>\n";
    svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k < kTicks; ++k) {
        const double frac = static_cast<double>(k) / (kTicks - 1);
        const double xv = x_lo + frac * (x_hi - x_lo);
        const double yv = y_lo + frac * (y_hi - y_lo);
        svg += "<text x=\"" + fixed(px(xv)) + "\" y=\"" + fixed(kTop + plot_h + 16.0) +
               "\" text-anchor=\"middle\">" + tick_label(xv) + "</text>\n";
        svg += "<text x=\"" + fixed(kLeft - 6.0) + "\" y=\"" + fixed(py(yv) + 4.0) +
               "\" text-anchor=\"end\">" + tick_label(yv) + "</text>\n";
    }
    svg += "</g>\n";

    if (chart.reference_y) {
        svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(py(*chart.reference_y)) +
               "\" x2=\"" + fixed(kLeft + plot_w) + "\" y2=\"" + fixed(py(*chart.reference_y)) +
               "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    }

    std::string points;
    auto flush = [&] {
        if (!points.empty()) {
            svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"" +
                   points + "\"/>\n";
            points.clear();
        }
    };
    const std::size_t count = std::min(chart.x.size(), chart.y.size());
    for (std::size_t i = 0; i < count; ++i) {
        if (!chart.y[i]) {
            flush();
            continue;
        }
        const double y = std::clamp(*chart.y[i], y_lo, y_hi);
        if (!points.empty()) points += ' ';
        points += fixed(px(chart.x[i])) + "," + fixed(py(y));
    }
    flush();
    svg += "</svg>\n";
    return svg;
}

std::string render_i_chart(const IndexCurve& curve, const std::string& title) {
    LineChart chart;
    chart.title = title;
    chart.x.assign(curve.n_values.begin(), curve.n_values.end());
    chart.y = curve.i_values;
    chart.y_min = 0.0;
    chart.y_max = 1.0;
    chart.reference_y = 0.5;
    return render_svg(chart);
}

std::string render_b_chart(const IndexCurve& curve, const std::string& title) {
    LineChart chart;
    chart.title = title;
    chart.x.assign(curve.n_values.begin(), curve.n_values.end());
    chart.y.assign(curve.b_values.begin(), curve.b_values.end());
    chart.y_min = 0.0;
    return render_svg(chart);
}

}  // namespace anomidx
