#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anomidx/core_indices.hpp"

namespace anomidx {

struct LineChart {
    std::string title;
    std::vector<double> x;
    std::vector<std::optional<double>> y;  ///< gaps break the polyline
    std::optional<double> y_min;           ///< fixed axis range, else from data
    std::optional<double> y_max;
    std::optional<double> reference_y;     ///< dashed horizontal line
};

/// 640x360 chart with five ticks per axis. Output is a pure function of the
/// chart contents (fixed-precision coordinates, no timestamps).
[[nodiscard]] std::string render_svg(const LineChart& chart);

/// I_n on [0, 1] with the reference line at 1/2.
[[nodiscard]] std::string render_i_chart(const IndexCurve& curve, const std::string& title);
[[nodiscard]] std::string render_b_chart(const IndexCurve& curve, const std::string& title);

}  // namespace anomidx
