#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anomidx/core_indices.hpp"

namespace anomidx {

struct Series {
    std::vector<double> values;
    std::string name;
};

/// 100 * (v_t - v_{t-1}) / v_{t-1}; one value shorter than the input.
[[nodiscard]] Series percentage_returns(const Series& s);

/// v_t - v_{t-lag}; lag values shorter than the input.
[[nodiscard]] Series lag_difference(const Series& s, std::size_t lag);

/// Stationarity transform applied to both columns before indexing.
struct Transform {
    enum class Kind { None, Returns, Difference };
    Kind kind = Kind::None;
    std::size_t lag = 1;

    /// "none", "returns" or "diff:<k>" with k >= 1.
    [[nodiscard]] static Transform parse(const std::string& text);
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] Series apply(const Series& s) const;
};

[[nodiscard]] PairedSample apply_transform(const Transform& transform, const PairedSample& sample);

/**
 * Reads two columns of a comma-separated file, in row order.
 *
 * A column is selected by header name (when has_header) or by 0-based index
 * given as a decimal string. Blank lines are skipped; a trailing '\r' is
 * stripped. Cells must parse completely as finite reals.
 */
[[nodiscard]] PairedSample read_pairs_csv(const std::filesystem::path& path,
                                          const std::string& x_column,
                                          const std::string& y_column, bool has_header = true);

/// Header "n,I_n,B_np"; an undefined I_n is an empty cell. Doubles are
/// written in shortest round-trip form.
void write_curve_csv(const IndexCurve& curve, const std::filesystem::path& path);
[[nodiscard]] std::string curve_csv(const IndexCurve& curve);
[[nodiscard]] IndexCurve read_curve_csv(const std::filesystem::path& path, double p = 2.0);

/// Shortest decimal string that parses back to exactly v.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] double parse_double(const std::string& text);

/// Writes via a sibling temporary file and a rename so a failed write never
/// leaves partial output behind.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace anomidx
