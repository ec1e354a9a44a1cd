#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anomidx/core_indices.hpp"

namespace anomidx {

/// Numeric stand-ins for the qualitative "tends to 1/2" and "stays bounded"
/// rules. All of them are tunable; the verdict always carries the raw
/// diagnostics so a caller can re-threshold.
struct DetectorConfig {
    double tail_fraction = 0.5;        ///< share of the curve (from the end) the I vote judges
    double b_tail_fraction = 1.0;      ///< share of the curve the B growth fit uses
    double i_band = 0.05;              ///< allowed mean |I_n - 1/2| on the tail
    double b_growth_threshold = 0.25;  ///< log-log slope of B above which B is growing
    std::size_t min_points = 30;
};

void validate(const DetectorConfig& config);

enum class Classification { AnomalyAffected, AnomalyFree, Inconclusive };

[[nodiscard]] std::string_view to_string(Classification c) noexcept;

struct Verdict {
    Classification classification = Classification::Inconclusive;
    std::optional<double> i_tail_mean;       ///< mean I_n over defined tail points
    std::optional<double> i_tail_deviation;  ///< mean |I_n - 1/2| over the same points
    std::optional<double> i_trend_slope;     ///< least-squares slope of |I_n - 1/2| against n
    std::optional<double> b_growth_exponent;
    std::optional<Classification> i_vote;
    std::optional<Classification> b_vote;
    std::size_t tail_points = 0;    ///< points in the I window
    std::size_t b_fit_points = 0;   ///< points in the B window
    std::string notes;
};

/**
 * Votes on the tail window of the curve and combines the votes.
 *
 * I vote: affected when the mean |I_n - 1/2| is within i_band and the fitted
 * trend of |I_n - 1/2| does not rise by more than i_band across the window;
 * free otherwise. Abstains when fewer than two tail I values are defined.
 *
 * B vote: slope of log B against log n on the positive values of its own
 * window (b_tail_fraction, whole curve by default: under infinite-variance
 * anomalies a half-curve fit swings with every large jump); affected
 * above b_growth_threshold, free at or below. A tail of exact zeros is
 * bounded (free, exponent reported as 0). Abstains with fewer than two
 * positive values otherwise.
 *
 * Agreeing votes decide; disagreement or a single vote is inconclusive.
 * Throws TooFewPoints when the curve is shorter than min_points and
 * AllUndefined when neither vote can be cast.
 */
[[nodiscard]] Verdict classify(const IndexCurve& curve, const DetectorConfig& config = {});

/// Least-squares slope of log(values) against log(ns). Requires >= 2 points,
/// all values positive.
[[nodiscard]] double log_log_slope(std::span<const double> ns, std::span<const double> values);

/// Growth exponent of B over the curve points with n_lo <= n <= n_hi.
[[nodiscard]] std::optional<double> growth_exponent(const IndexCurve& curve, std::size_t n_lo,
                                                    std::size_t n_hi);

/// Smallest n from which every later point has a defined I_n with
/// |I_n - 1/2| <= band, or nullopt if the last point is outside the band.
[[nodiscard]] std::optional<std::size_t> sustained_entry_n(const IndexCurve& curve, double band);

}  // namespace anomidx
