#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace anomidx {

/**
 * Continuous piecewise-linear baseline h_0 with constant continuation
 * outside [breakpoints.front(), breakpoints.back()].
 *
 * A single breakpoint is the degenerate constant baseline (the precise
 * service range, a == b). Otherwise breakpoints must be strictly increasing.
 */
class PiecewiseLinearBaseline {
public:
    PiecewiseLinearBaseline(std::vector<double> breakpoints, std::vector<double> values);

    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Left and right end of the support of the derivative.
    [[nodiscard]] double lower() const noexcept { return breakpoints_.front(); }
    [[nodiscard]] double upper() const noexcept { return breakpoints_.back(); }

    [[nodiscard]] double operator()(double x) const;

    /// Largest absolute slope, i.e. the Lipschitz constant.
    [[nodiscard]] double lipschitz_constant() const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

enum class TransferMode {
    InputOnly,   ///< TF1: h_0(x + delta)
    OutputOnly,  ///< TF2: h_0(x) + eps
    Both,        ///< TF3: h_0(x + delta) + eps
};

[[nodiscard]] std::string_view to_string(TransferMode mode) noexcept;
/// Accepts "tf1"/"tf2"/"tf3" and the long names "input", "output", "both".
[[nodiscard]] std::optional<TransferMode> parse_transfer_mode(std::string_view text) noexcept;

[[nodiscard]] bool uses_input_anomaly(TransferMode mode) noexcept;
[[nodiscard]] bool uses_output_anomaly(TransferMode mode) noexcept;

/// h_c(x) = (min(x, b) - a)_+ + a.
[[nodiscard]] PiecewiseLinearBaseline clamped(double a, double b);

[[nodiscard]] double eval_baseline(const PiecewiseLinearBaseline& h, double x);

struct SlopeSegment {
    double lower;
    double upper;
    double slope;
};

/// Piecewise-constant derivative. One segment per interval between
/// breakpoints; the derivative is zero everywhere outside these segments.
class DerivativeDensity {
public:
    explicit DerivativeDensity(std::vector<SlopeSegment> segments)
        : segments_(std::move(segments)) {}

    [[nodiscard]] std::span<const SlopeSegment> segments() const noexcept { return segments_; }
    /// Right-continuous evaluation; zero outside the support.
    [[nodiscard]] double operator()(double x) const;

private:
    std::vector<SlopeSegment> segments_;
};

[[nodiscard]] DerivativeDensity derivative_density(const PiecewiseLinearBaseline& h);

/// Limit of the anomaly-free index: integral of the positive part of h_0'
/// over the integral of |h_0'|. Undefined for a constant baseline.
[[nodiscard]] std::optional<double> limit_index(const PiecewiseLinearBaseline& h);

/// (h_0(b) - h_0(a)) / integral of |h_0'|; limit_index == (1 + lambda_h0) / 2.
[[nodiscard]] std::optional<double> lambda_h0(const PiecewiseLinearBaseline& h);

[[nodiscard]] double apply_transfer(TransferMode mode, const PiecewiseLinearBaseline& h, double x,
                                    double delta, double eps);

}  // namespace anomidx
