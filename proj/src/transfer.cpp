#include "anomidx/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anomidx/error.hpp"
#include "anomidx/exact_sum.hpp"

namespace anomidx {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::NonFiniteValue, std::string(what) + " is not finite");
    }
}

struct Integrals {
    double positive;
    double absolute;
};

// slope * length == value increment on each piece, so both integrals are
// sums of increments.
Integrals derivative_integrals(const PiecewiseLinearBaseline& h) {
    const auto v = h.values();
    ExactSum positive;
    ExactSum absolute;
    for (std::size_t k = 1; k < v.size(); ++k) {
        const double rise = v[k] - v[k - 1];
        positive.add(std::max(rise, 0.0));
        absolute.add(std::fabs(rise));
    }
    return {positive.value(), absolute.value()};
}

}  // namespace

PiecewiseLinearBaseline::PiecewiseLinearBaseline(std::vector<double> breakpoints,
                                                 std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty()) {
        throw Error(ErrorKind::InvalidBaseline, "baseline needs at least one breakpoint");
    }
    if (breakpoints_.size() != values_.size()) {
        throw Error(ErrorKind::InvalidBaseline, "breakpoints and values differ in length");
    }
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        if (!std::isfinite(breakpoints_[k]) || !std::isfinite(values_[k])) {
            throw Error(ErrorKind::NonFiniteValue,
                        "baseline node " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
            throw Error(ErrorKind::InvalidBaseline, "breakpoints must be strictly increasing");
        }
    }
}

double PiecewiseLinearBaseline::operator()(double x) const {
    if (x <= breakpoints_.front()) {
        return values_.front();
    }
    if (x >= breakpoints_.back()) {
        return values_.back();
    }
    const auto upper_it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const auto k = static_cast<std::size_t>(upper_it - breakpoints_.begin()) - 1;
    const double x0 = breakpoints_[k];
    const double v0 = values_[k];
    const double v1 = values_[k + 1];
    if (x == x0) {
        return v0;
    }
    const double slope = (v1 - v0) / (breakpoints_[k + 1] - x0);
    // Clamping to the node values keeps evaluation monotone across nodes.
    return std::clamp(v0 + slope * (x - x0), std::min(v0, v1), std::max(v0, v1));
}

double PiecewiseLinearBaseline::lipschitz_constant() const {
    double k = 0.0;
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        k = std::max(k, std::fabs((values_[i] - values_[i - 1]) /
                                  (breakpoints_[i] - breakpoints_[i - 1])));
    }
    return k;
}

std::string_view to_string(TransferMode mode) noexcept {
    switch (mode) {
        case TransferMode::InputOnly: return "tf1";
        case TransferMode::OutputOnly: return "tf2";
        case TransferMode::Both: return "tf3";
    }
    return "tf?";
}

std::optional<TransferMode> parse_transfer_mode(std::string_view text) noexcept {
    if (text == "tf1" || text == "input") return TransferMode::InputOnly;
    if (text == "tf2" || text == "output") return TransferMode::OutputOnly;
    if (text == "tf3" || text == "both") return TransferMode::Both;
    return std::nullopt;
}

bool uses_input_anomaly(TransferMode mode) noexcept {
    return mode == TransferMode::InputOnly || mode == TransferMode::Both;
}

bool uses_output_anomaly(TransferMode mode) noexcept {
    return mode == TransferMode::OutputOnly || mode == TransferMode::Both;
}

PiecewiseLinearBaseline clamped(double a, double b) {
    require_finite(a, "a");
    require_finite(b, "b");
    if (a > b) {
        throw Error(ErrorKind::InvalidRange, "service range has a > b");
    }
    if (a == b) {
        return PiecewiseLinearBaseline({a}, {a});
    }
    return PiecewiseLinearBaseline({a, b}, {a, b});
}

double eval_baseline(const PiecewiseLinearBaseline& h, double x) {
    require_finite(x, "x");
    return h(x);
}

double DerivativeDensity::operator()(double x) const {
    for (const auto& s : segments_) {
        if (x >= s.lower && x < s.upper) {
            return s.slope;
        }
    }
    return 0.0;
}

DerivativeDensity derivative_density(const PiecewiseLinearBaseline& h) {
    const auto bp = h.breakpoints();
    const auto v = h.values();
    std::vector<SlopeSegment> segments;
    segments.reserve(bp.size() > 0 ? bp.size() - 1 : 0);
    for (std::size_t k = 1; k < bp.size(); ++k) {
        segments.push_back({bp[k - 1], bp[k], (v[k] - v[k - 1]) / (bp[k] - bp[k - 1])});
    }
    return DerivativeDensity(std::move(segments));
}

std::optional<double> limit_index(const PiecewiseLinearBaseline& h) {
    const auto [positive, absolute] = derivative_integrals(h);
    if (absolute == 0.0) {
        return std::nullopt;
    }
    return positive / absolute;
}

std::optional<double> lambda_h0(const PiecewiseLinearBaseline& h) {
    const double absolute = derivative_integrals(h).absolute;
    if (absolute == 0.0) {
        return std::nullopt;
    }
    return (h.values().back() - h.values().front()) / absolute;
}

double apply_transfer(TransferMode mode, const PiecewiseLinearBaseline& h, double x, double delta,
                      double eps) {
    require_finite(x, "x");
    require_finite(delta, "delta");
    require_finite(eps, "eps");
    switch (mode) {
        case TransferMode::InputOnly: return h(x + delta);
        case TransferMode::OutputOnly: return h(x) + eps;
        case TransferMode::Both: return h(x + delta) + eps;
    }
    return h(x);
}

}  // namespace anomidx
