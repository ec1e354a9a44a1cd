#include "anomidx/core_indices.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <numeric>
#include <utility>

#include "anomidx/error.hpp"
#include "anomidx/exact_sum.hpp"

namespace anomidx {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(ErrorKind::NonFiniteValue,
                        std::string(what) + "[" + std::to_string(i) + "] is not finite");
        }
    }
}

void require_points(std::size_t n, std::size_t needed) {
    if (n < needed) {
        throw Error(ErrorKind::TooFewPoints, "need at least " + std::to_string(needed) +
                                                 " points, got " + std::to_string(n));
    }
}

void require_valid_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::InvalidP, "moment order p must be a positive finite number");
    }
}

double positive_part(double d) { return std::max(d, 0.0); }

struct Variation {
    double upward;
    double total;
};

Variation variation(std::span<const double> y) {
    ExactSum up;
    ExactSum total;
    for (std::size_t i = 1; i < y.size(); ++i) {
        const double d = y[i] - y[i - 1];
        up.add(positive_part(d));
        total.add(std::fabs(d));
    }
    return {up.value(), total.value()};
}

}  // namespace

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y, std::string label)
    : x_(std::move(x)), y_(std::move(y)), label_(std::move(label)) {
    if (x_.empty() && y_.empty()) {
        throw Error(ErrorKind::EmptySample, "paired sample has no observations");
    }
    if (x_.size() != y_.size()) {
        throw Error(ErrorKind::LengthMismatch, "x has " + std::to_string(x_.size()) +
                                                   " values but y has " +
                                                   std::to_string(y_.size()));
    }
    require_finite(x_, "x");
    require_finite(y_, "y");
}

PairedSample PairedSample::prefix(std::size_t n) const {
    if (n == 0 || n > size()) {
        throw Error(ErrorKind::InvalidLength, "prefix length " + std::to_string(n) +
                                                  " outside 1.." + std::to_string(size()));
    }
    return PairedSample({x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n)},
                        {y_.begin(), y_.begin() + static_cast<std::ptrdiff_t>(n)}, label_);
}

OrderedSample concomitant_sort(const PairedSample& sample) {
    const auto x = sample.x();
    const auto y = sample.y();
    OrderedSample out;
    out.permutation.resize(x.size());
    std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    out.x_sorted.reserve(x.size());
    out.y_concomitant.reserve(x.size());
    for (std::size_t idx : out.permutation) {
        out.x_sorted.push_back(x[idx]);
        out.y_concomitant.push_back(y[idx]);
    }
    for (std::size_t i = 1; i < out.x_sorted.size(); ++i) {
        if (out.x_sorted[i] == out.x_sorted[i - 1]) {
            ++out.tie_count;
        }
    }
    return out;
}

std::optional<double> index_i(const OrderedSample& ordered) {
    require_points(ordered.y_concomitant.size(), 2);
    const auto [up, total] = variation(ordered.y_concomitant);
    if (total == 0.0) {
        return std::nullopt;
    }
    return up / total;
}

double growth_scale(std::size_t n, double p) {
    const auto dn = static_cast<double>(n);
    if (p == 1.0) {
        return dn;
    }
    if (p == 2.0) {
        return std::sqrt(dn);
    }
    return std::pow(dn, 1.0 / p);
}

double index_b(const OrderedSample& ordered, double p) {
    require_valid_p(p);
    const std::size_t n = ordered.y_concomitant.size();
    require_points(n, 2);
    return variation(ordered.y_concomitant).total / growth_scale(n, p);
}

std::optional<double> lambda_n(const OrderedSample& ordered) {
    const auto& y = ordered.y_concomitant;
    require_points(y.size(), 2);
    const double total = variation(y).total;
    if (total == 0.0) {
        return std::nullopt;
    }
    return (y.back() - y.front()) / total;
}

IndexCurve index_curves(const PairedSample& sample, std::size_t n_min, double p) {
    require_valid_p(p);
    if (n_min < 2) {
        throw Error(ErrorKind::TooFewPoints, "n_min must be at least 2");
    }
    require_points(sample.size(), n_min);

    const auto x = sample.x();
    const auto y = sample.y();

    // Key (x, t) orders ties by arrival, matching the stable sort.
    std::map<std::pair<double, std::size_t>, double> ranked;
    ExactSum up;
    ExactSum total;
    auto add_link = [&](double lo, double hi) {
        const double d = hi - lo;
        up.add(positive_part(d));
        total.add(std::fabs(d));
    };
    auto drop_link = [&](double lo, double hi) {
        const double d = hi - lo;
        up.subtract(positive_part(d));
        total.subtract(std::fabs(d));
    };

    IndexCurve curve;
    curve.p = p;
    const std::size_t count = sample.size() - n_min + 1;
    curve.n_values.reserve(count);
    curve.i_values.reserve(count);
    curve.b_values.reserve(count);

    for (std::size_t t = 0; t < sample.size(); ++t) {
        const auto it = ranked.emplace(std::pair{x[t], t}, y[t]).first;
        const bool has_prev = it != ranked.begin();
        const auto next = std::next(it);
        const bool has_next = next != ranked.end();
        if (has_prev && has_next) {
            drop_link(std::prev(it)->second, next->second);
        }
        if (has_prev) {
            add_link(std::prev(it)->second, y[t]);
        }
        if (has_next) {
            add_link(y[t], next->second);
        }

        const std::size_t n = t + 1;
        if (n < n_min) {
            continue;
        }
        const double total_now = total.value();
        curve.n_values.push_back(n);
        curve.i_values.push_back(total_now == 0.0 ? std::nullopt
                                                  : std::optional<double>(up.value() / total_now));
        curve.b_values.push_back(total_now / growth_scale(n, p));
    }
    return curve;
}

}  // namespace anomidx
