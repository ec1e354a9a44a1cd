#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anomidx {

/// Aligned input/output observations in time order.
///
/// Construction rejects empty samples, mismatched lengths and non-finite
/// values, so everything downstream may assume a clean sample.
class PairedSample {
public:
    PairedSample(std::vector<double> x, std::vector<double> y, std::string label = {});

    [[nodiscard]] std::span<const double> x() const noexcept { return x_; }
    [[nodiscard]] std::span<const double> y() const noexcept { return y_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }

    /// The first n observations, still in time order.
    [[nodiscard]] PairedSample prefix(std::size_t n) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::string label_;
};

/// Inputs in nondecreasing order with the outputs carried along as
/// concomitants. permutation[i] is the original time index of rank i.
struct OrderedSample {
    std::vector<double> x_sorted;
    std::vector<double> y_concomitant;
    std::size_t tie_count = 0;
    std::vector<std::size_t> permutation;
};

/// Stable sort by input value; equal inputs keep their time order.
[[nodiscard]] OrderedSample concomitant_sort(const PairedSample& sample);

/// Sum of upward concomitant increments over the total variation.
/// std::nullopt when the variation is exactly zero (the 0/0 case).
[[nodiscard]] std::optional<double> index_i(const OrderedSample& ordered);

/// n^{-1/p} times the total variation of the concomitants.
[[nodiscard]] double index_b(const OrderedSample& ordered, double p);

/// Telescoped ratio (last concomitant - first) / total variation, so that
/// index_i == (1 + lambda_n) / 2 whenever both are defined.
[[nodiscard]] std::optional<double> lambda_n(const OrderedSample& ordered);

/// Normalising factor n^{1/p} used by index_b. p == 1 and p == 2 take the
/// exact paths (n and sqrt(n)) rather than std::pow.
[[nodiscard]] double growth_scale(std::size_t n, double p);

struct IndexCurve {
    std::vector<std::size_t> n_values;
    std::vector<std::optional<double>> i_values;
    std::vector<double> b_values;
    double p = 2.0;

    [[nodiscard]] std::size_t size() const noexcept { return n_values.size(); }
    [[nodiscard]] bool empty() const noexcept { return n_values.empty(); }
};

inline constexpr std::size_t kDefaultMinPrefix = 20;

/**
 * I_n and B_{n,p} for every prefix length n = n_min..N of the sample.
 *
 * Points are inserted one at a time into an ordered neighbour structure keyed
 * by (x, time index); each insertion swaps one adjacency for at most two, so
 * the running variation sums are updated in O(log n). The sums are kept
 * exactly (see ExactSum), which makes every point of the curve identical to
 * what concomitant_sort + index_i / index_b would give on that prefix.
 */
[[nodiscard]] IndexCurve index_curves(const PairedSample& sample,
                                      std::size_t n_min = kDefaultMinPrefix, double p = 2.0);

}  // namespace anomidx
