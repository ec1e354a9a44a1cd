#pragma once

#include <vector>

namespace anomidx {

/**
 * Running sum of doubles that keeps the exact value as a list of
 * non-overlapping partials (Shewchuk's expansion arithmetic, the same scheme
 * behind Python's math.fsum).
 *
 * value() returns the exact sum correctly rounded to the nearest double, so
 * the result depends only on the multiset of terms currently held, never on
 * the order in which they were added or removed. The prefix-curve code relies
 * on this to agree bit-for-bit with a fresh per-prefix recomputation.
 *
 * Terms must be finite; intermediate overflow is not handled.
 */
class ExactSum {
public:
    void add(double x);
    void subtract(double x) { add(-x); }

    [[nodiscard]] double value() const;
    [[nodiscard]] std::size_t partial_count() const noexcept { return partials_.size(); }

private:
    std::vector<double> partials_;
};

}  // namespace anomidx
