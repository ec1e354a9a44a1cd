#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "anomidx/core_indices.hpp"
#include "anomidx/detect.hpp"
#include "anomidx/simulate.hpp"

namespace anomidx {

/// Named voltage-regulator scenarios: "<range>-<mode>[-a<shape>]" with range
/// in {precise, strict, satisfactory}, mode in {tf1, tf2, tf3, none} and
/// shape in {1.2, 11}; the anomaly-free "none" presets take no shape.
[[nodiscard]] ScenarioSpec preset(const std::string& name);
[[nodiscard]] std::vector<std::string> preset_names();

struct ReplicationResult {
    std::size_t replication = 0;
    IndexCurve curve;
    Verdict verdict;
};

/// Per-n summary across replications. Quantiles use linear interpolation
/// between order statistics; I quantiles only see defined values and are
/// nullopt where no replication has one.
struct CurveAggregate {
    std::vector<std::size_t> n_values;
    std::vector<std::size_t> i_defined;
    std::vector<std::optional<double>> i_q1, i_median, i_q3;
    std::vector<double> b_q1, b_median, b_q3;
};

struct ScenarioResult {
    ScenarioSpec spec;
    DetectorConfig detector;
    std::vector<ReplicationResult> replications;
    CurveAggregate aggregate;
    double detection_rate = 0.0;
};

/// Linear-interpolation quantile of unsorted values (q in [0, 1]).
[[nodiscard]] double quantile(std::vector<double> values, double q);
[[nodiscard]] double median(std::vector<double> values);

[[nodiscard]] CurveAggregate aggregate_curves(const std::vector<ReplicationResult>& replications);

/**
 * Runs every replication with its own derived streams, then aggregates.
 * threads == 0 picks the hardware concurrency. The result does not depend on
 * the thread count.
 */
[[nodiscard]] ScenarioResult run_scenario(const ScenarioSpec& spec,
                                          const DetectorConfig& detector = {},
                                          unsigned threads = 1);

/// Long-format CSV: replication,n,I_n,B_np.
[[nodiscard]] std::string replications_csv(const ScenarioResult& result);

}  // namespace anomidx
