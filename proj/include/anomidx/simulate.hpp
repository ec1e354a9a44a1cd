#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anomidx/core_indices.hpp"
#include "anomidx/rng.hpp"
#include "anomidx/transfer.hpp"

namespace anomidx {

/// (X_t - mean) = sum_i ar[i] (X_{t-1-i} - mean) + eta_t + sum_j ma[j] eta_{t-1-j},
/// eta_t ~ N(0, noise_sd^2).
struct ArmaSpec {
    double mean = 0.0;
    std::vector<double> ar;
    std::vector<double> ma;
    double noise_sd = 1.0;
    std::size_t burn_in = 1000;
};

/// Moduli of the roots of 1 - ar[0] z - ... - ar[p-1] z^p (trailing zero
/// coefficients dropped). Empty for a pure MA model.
[[nodiscard]] std::vector<double> ar_root_moduli(std::span<const double> ar);

/// Throws NonCausalSpec unless every AR root lies strictly outside the unit
/// circle; also rejects non-positive or non-finite noise_sd.
void validate(const ArmaSpec& spec);

/// ARMA(1,1) around 120 with phi 0.6, theta 0.4 and the noise variance
/// 5.76 / 1.64 that gives the process unit marginal variance 9.
[[nodiscard]] ArmaSpec voltage_arma_spec();

struct LomaxSpec {
    double shape = 1.0;
    double scale = 1.0;
};

void validate(const LomaxSpec& spec);

/// Inverse CDF: scale * ((1 - u)^(-1/shape) - 1).
[[nodiscard]] double lomax_quantile(const LomaxSpec& spec, double u);

/// Burn-in steps start from the mean with zero noise history and are discarded.
[[nodiscard]] std::vector<double> arma_generate(const ArmaSpec& spec, std::size_t n, RngStream rng);
[[nodiscard]] std::vector<double> lomax_sample(const LomaxSpec& spec, std::size_t n, RngStream rng);
[[nodiscard]] std::vector<double> normal_sample(double mean, double sd, std::size_t n,
                                                RngStream rng);

struct ServiceRange {
    double lower = 0.0;
    double upper = 0.0;
};

/**
 * One controlled experiment. mode == std::nullopt is the anomaly-free
 * system; otherwise the active channels of the mode draw from the matching
 * anomaly law, and a channel without a law contributes zeros.
 */
struct ScenarioSpec {
    std::string name;
    ArmaSpec arma;
    ServiceRange service_range;
    std::optional<TransferMode> mode;
    std::optional<LomaxSpec> input_anomaly;
    std::optional<LomaxSpec> output_anomaly;
    std::size_t n_max = 300;
    std::size_t n_min = 2;
    double p = 2.0;
    std::uint64_t seed = kDefaultSeed;
    std::size_t replications = 1;
};

/// Throws InvalidRange, InvalidSpec, InvalidP or NonCausalSpec.
void validate(const ScenarioSpec& spec);

/// Stream ids used by replication r: inputs, input anomalies, output anomalies.
[[nodiscard]] RngStream input_stream(const ScenarioSpec& spec, std::size_t replication);
[[nodiscard]] RngStream input_anomaly_stream(const ScenarioSpec& spec, std::size_t replication);
[[nodiscard]] RngStream output_anomaly_stream(const ScenarioSpec& spec, std::size_t replication);

struct GeneratedScenario {
    PairedSample sample;               ///< (X_t, Y_t)
    std::vector<double> anomaly_free;  ///< Y0_t = h_0(X_t)
    std::vector<double> delta;
    std::vector<double> eps;
};

[[nodiscard]] GeneratedScenario scenario_generate(const ScenarioSpec& spec,
                                                  std::size_t replication = 0);

}  // namespace anomidx
