#include "anomidx/simulate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "anomidx/error.hpp"

namespace anomidx {

namespace {

void require_length(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorKind::InvalidLength, "requested a series of length 0");
    }
}

}  // namespace

std::vector<double> ar_root_moduli(std::span<const double> ar) {
    std::size_t order = ar.size();
    while (order > 0 && ar[order - 1] == 0.0) {
        --order;
    }
    if (order == 0) {
        return {};
    }
    // Roots of 1 - sum phi_i z^i are the reciprocals of the eigenvalues of
    // the companion matrix of z^p - phi_1 z^{p-1} - ... - phi_p.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(order),
                                                      static_cast<Eigen::Index>(order));
    for (std::size_t i = 0; i < order; ++i) {
        companion(0, static_cast<Eigen::Index>(i)) = ar[i];
    }
    for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(order); ++i) {
        companion(i, i - 1) = 1.0;
    }
    const Eigen::VectorXcd eigenvalues = companion.eigenvalues();
    std::vector<double> moduli;
    moduli.reserve(order);
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        moduli.push_back(1.0 / std::abs(eigenvalues(i)));
    }
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

void validate(const ArmaSpec& spec) {
    if (!std::isfinite(spec.mean)) {
        throw Error(ErrorKind::NonFiniteValue, "ARMA mean is not finite");
    }
    if (!(spec.noise_sd > 0.0) || !std::isfinite(spec.noise_sd)) {
        throw Error(ErrorKind::InvalidSpec, "ARMA noise_sd must be positive and finite");
    }
    for (double c : spec.ar) {
        if (!std::isfinite(c)) throw Error(ErrorKind::NonFiniteValue, "AR coefficient not finite");
    }
    for (double c : spec.ma) {
        if (!std::isfinite(c)) throw Error(ErrorKind::NonFiniteValue, "MA coefficient not finite");
    }
    for (double modulus : ar_root_moduli(spec.ar)) {
        if (!(modulus > 1.0)) {
            throw Error(ErrorKind::NonCausalSpec,
                        "AR polynomial has a root of modulus " + std::to_string(modulus) +
                            " (must lie outside the unit circle)");
        }
    }
}

ArmaSpec voltage_arma_spec() {
    return ArmaSpec{
        .mean = 120.0,
        .ar = {0.6},
        .ma = {0.4},
        .noise_sd = std::sqrt(5.76 / 1.64),
        .burn_in = 1000,
    };
}

void validate(const LomaxSpec& spec) {
    if (!(spec.shape > 0.0) || !std::isfinite(spec.shape) || !(spec.scale > 0.0) ||
        !std::isfinite(spec.scale)) {
        throw Error(ErrorKind::InvalidSpec, "Lomax shape and scale must be positive and finite");
    }
}

double lomax_quantile(const LomaxSpec& spec, double u) {
    return spec.scale * (std::pow(1.0 - u, -1.0 / spec.shape) - 1.0);
}

std::vector<double> arma_generate(const ArmaSpec& spec, std::size_t n, RngStream stream) {
    validate(spec);
    require_length(n);
    Rng rng(stream);

    // Ring buffers of past deviations and shocks, most recent first.
    std::vector<double> past_dev(spec.ar.size(), 0.0);
    std::vector<double> past_noise(spec.ma.size(), 0.0);
    std::vector<double> out;
    out.reserve(n);

    const std::size_t steps = spec.burn_in + n;
    for (std::size_t t = 0; t < steps; ++t) {
        const double eta = spec.noise_sd * rng.normal();
        double dev = eta;
        for (std::size_t i = 0; i < spec.ar.size(); ++i) {
            dev += spec.ar[i] * past_dev[i];
        }
        for (std::size_t j = 0; j < spec.ma.size(); ++j) {
            dev += spec.ma[j] * past_noise[j];
        }
        if (!past_dev.empty()) {
            std::rotate(past_dev.rbegin(), past_dev.rbegin() + 1, past_dev.rend());
            past_dev.front() = dev;
        }
        if (!past_noise.empty()) {
            std::rotate(past_noise.rbegin(), past_noise.rbegin() + 1, past_noise.rend());
            past_noise.front() = eta;
        }
        if (t >= spec.burn_in) {
            out.push_back(spec.mean + dev);
        }
    }
    return out;
}

std::vector<double> lomax_sample(const LomaxSpec& spec, std::size_t n, RngStream stream) {
    validate(spec);
    require_length(n);
    Rng rng(stream);
    std::vector<double> out(n);
    for (auto& v : out) {
        v = lomax_quantile(spec, rng.uniform());
    }
    return out;
}

std::vector<double> normal_sample(double mean, double sd, std::size_t n, RngStream stream) {
    if (!(sd >= 0.0) || !std::isfinite(sd) || !std::isfinite(mean)) {
        throw Error(ErrorKind::InvalidSpec, "normal sd must be finite and >= 0");
    }
    require_length(n);
    Rng rng(stream);
    std::vector<double> out(n);
    for (auto& v : out) {
        v = mean + sd * rng.normal();
    }
    return out;
}

void validate(const ScenarioSpec& spec) {
    const auto [a, b] = spec.service_range;
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorKind::NonFiniteValue, "service range is not finite");
    }
    if (a > b) {
        throw Error(ErrorKind::InvalidRange, "service range has a > b");
    }
    if (spec.n_min < 2) {
        throw Error(ErrorKind::InvalidSpec, "n_min must be at least 2");
    }
    if (spec.n_max < spec.n_min) {
        throw Error(ErrorKind::InvalidSpec, "n_max must be >= n_min");
    }
    if (spec.replications < 1) {
        throw Error(ErrorKind::InvalidSpec, "replications must be >= 1");
    }
    if (!(spec.p > 0.0) || !std::isfinite(spec.p)) {
        throw Error(ErrorKind::InvalidP, "moment order p must be a positive finite number");
    }
    validate(spec.arma);
    if (spec.input_anomaly) validate(*spec.input_anomaly);
    if (spec.output_anomaly) validate(*spec.output_anomaly);
}

RngStream input_stream(const ScenarioSpec& spec, std::size_t replication) {
    return {spec.seed, 3 * static_cast<std::uint64_t>(replication)};
}

RngStream input_anomaly_stream(const ScenarioSpec& spec, std::size_t replication) {
    return {spec.seed, 3 * static_cast<std::uint64_t>(replication) + 1};
}

RngStream output_anomaly_stream(const ScenarioSpec& spec, std::size_t replication) {
    return {spec.seed, 3 * static_cast<std::uint64_t>(replication) + 2};
}

GeneratedScenario scenario_generate(const ScenarioSpec& spec, std::size_t replication) {
    validate(spec);
    const std::size_t n = spec.n_max;
    const auto baseline = clamped(spec.service_range.lower, spec.service_range.upper);

    std::vector<double> x = arma_generate(spec.arma, n, input_stream(spec, replication));
    std::vector<double> delta(n, 0.0);
    std::vector<double> eps(n, 0.0);
    if (spec.mode && uses_input_anomaly(*spec.mode) && spec.input_anomaly) {
        delta = lomax_sample(*spec.input_anomaly, n, input_anomaly_stream(spec, replication));
    }
    if (spec.mode && uses_output_anomaly(*spec.mode) && spec.output_anomaly) {
        eps = lomax_sample(*spec.output_anomaly, n, output_anomaly_stream(spec, replication));
    }

    std::vector<double> y(n);
    std::vector<double> y0(n);
    for (std::size_t t = 0; t < n; ++t) {
        y0[t] = eval_baseline(baseline, x[t]);
        y[t] = spec.mode ? apply_transfer(*spec.mode, baseline, x[t], delta[t], eps[t]) : y0[t];
    }
    return GeneratedScenario{
        .sample = PairedSample(std::move(x), std::move(y), spec.name),
        .anomaly_free = std::move(y0),
        .delta = std::move(delta),
        .eps = std::move(eps),
    };
}

}  // namespace anomidx
