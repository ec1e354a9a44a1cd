#include "anomidx/detect.hpp"

#include <cmath>

#include "anomidx/error.hpp"

namespace anomidx {

namespace {

double least_squares_slope(std::span<const double> u, std::span<const double> v) {
    const auto n = static_cast<double>(u.size());
    double mu = 0.0;
    double mv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= n;
    mv /= n;
    double suv = 0.0;
    double suu = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suv += (u[i] - mu) * (v[i] - mv);
        suu += (u[i] - mu) * (u[i] - mu);
    }
    return suu > 0.0 ? suv / suu : 0.0;
}

void append_note(std::string& notes, const std::string& note) {
    if (!notes.empty()) {
        notes += "; ";
    }
    notes += note;
}

}  // namespace

void validate(const DetectorConfig& config) {
    if (!(config.tail_fraction > 0.0 && config.tail_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidSpec, "tail_fraction must lie in (0, 1]");
    }
    if (!(config.b_tail_fraction > 0.0 && config.b_tail_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidSpec, "b_tail_fraction must lie in (0, 1]");
    }
    if (!(config.i_band > 0.0)) {
        throw Error(ErrorKind::InvalidSpec, "i_band must be positive");
    }
    if (!std::isfinite(config.b_growth_threshold)) {
        throw Error(ErrorKind::InvalidSpec, "b_growth_threshold must be finite");
    }
    if (config.min_points < 2) {
        throw Error(ErrorKind::InvalidSpec, "min_points must be at least 2");
    }
}

std::string_view to_string(Classification c) noexcept {
    switch (c) {
        case Classification::AnomalyAffected: return "anomaly_affected";
        case Classification::AnomalyFree: return "anomaly_free";
        case Classification::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double log_log_slope(std::span<const double> ns, std::span<const double> values) {
    if (ns.size() != values.size() || ns.size() < 2) {
        throw Error(ErrorKind::TooFewPoints, "log-log fit needs at least two paired points");
    }
    std::vector<double> lu;
    std::vector<double> lv;
    lu.reserve(ns.size());
    lv.reserve(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(ns[i] > 0.0) || !(values[i] > 0.0)) {
            throw Error(ErrorKind::InvalidSpec, "log-log fit needs positive values");
        }
        lu.push_back(std::log(ns[i]));
        lv.push_back(std::log(values[i]));
    }
    return least_squares_slope(lu, lv);
}

std::optional<double> growth_exponent(const IndexCurve& curve, std::size_t n_lo,
                                      std::size_t n_hi) {
    std::vector<double> ns;
    std::vector<double> bs;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        const std::size_t n = curve.n_values[k];
        if (n >= n_lo && n <= n_hi && curve.b_values[k] > 0.0) {
            ns.push_back(static_cast<double>(n));
            bs.push_back(curve.b_values[k]);
        }
    }
    if (ns.size() < 2) {
        return std::nullopt;
    }
    return log_log_slope(ns, bs);
}

std::optional<std::size_t> sustained_entry_n(const IndexCurve& curve, double band) {
    std::optional<std::size_t> entry;
    for (std::size_t k = curve.size(); k-- > 0;) {
        const auto& i = curve.i_values[k];
        if (!i || std::fabs(*i - 0.5) > band) {
            break;
        }
        entry = curve.n_values[k];
    }
    return entry;
}

Verdict classify(const IndexCurve& curve, const DetectorConfig& config) {
    validate(config);
    const std::size_t total = curve.size();
    if (total < config.min_points) {
        throw Error(ErrorKind::TooFewPoints, "curve has " + std::to_string(total) +
                                                 " points, detector needs " +
                                                 std::to_string(config.min_points));
    }
    auto window = [&](double fraction) {
        const auto len =
            static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total)));
        return std::min(std::max(len, config.min_points), total);
    };
    const std::size_t tail = window(config.tail_fraction);
    const std::size_t b_window = window(config.b_tail_fraction);
    const std::size_t first = total - tail;

    Verdict verdict;
    verdict.tail_points = tail;
    verdict.b_fit_points = b_window;

    // I vote.
    std::vector<double> i_ns;
    std::vector<double> i_dev;
    double i_sum = 0.0;
    for (std::size_t k = first; k < total; ++k) {
        if (const auto& i = curve.i_values[k]) {
            i_ns.push_back(static_cast<double>(curve.n_values[k]));
            i_dev.push_back(std::fabs(*i - 0.5));
            i_sum += *i;
        }
    }
    if (i_ns.size() >= 2) {
        const auto count = static_cast<double>(i_ns.size());
        double dev_sum = 0.0;
        for (double d : i_dev) dev_sum += d;
        verdict.i_tail_mean = i_sum / count;
        verdict.i_tail_deviation = dev_sum / count;
        verdict.i_trend_slope = least_squares_slope(i_ns, i_dev);
        const double rise = *verdict.i_trend_slope * (i_ns.back() - i_ns.front());
        const bool near_half = *verdict.i_tail_deviation <= config.i_band;
        const bool approaching = rise <= config.i_band;
        verdict.i_vote = near_half && approaching ? Classification::AnomalyAffected
                                                  : Classification::AnomalyFree;
        if (near_half && !approaching) {
            append_note(verdict.notes, "I_n near 1/2 but drifting away");
        }
    } else {
        append_note(verdict.notes, "I_n undefined on the tail (0/0)");
    }

    // B vote.
    std::vector<double> b_ns;
    std::vector<double> b_pos;
    bool all_zero = true;
    for (std::size_t k = total - b_window; k < total; ++k) {
        if (curve.b_values[k] > 0.0) {
            all_zero = false;
            b_ns.push_back(static_cast<double>(curve.n_values[k]));
            b_pos.push_back(curve.b_values[k]);
        }
    }
    if (b_pos.size() >= 2) {
        verdict.b_growth_exponent = log_log_slope(b_ns, b_pos);
        verdict.b_vote = *verdict.b_growth_exponent > config.b_growth_threshold
                             ? Classification::AnomalyAffected
                             : Classification::AnomalyFree;
    } else if (all_zero) {
        verdict.b_growth_exponent = 0.0;
        verdict.b_vote = Classification::AnomalyFree;
        append_note(verdict.notes, "B identically zero");
    } else {
        append_note(verdict.notes, "too few positive B values for a growth fit");
    }

    if (!verdict.i_vote && !verdict.b_vote) {
        throw Error(ErrorKind::AllUndefined, "neither I_n nor B_{n,p} is usable on the tail");
    }
    if (verdict.i_vote && verdict.b_vote && *verdict.i_vote == *verdict.b_vote) {
        verdict.classification = *verdict.i_vote;
    } else {
        verdict.classification = Classification::Inconclusive;
        if (verdict.i_vote && verdict.b_vote) {
            append_note(verdict.notes, "I_n and B_{n,p} disagree");
        }
    }
    return verdict;
}

}  // namespace anomidx
