#include "anomidx/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "anomidx/error.hpp"
#include "anomidx/transforms_io.hpp"

namespace anomidx {

namespace {

const std::map<std::string, ServiceRange>& service_ranges() {
    static const std::map<std::string, ServiceRange> ranges{
        {"precise", {120.0, 120.0}},
        {"strict", {117.0, 123.0}},
        {"satisfactory", {114.0, 126.0}},
    };
    return ranges;
}

const std::map<std::string, double>& anomaly_shapes() {
    static const std::map<std::string, double> shapes{{"a1.2", 1.2}, {"a11", 11.0}};
    return shapes;
}

std::vector<std::string> split_dash(const std::string& name) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = name.find('-', start);
        parts.push_back(name.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void unknown_preset(const std::string& name) {
    throw Error(ErrorKind::UnknownPreset,
                "'" + name + "' (try e.g. strict-none, precise-tf2-a1.2, satisfactory-tf3-a11)");
}

ReplicationResult run_replication(const ScenarioSpec& spec, const DetectorConfig& detector,
                                  std::size_t r) {
    const auto generated = scenario_generate(spec, r);
    ReplicationResult out;
    out.replication = r;
    out.curve = index_curves(generated.sample, spec.n_min, spec.p);
    try {
        out.verdict = classify(out.curve, detector);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::AllUndefined && e.kind() != ErrorKind::TooFewPoints) {
            throw;
        }
        out.verdict.classification = Classification::Inconclusive;
        out.verdict.notes = e.what();
    }
    return out;
}

}  // namespace

ScenarioSpec preset(const std::string& name) {
    const auto parts = split_dash(name);
    if (parts.size() < 2 || parts.size() > 3) {
        unknown_preset(name);
    }
    const auto range = service_ranges().find(parts[0]);
    if (range == service_ranges().end()) {
        unknown_preset(name);
    }

    ScenarioSpec spec;
    spec.name = name;
    spec.arma = voltage_arma_spec();
    spec.service_range = range->second;
    spec.n_min = 2;
    spec.n_max = 300;
    spec.p = 2.0;

    if (parts[1] == "none") {
        if (parts.size() != 2) {
            unknown_preset(name);
        }
        return spec;
    }
    const auto mode = parse_transfer_mode(parts[1]);
    if (!mode || parts.size() != 3 || !parts[1].starts_with("tf")) {
        unknown_preset(name);
    }
    const auto shape = anomaly_shapes().find(parts[2]);
    if (shape == anomaly_shapes().end()) {
        unknown_preset(name);
    }
    spec.mode = mode;
    const LomaxSpec law{shape->second, 1.0};
    if (uses_input_anomaly(*mode)) spec.input_anomaly = law;
    if (uses_output_anomaly(*mode)) spec.output_anomaly = law;
    return spec;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const char* range : {"precise", "strict", "satisfactory"}) {
        names.push_back(std::string(range) + "-none");
        for (const char* mode : {"tf1", "tf2", "tf3"}) {
            for (const char* shape : {"a1.2", "a11"}) {
                names.push_back(std::string(range) + "-" + mode + "-" + shape);
            }
        }
    }
    return names;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw Error(ErrorKind::EmptySample, "quantile of an empty set");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

CurveAggregate aggregate_curves(const std::vector<ReplicationResult>& replications) {
    CurveAggregate agg;
    if (replications.empty()) {
        return agg;
    }
    const auto& ref = replications.front().curve;
    agg.n_values = ref.n_values;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        std::vector<double> is;
        std::vector<double> bs;
        for (const auto& rep : replications) {
            if (rep.curve.i_values[k]) is.push_back(*rep.curve.i_values[k]);
            bs.push_back(rep.curve.b_values[k]);
        }
        agg.i_defined.push_back(is.size());
        if (is.empty()) {
            agg.i_q1.emplace_back();
            agg.i_median.emplace_back();
            agg.i_q3.emplace_back();
        } else {
            agg.i_q1.emplace_back(quantile(is, 0.25));
            agg.i_median.emplace_back(quantile(is, 0.5));
            agg.i_q3.emplace_back(quantile(is, 0.75));
        }
        agg.b_q1.push_back(quantile(bs, 0.25));
        agg.b_median.push_back(quantile(bs, 0.5));
        agg.b_q3.push_back(quantile(bs, 0.75));
    }
    return agg;
}

ScenarioResult run_scenario(const ScenarioSpec& spec, const DetectorConfig& detector,
                            unsigned threads) {
    validate(spec);
    validate(detector);
    ScenarioResult result;
    result.spec = spec;
    result.detector = detector;
    result.replications.resize(spec.replications);

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.replications));

    if (threads <= 1) {
        for (std::size_t r = 0; r < spec.replications; ++r) {
            result.replications[r] = run_replication(spec, detector, r);
        }
    } else {
        // Each slot is written by exactly one worker, so output order and
        // content match the serial path.
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t r = next++; r < spec.replications && !failed; r = next++) {
                    try {
                        result.replications[r] = run_replication(spec, detector, r);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
        workers.clear();
        if (failure) std::rethrow_exception(failure);
    }

    result.aggregate = aggregate_curves(result.replications);
    const auto affected = std::count_if(
        result.replications.begin(), result.replications.end(), [](const ReplicationResult& r) {
            return r.verdict.classification == Classification::AnomalyAffected;
        });
    result.detection_rate =
        static_cast<double>(affected) / static_cast<double>(result.replications.size());
    return result;
}

std::string replications_csv(const ScenarioResult& result) {
    std::string out = "replication,n,I_n,B_np\n";
    for (const auto& rep : result.replications) {
        for (std::size_t k = 0; k < rep.curve.size(); ++k) {
            out += std::to_string(rep.replication);
            out += ',';
            out += std::to_string(rep.curve.n_values[k]);
            out += ',';
            if (rep.curve.i_values[k]) out += format_double(*rep.curve.i_values[k]);
            out += ',';
            out += format_double(rep.curve.b_values[k]);
            out += '\n';
        }
    }
    return out;
}

}  // namespace anomidx
