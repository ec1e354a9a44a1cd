#include "anomidx/json_io.hpp"

#include <fstream>

#include "anomidx/error.hpp"

namespace anomidx {

namespace {

template <typename T>
Json optional_value(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    return j.at(key).get<T>();
}

template <typename F>
auto parsing(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string(what) + ": " + e.what());
    }
}

std::optional<LomaxSpec> lomax_from_json(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    const Json& l = j.at(key);
    return LomaxSpec{l.at("shape").get<double>(), get_or(l, "scale", 1.0)};
}

}  // namespace

Json to_json(const PiecewiseLinearBaseline& h) {
    return Json{{"breakpoints", std::vector<double>(h.breakpoints().begin(), h.breakpoints().end())},
                {"values", std::vector<double>(h.values().begin(), h.values().end())}};
}

PiecewiseLinearBaseline baseline_from_json(const Json& j) {
    auto [bp, v] = parsing("baseline", [&] {
        return std::pair{j.at("breakpoints").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>()};
    });
    return PiecewiseLinearBaseline(std::move(bp), std::move(v));
}

Json to_json(const Series& s) { return Json{{"name", s.name}, {"values", s.values}}; }

Series series_from_json(const Json& j) {
    return parsing("series", [&] {
        return Series{j.at("values").get<std::vector<double>>(),
                      get_or<std::string>(j, "name", "")};
    });
}

Json to_json(const ArmaSpec& spec) {
    return Json{{"mean", spec.mean},         {"ar", spec.ar},          {"ma", spec.ma},
                {"noise_sd", spec.noise_sd}, {"burn_in", spec.burn_in}};
}

Json to_json(const LomaxSpec& spec) { return Json{{"shape", spec.shape}, {"scale", spec.scale}}; }

Json to_json(const ScenarioSpec& spec) {
    return Json{
        {"name", spec.name},
        {"arma", to_json(spec.arma)},
        {"service_range", {{"a", spec.service_range.lower}, {"b", spec.service_range.upper}}},
        {"mode", spec.mode ? std::string(to_string(*spec.mode)) : std::string("none")},
        {"input_anomaly", spec.input_anomaly ? to_json(*spec.input_anomaly) : Json(nullptr)},
        {"output_anomaly", spec.output_anomaly ? to_json(*spec.output_anomaly) : Json(nullptr)},
        {"n_max", spec.n_max},
        {"n_min", spec.n_min},
        {"p", spec.p},
        {"seed", spec.seed},
        {"replications", spec.replications},
    };
}

ScenarioSpec scenario_from_json(const Json& j) {
    return parsing("scenario spec", [&] {
        ScenarioSpec spec;
        spec.name = get_or<std::string>(j, "name", "");
        if (j.contains("arma")) {
            const Json& a = j.at("arma");
            spec.arma.mean = get_or(a, "mean", spec.arma.mean);
            spec.arma.ar = get_or(a, "ar", spec.arma.ar);
            spec.arma.ma = get_or(a, "ma", spec.arma.ma);
            spec.arma.noise_sd = get_or(a, "noise_sd", spec.arma.noise_sd);
            spec.arma.burn_in = get_or(a, "burn_in", spec.arma.burn_in);
        }
        const Json& range = j.at("service_range");
        spec.service_range = {range.at("a").get<double>(), range.at("b").get<double>()};
        const auto mode = get_or<std::string>(j, "mode", "none");
        if (mode != "none") {
            spec.mode = parse_transfer_mode(mode);
            if (!spec.mode) {
                throw Error(ErrorKind::InvalidSpec, "unknown transfer mode '" + mode + "'");
            }
        }
        spec.input_anomaly = lomax_from_json(j, "input_anomaly");
        spec.output_anomaly = lomax_from_json(j, "output_anomaly");
        spec.n_max = get_or(j, "n_max", spec.n_max);
        spec.n_min = get_or(j, "n_min", spec.n_min);
        spec.p = get_or(j, "p", spec.p);
        spec.seed = get_or(j, "seed", spec.seed);
        spec.replications = get_or(j, "replications", spec.replications);
        return spec;
    });
}

Json to_json(const DetectorConfig& config) {
    return Json{{"tail_fraction", config.tail_fraction},
                {"b_tail_fraction", config.b_tail_fraction},
                {"i_band", config.i_band},
                {"b_growth_threshold", config.b_growth_threshold},
                {"min_points", config.min_points}};
}

Json to_json(const Verdict& v) {
    auto vote = [](const std::optional<Classification>& c) {
        return c ? Json(std::string(to_string(*c))) : Json(nullptr);
    };
    return Json{
        {"classification", std::string(to_string(v.classification))},
        {"i_tail_mean", optional_value(v.i_tail_mean)},
        {"i_tail_deviation", optional_value(v.i_tail_deviation)},
        {"i_trend_slope", optional_value(v.i_trend_slope)},
        {"b_growth_exponent", optional_value(v.b_growth_exponent)},
        {"i_vote", vote(v.i_vote)},
        {"b_vote", vote(v.b_vote)},
        {"tail_points", v.tail_points},
        {"b_fit_points", v.b_fit_points},
        {"notes", v.notes},
    };
}

Json to_json(const CurveAggregate& a) {
    Json i_median = Json::array();
    Json i_q1 = Json::array();
    Json i_q3 = Json::array();
    for (std::size_t k = 0; k < a.n_values.size(); ++k) {
        i_q1.push_back(optional_value(a.i_q1[k]));
        i_median.push_back(optional_value(a.i_median[k]));
        i_q3.push_back(optional_value(a.i_q3[k]));
    }
    return Json{{"n", a.n_values},       {"i_defined", a.i_defined}, {"i_q1", i_q1},
                {"i_median", i_median},  {"i_q3", i_q3},             {"b_q1", a.b_q1},
                {"b_median", a.b_median}, {"b_q3", a.b_q3}};
}

Json to_json(const ScenarioResult& result) {
    Json verdicts = Json::array();
    for (const auto& rep : result.replications) {
        Json v = to_json(rep.verdict);
        v["replication"] = rep.replication;
        verdicts.push_back(std::move(v));
    }
    return Json{{"spec", to_json(result.spec)},
                {"detector", to_json(result.detector)},
                {"detection_rate", result.detection_rate},
                {"verdicts", verdicts},
                {"aggregate", to_json(result.aggregate)}};
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::FileNotFound, path.string() + ": cannot open file");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

}  // namespace anomidx
