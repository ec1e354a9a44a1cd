#include "anomidx/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "anomidx/core_indices.hpp"
#include "anomidx/detect.hpp"
#include "anomidx/error.hpp"
#include "anomidx/experiment.hpp"
#include "anomidx/json_io.hpp"
#include "anomidx/svg.hpp"
#include "anomidx/transfer.hpp"
#include "anomidx/transforms_io.hpp"

namespace anomidx::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnknownPreset:
        case ErrorKind::InvalidRange:
        case ErrorKind::InvalidSpec:
        case ErrorKind::InvalidP:
        case ErrorKind::NonCausalSpec:
            return kUsageError;
        case ErrorKind::EmptySample:
        case ErrorKind::NonFiniteValue:
        case ErrorKind::TooFewPoints:
        case ErrorKind::InvalidBaseline:
        case ErrorKind::InvalidLength:
        case ErrorKind::ZeroBase:
        case ErrorKind::FileNotFound:
        case ErrorKind::ParseError:
        case ErrorKind::LengthMismatch:
        case ErrorKind::IoError:
        case ErrorKind::AllUndefined:
            return kDataError;
    }
    return kInternalError;
}

struct DetectorFlags {
    DetectorConfig config;

    void attach(CLI::App& cmd) {
        cmd.add_option("--tail-fraction", config.tail_fraction, "Share of the curve judged")
            ->capture_default_str();
        cmd.add_option("--b-tail-fraction", config.b_tail_fraction,
                       "Share of the curve used for the B growth fit")
            ->capture_default_str();
        cmd.add_option("--i-band", config.i_band, "Allowed mean |I_n - 1/2| on the tail")
            ->capture_default_str();
        cmd.add_option("--b-threshold", config.b_growth_threshold,
                       "log-log growth exponent of B treated as growing")
            ->capture_default_str();
        cmd.add_option("--min-points", config.min_points, "Minimum curve length for a verdict")
            ->capture_default_str();
    }
};

struct InputFlags {
    std::string input;
    std::string x_col = "0";
    std::string y_col = "1";
    bool no_header = false;
    std::string transform = "none";
    std::size_t n_min = kDefaultMinPrefix;
    double p = 2.0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--input", input, "CSV file with the paired series")->required();
        cmd.add_option("--x-col", x_col, "Input column: header name or 0-based index")
            ->capture_default_str();
        cmd.add_option("--y-col", y_col, "Output column: header name or 0-based index")
            ->capture_default_str();
        cmd.add_flag("--no-header", no_header, "The file has no header row");
        cmd.add_option("--transform", transform, "none | returns | diff:<k>")
            ->capture_default_str();
        cmd.add_option("--n-min", n_min, "Smallest prefix size on the curve")
            ->capture_default_str();
        cmd.add_option("--p", p, "Moment order of B_{n,p}")->capture_default_str();
    }

    [[nodiscard]] Json to_json() const {
        return Json{{"input", input},         {"x_col", x_col}, {"y_col", y_col},
                    {"header", !no_header},   {"transform", transform},
                    {"n_min", n_min},         {"p", p}};
    }
};

struct CurveReport {
    IndexCurve curve;
    std::size_t tie_count = 0;
    std::optional<Verdict> verdict;
    std::string verdict_note;
};

CurveReport analyse(const PairedSample& sample, std::size_t n_min, double p,
                    const DetectorConfig& detector, std::ostream& err) {
    CurveReport report;
    report.tie_count = concomitant_sort(sample).tie_count;
    if (report.tie_count > 0) {
        err << "warning: " << report.tie_count
            << " tied input value(s); ties are ordered by time index\n";
    }
    report.curve = index_curves(sample, n_min, p);
    try {
        report.verdict = classify(report.curve, detector);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::TooFewPoints && e.kind() != ErrorKind::AllUndefined) throw;
        report.verdict_note = e.what();
        err << "warning: no verdict: " << e.what() << '\n';
    }
    return report;
}

Json report_json(const CurveReport& r) {
    Json j{{"points", r.curve.size()},
           {"first_n", r.curve.empty() ? Json(nullptr) : Json(r.curve.n_values.front())},
           {"last_n", r.curve.empty() ? Json(nullptr) : Json(r.curve.n_values.back())},
           {"tie_count", r.tie_count},
           {"verdict", r.verdict ? to_json(*r.verdict) : Json(nullptr)}};
    if (!r.verdict_note.empty()) j["verdict_note"] = r.verdict_note;
    return j;
}

void write_charts(const IndexCurve& curve, const std::string& prefix, const std::string& label,
                  double p) {
    write_text_file(prefix + "_I.svg", render_i_chart(curve, "I_n " + label));
    write_text_file(prefix + "_B.svg",
                    render_b_chart(curve, "B_{n," + format_double(p) + "} " + label));
}

PairedSample load_input(const InputFlags& flags) {
    const auto raw = read_pairs_csv(flags.input, flags.x_col, flags.y_col, !flags.no_header);
    return apply_transform(Transform::parse(flags.transform), raw);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Concomitant-index anomaly detection for input/output systems", "anomidx"};
    app.require_subcommand(1);

    // indices
    auto* indices = app.add_subcommand("indices", "Index curves and verdict for one direction");
    InputFlags indices_input;
    DetectorFlags indices_detector;
    std::string indices_out;
    std::string indices_svg;
    indices_input.attach(*indices);
    indices_detector.attach(*indices);
    indices->add_option("--out", indices_out, "Curve CSV to write")->required();
    indices->add_option("--svg", indices_svg, "Chart path prefix (writes <prefix>_I.svg, _B.svg)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Index curves and verdicts in both directions");
    InputFlags analyze_input;
    DetectorFlags analyze_detector;
    std::string analyze_dir;
    bool analyze_svg = false;
    analyze_input.attach(*analyze);
    analyze_detector.attach(*analyze);
    analyze->add_option("--out-dir", analyze_dir, "Output directory")->required();
    analyze->add_flag("--svg", analyze_svg, "Also write charts");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a controlled scenario");
    std::string sim_preset;
    std::string sim_spec;
    std::string sim_dir;
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::size_t> sim_reps;
    std::optional<std::size_t> sim_n_max;
    unsigned sim_threads = 1;
    bool sim_svg = false;
    DetectorFlags sim_detector;
    auto* preset_opt = simulate->add_option("--preset", sim_preset, "Named scenario");
    auto* spec_opt = simulate->add_option("--spec", sim_spec, "Scenario spec JSON file");
    preset_opt->excludes(spec_opt);
    simulate->add_option("--out-dir", sim_dir, "Output directory")->required();
    simulate->add_option("--seed", sim_seed, "Master seed (overrides the spec)");
    simulate->add_option("--replications", sim_reps, "Replication count (overrides the spec)");
    simulate->add_option("--n-max", sim_n_max, "Sample size (overrides the spec)");
    simulate->add_option("--threads", sim_threads, "Worker threads, 0 = all cores")
        ->capture_default_str();
    simulate->add_flag("--svg", sim_svg, "Also write charts of replication 0");
    sim_detector.attach(*simulate);

    // limit
    auto* limit = app.add_subcommand("limit", "Anomaly-free limit of I_n for a baseline");
    std::string limit_baseline;
    limit->add_option("--baseline", limit_baseline, "Baseline JSON {breakpoints, values}")
        ->required();

    auto* list = app.add_subcommand("preset-list", "List the named scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kUsageError;
    }

    try {
        if (*indices) {
            const auto sample = load_input(indices_input);
            const auto report = analyse(sample, indices_input.n_min, indices_input.p,
                                        indices_detector.config, err);
            write_curve_csv(report.curve, indices_out);
            if (!indices_svg.empty()) {
                write_charts(report.curve, indices_svg, sample.label(), indices_input.p);
            }
            Json config = indices_input.to_json();
            config["out"] = indices_out;
            config["svg"] = indices_svg.empty() ? Json(nullptr) : Json(indices_svg);
            config["detector"] = to_json(indices_detector.config);
            Json result{{"command", "indices"}, {"config", config}};
            result.update(report_json(report));
            out << result.dump(2) << '\n';
            return kSuccess;
        }

        if (*analyze) {
            const auto sample = load_input(analyze_input);
            const PairedSample swapped({sample.y().begin(), sample.y().end()},
                                       {sample.x().begin(), sample.x().end()}, sample.label());
            const auto forward = analyse(sample, analyze_input.n_min, analyze_input.p,
                                         analyze_detector.config, err);
            const auto backward = analyse(swapped, analyze_input.n_min, analyze_input.p,
                                          analyze_detector.config, err);
            fs::create_directories(analyze_dir);
            const fs::path dir(analyze_dir);
            write_curve_csv(forward.curve, dir / "curve_xy.csv");
            write_curve_csv(backward.curve, dir / "curve_yx.csv");
            if (analyze_svg) {
                write_charts(forward.curve, (dir / "curve_xy").string(), "(x -> y)",
                             analyze_input.p);
                write_charts(backward.curve, (dir / "curve_yx").string(), "(y -> x)",
                             analyze_input.p);
            }
            Json config = analyze_input.to_json();
            config["out_dir"] = analyze_dir;
            config["svg"] = analyze_svg;
            config["detector"] = to_json(analyze_detector.config);
            out << Json{{"command", "analyze"},
                        {"config", config},
                        {"x_to_y", report_json(forward)},
                        {"y_to_x", report_json(backward)}}
                       .dump(2)
                << '\n';
            return kSuccess;
        }

        if (*simulate) {
            if (sim_preset.empty() == sim_spec.empty()) {
                err << "simulate: give exactly one of --preset or --spec\n";
                return kUsageError;
            }
            ScenarioSpec spec = sim_preset.empty() ? scenario_from_json(read_json_file(sim_spec))
                                                   : preset(sim_preset);
            if (sim_seed) spec.seed = *sim_seed;
            if (sim_reps) spec.replications = *sim_reps;
            if (sim_n_max) spec.n_max = *sim_n_max;
            validate(spec);

            const auto result = run_scenario(spec, sim_detector.config, sim_threads);
            const auto first = scenario_generate(spec, 0);

            std::string sample_csv = "t,x,y,y0,delta,eps\n";
            for (std::size_t t = 0; t < first.sample.size(); ++t) {
                sample_csv += std::to_string(t + 1) + ',' + format_double(first.sample.x()[t]) +
                              ',' + format_double(first.sample.y()[t]) + ',' +
                              format_double(first.anomaly_free[t]) + ',' +
                              format_double(first.delta[t]) + ',' + format_double(first.eps[t]) +
                              '\n';
            }
            fs::create_directories(sim_dir);
            const fs::path dir(sim_dir);
            write_text_file(dir / "spec.json", to_json(spec).dump(2) + "\n");
            write_text_file(dir / "sample.csv", sample_csv);
            write_text_file(dir / "curves.csv", replications_csv(result));
            write_text_file(dir / "result.json", to_json(result).dump(2) + "\n");
            if (sim_svg) {
                write_charts(result.replications.front().curve, (dir / "replication0").string(),
                             spec.name, spec.p);
            }

            Json classes = Json::array();
            for (const auto& rep : result.replications) {
                classes.push_back(std::string(to_string(rep.verdict.classification)));
            }
            out << Json{{"command", "simulate"},
                        {"config",
                         {{"spec", to_json(spec)},
                          {"detector", to_json(sim_detector.config)},
                          {"threads", sim_threads},
                          {"out_dir", sim_dir},
                          {"svg", sim_svg}}},
                        {"detection_rate", result.detection_rate},
                        {"classifications", classes}}
                       .dump(2)
                << '\n';
            return kSuccess;
        }

        if (*limit) {
            const auto baseline = baseline_from_json(read_json_file(limit_baseline));
            const auto li = limit_index(baseline);
            const auto lam = lambda_h0(baseline);
            out << Json{{"baseline", to_json(baseline)},
                        {"limit_index", li ? Json(*li) : Json(nullptr)},
                        {"lambda", lam ? Json(*lam) : Json(nullptr)}}
                       .dump(2)
                << '\n';
            return kSuccess;
        }

        if (*list) {
            out << Json(preset_names()).dump(2) << '\n';
            return kSuccess;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kUsageError;
}

}  // namespace anomidx::cli
