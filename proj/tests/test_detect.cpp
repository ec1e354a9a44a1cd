#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "anomidx/detect.hpp"
#include "anomidx/error.hpp"
#include "anomidx/experiment.hpp"
#include "anomidx/simulate.hpp"

using namespace anomidx;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no anomidx::Error thrown";
    return ErrorKind::IoError;
}

// Curve over n = 2..n_max with I and B given as functions of n.
template <class IFn, class BFn>
IndexCurve make_curve(std::size_t n_max, IFn i_of, BFn b_of) {
    IndexCurve c;
    c.p = 2.0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        c.n_values.push_back(n);
        c.i_values.push_back(i_of(static_cast<double>(n)));
        c.b_values.push_back(b_of(static_cast<double>(n)));
    }
    return c;
}

}  // namespace

TEST(Detect, MonotoneBoundedCurveIsFree) {
    const auto c = make_curve(300, [](double) { return std::optional<double>(1.0); },
                              [](double n) { return 6.0 / std::sqrt(n) * 0.5; });
    const auto v = classify(c);
    EXPECT_EQ(v.classification, Classification::AnomalyFree);
    EXPECT_EQ(v.i_vote, Classification::AnomalyFree);
    EXPECT_EQ(v.b_vote, Classification::AnomalyFree);
    EXPECT_DOUBLE_EQ(*v.i_tail_mean, 1.0);
    EXPECT_NEAR(*v.b_growth_exponent, -0.5, 1e-9);
    EXPECT_EQ(v.tail_points, 150U);
    EXPECT_EQ(v.b_fit_points, 299U);
}

TEST(Detect, IidRegimeIsAffected) {
    const auto c = make_curve(300, [](double n) { return std::optional<double>(0.5 + 0.3 / n); },
                              [](double n) { return 2.0 * std::sqrt(n); });
    const auto v = classify(c);
    EXPECT_EQ(v.classification, Classification::AnomalyAffected);
    EXPECT_NEAR(*v.b_growth_exponent, 0.5, 1e-9);
    EXPECT_LE(*v.i_tail_deviation, 0.05);
}

TEST(Detect, DisagreementIsInconclusive) {
    const auto c = make_curve(300, [](double) { return std::optional<double>(0.5); },
                              [](double) { return 3.0; });
    const auto v = classify(c);
    EXPECT_EQ(v.classification, Classification::Inconclusive);
    EXPECT_EQ(v.i_vote, Classification::AnomalyAffected);
    EXPECT_EQ(v.b_vote, Classification::AnomalyFree);
    EXPECT_NEAR(*v.b_growth_exponent, 0.0, 1e-12);
    EXPECT_FALSE(v.notes.empty());
}

TEST(Detect, DriftingAwayFromHalfIsNotAffected) {
    // Mean deviation inside the band but rising steadily across the window.
    const auto c = make_curve(300, [](double n) { return std::optional<double>(0.5 + 0.08 * std::max(n - 150.0, 0.0) / 150.0); },
                              [](double n) { return std::sqrt(n); });
    const auto v = classify(c);
    EXPECT_LE(*v.i_tail_deviation, 0.05);
    EXPECT_GT(*v.i_trend_slope, 0.0);
    EXPECT_EQ(v.i_vote, Classification::AnomalyFree);
    EXPECT_EQ(v.classification, Classification::Inconclusive);
}

TEST(Detect, UndefinedIndexWithZeroB) {
    const auto c = make_curve(300, [](double) { return std::optional<double>(); }, [](double) { return 0.0; });
    const auto v = classify(c);
    EXPECT_EQ(v.classification, Classification::Inconclusive);
    EXPECT_FALSE(v.i_vote.has_value());
    EXPECT_EQ(v.b_vote, Classification::AnomalyFree);
    EXPECT_EQ(v.b_growth_exponent, 0.0);
}

TEST(Detect, Errors) {
    const auto short_curve = make_curve(20, [](double) { return std::optional<double>(1.0); },
                                        [](double) { return 1.0; });
    EXPECT_EQ(kind_of([&] { (void)classify(short_curve); }), ErrorKind::TooFewPoints);

    auto unusable = make_curve(300, [](double) { return std::optional<double>(); }, [](double) { return 0.0; });
    unusable.b_values.back() = 1.0;  // a lone positive value cannot be fitted
    EXPECT_EQ(kind_of([&] { (void)classify(unusable); }), ErrorKind::AllUndefined);

    DetectorConfig bad;
    bad.tail_fraction = 0.0;
    EXPECT_EQ(kind_of([&] { validate(bad); }), ErrorKind::InvalidSpec);
    bad = {};
    bad.i_band = -1.0;
    EXPECT_EQ(kind_of([&] { validate(bad); }), ErrorKind::InvalidSpec);
}

TEST(Detect, ScaleRobustness) {
    const auto sample = scenario_generate(preset("strict-tf2-a1.2")).sample;
    const auto curve = index_curves(sample, 2, 2.0);
    for (double c : {0.001, 3.5, 1e4}) {
        IndexCurve scaled = curve;
        for (auto& b : scaled.b_values) b *= c;
        const auto a = classify(curve);
        const auto s = classify(scaled);
        EXPECT_EQ(a.classification, s.classification);
        EXPECT_EQ(a.i_tail_mean, s.i_tail_mean);
        EXPECT_EQ(a.i_trend_slope, s.i_trend_slope);
        EXPECT_NEAR(*a.b_growth_exponent, *s.b_growth_exponent, 1e-9);
    }
}

TEST(Detect, Deterministic) {
    const auto curve = index_curves(scenario_generate(preset("precise-tf2-a1.2")).sample, 2, 2.0);
    const auto a = classify(curve);
    const auto b = classify(curve);
    EXPECT_EQ(a.classification, b.classification);
    EXPECT_EQ(a.b_growth_exponent, b.b_growth_exponent);
    EXPECT_EQ(a.i_tail_deviation, b.i_tail_deviation);
    EXPECT_EQ(a.notes, b.notes);
}

TEST(Detect, VerdictIsRederivableFromDiagnostics) {
    const DetectorConfig cfg;
    for (const auto& name : preset_names()) {
        const auto curve = index_curves(scenario_generate(preset(name)).sample, 2, 2.0);
        const auto v = classify(curve, cfg);
        if (v.b_growth_exponent) {
            EXPECT_EQ(v.b_vote, *v.b_growth_exponent > cfg.b_growth_threshold
                                    ? Classification::AnomalyAffected
                                    : Classification::AnomalyFree)
                << name;
        }
        if (v.i_vote == Classification::AnomalyAffected) EXPECT_LE(*v.i_tail_deviation, cfg.i_band) << name;
        if (v.i_vote && v.b_vote && *v.i_vote == *v.b_vote) {
            EXPECT_EQ(v.classification, *v.i_vote) << name;
        } else {
            EXPECT_EQ(v.classification, Classification::Inconclusive) << name;
        }
    }
}

TEST(GrowthExponent, RecoversSquareRootLaw) {
    for (double c : {0.01, 1.0, 250.0}) {
        const auto curve = make_curve(300, [](double) { return std::optional<double>(0.5); },
                                      [c](double n) { return c * std::sqrt(n); });
        EXPECT_NEAR(*growth_exponent(curve, 100, 300), 0.5, 0.1);
        EXPECT_NEAR(*growth_exponent(curve, 2, 300), 0.5, 1e-9);
    }
    const std::vector<double> ns{1.0, 10.0, 100.0};
    const std::vector<double> vs{2.0, 20.0, 200.0};
    EXPECT_NEAR(log_log_slope(ns, vs), 1.0, 1e-12);
}

TEST(SustainedEntry, Examples) {
    auto curve = make_curve(10, [](double n) { return std::optional<double>(n < 6 ? 0.9 : 0.52); },
                            [](double) { return 1.0; });
    EXPECT_EQ(sustained_entry_n(curve, 0.05), 6U);
    curve.i_values[5] = 0.7;  // n = 7 leaves the band again
    EXPECT_EQ(sustained_entry_n(curve, 0.05), 8U);
    curve.i_values.back() = std::nullopt;
    EXPECT_FALSE(sustained_entry_n(curve, 0.05).has_value());
}
