#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "anomidx/cli.hpp"
#include "anomidx/json_io.hpp"
#include "anomidx/transforms_io.hpp"

using namespace anomidx;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "anomidx");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path kData = ANOMIDX_TEST_DATA;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("anomidx_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& contents) const {
        std::ofstream(dir_ / name, std::ios::binary) << contents;
        return dir_ / name;
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, IndicesOnReturnsStartsAtTwenty) {
    const auto r = run({"indices", "--input", (kData / "index_pair.csv").string(), "--x-col", "index_a",
                        "--y-col", "index_b", "--transform", "returns", "--out", path("curve.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto curve = read_curve_csv(path("curve.csv"));
    EXPECT_EQ(curve.n_values.front(), 20U);
    EXPECT_EQ(curve.n_values.back(), 250U);

    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["command"], "indices");
    EXPECT_EQ(j["config"]["transform"], "returns");
    EXPECT_EQ(j["config"]["n_min"], 20);
    EXPECT_EQ(j["config"]["p"], 2.0);
    EXPECT_TRUE(j["config"].contains("detector"));
    EXPECT_EQ(j["points"], 231);
    EXPECT_EQ(j["first_n"], 20);
    EXPECT_TRUE(j["verdict"].is_object());
}

TEST_F(Cli, IndicesIsReproducibleFromPrintedConfig) {
    const std::vector<std::string> args{"indices", "--input", (kData / "index_pair.csv").string(), "--x-col",
                                        "0", "--y-col", "1", "--transform", "returns", "--out",
                                        path("a.csv"), "--svg", path("a")};
    const auto first = run(args);
    ASSERT_EQ(first.code, 0) << first.err;
    auto again = args;
    again[10] = path("b.csv");
    again[12] = path("b");
    const auto second = run(again);
    ASSERT_EQ(second.code, 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(slurp(path("a_I.svg")), slurp(path("b_I.svg")));
    EXPECT_EQ(slurp(path("a_B.svg")), slurp(path("b_B.svg")));
    EXPECT_NE(slurp(path("a_I.svg")).find("<svg"), std::string::npos);
    EXPECT_EQ(Json::parse(first.out)["verdict"], Json::parse(second.out)["verdict"]);
}

TEST_F(Cli, IndicesWithLagDifference) {
    const auto r = run({"indices", "--input", (kData / "lead_sales.csv").string(), "--x-col", "leading",
                        "--y-col", "sales", "--transform", "diff:1", "--out", path("c.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto curve = read_curve_csv(path("c.csv"));
    EXPECT_EQ(curve.n_values.front(), 20U);
    EXPECT_EQ(curve.n_values.back(), 149U);
}

TEST_F(Cli, MissingFileIsDataErrorWithoutOutput) {
    const auto r = run({"indices", "--input", path("nope.csv"), "--out", path("out.csv")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("nope.csv"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(fs::exists(path("out.csv")));
}

TEST_F(Cli, BadCellIsDataErrorNamingTheRow) {
    const auto input = write("bad.csv", "a,b\n1,2\n3,4\nx,6\n");
    const auto r = run({"indices", "--input", input.string(), "--out", path("out.csv")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("row 4"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("out.csv")));
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"indices", "--out", path("x.csv")}).code, 1);
    EXPECT_EQ(run({"indices", "--input", (kData / "index_pair.csv").string(), "--p", "-1", "--out",
                   path("x.csv")})
                  .code,
              1);
    EXPECT_EQ(run({"indices", "--input", (kData / "index_pair.csv").string(), "--transform", "log",
                   "--out", path("x.csv")})
                  .code,
              1);
    EXPECT_EQ(run({"simulate", "--out-dir", path("s")}).code, 1);
    EXPECT_EQ(run({"simulate", "--preset", "strict-none", "--spec", "x.json", "--out-dir", path("s")}).code, 1);
}

TEST_F(Cli, SimulateStrictNone) {
    const auto r = run({"simulate", "--preset", "strict-none", "--replications", "3", "--out-dir", path("sim"),
                        "--svg"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["detection_rate"], 0.0);
    EXPECT_EQ(j["config"]["spec"]["seed"], kDefaultSeed);
    EXPECT_EQ(j["classifications"].size(), 3U);
    for (const char* f : {"spec.json", "sample.csv", "curves.csv", "result.json", "replication0_I.svg",
                          "replication0_B.svg"}) {
        EXPECT_TRUE(fs::exists(dir_ / "sim" / f)) << f;
    }
    std::istringstream curves(slurp(dir_ / "sim" / "curves.csv"));
    std::string line;
    std::getline(curves, line);
    std::size_t rows = 0;
    while (std::getline(curves, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        const auto i = line.substr(c2 + 1, c3 - c2 - 1);
        if (!i.empty()) EXPECT_EQ(i, "1");
        ++rows;
    }
    EXPECT_EQ(rows, 3U * 299U);
}

TEST_F(Cli, SimulatePreciseOutputOnlyEndsNearHalf) {
    const auto r = run({"simulate", "--preset", "precise-tf2-a1.2", "--out-dir", path("sim")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto result = read_json_file(dir_ / "sim" / "result.json");
    EXPECT_NEAR(result["aggregate"]["i_median"].back().get<double>(), 0.5, 0.05);
}

TEST_F(Cli, SimulateFromSpecFile) {
    Json spec = to_json(preset("strict-tf2-a11"));
    spec["replications"] = 2;
    write("spec.json", spec.dump());
    const auto r = run({"simulate", "--spec", path("spec.json"), "--out-dir", path("a"), "--threads", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    // Rerunning from the spec the run wrote gives the same outputs.
    const auto again = run({"simulate", "--spec", path("a/spec.json"), "--out-dir", path("b")});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(slurp(dir_ / "a" / "curves.csv"), slurp(dir_ / "b" / "curves.csv"));
    EXPECT_EQ(slurp(dir_ / "a" / "result.json"), slurp(dir_ / "b" / "result.json"));
}

TEST_F(Cli, SimulateInvalidRange) {
    Json spec = to_json(preset("strict-none"));
    spec["service_range"] = {{"a", 123}, {"b", 117}};
    write("bad.json", spec.dump());
    const auto r = run({"simulate", "--spec", path("bad.json"), "--out-dir", path("out")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("InvalidRange"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(Cli, SimulateUnknownPreset) {
    const auto r = run({"simulate", "--preset", "loose-tf1-a3", "--out-dir", path("out")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("UnknownPreset"), std::string::npos);
}

TEST_F(Cli, Limit) {
    write("clamped.json", R"({"breakpoints": [114, 126], "values": [114, 126]})");
    write("constant.json", R"({"breakpoints": [120], "values": [120]})");
    write("tent.json", R"({"breakpoints": [0, 1, 2], "values": [0, 1, 0]})");
    write("broken.json", R"({"breakpoints": [0, 1)");
    write("unsorted.json", R"({"breakpoints": [1, 0], "values": [0, 1]})");

    auto j = Json::parse(run({"limit", "--baseline", path("clamped.json")}).out);
    EXPECT_EQ(j["limit_index"], 1.0);
    EXPECT_EQ(j["lambda"], 1.0);
    j = Json::parse(run({"limit", "--baseline", path("constant.json")}).out);
    EXPECT_TRUE(j["limit_index"].is_null());
    EXPECT_TRUE(j["lambda"].is_null());
    j = Json::parse(run({"limit", "--baseline", path("tent.json")}).out);
    EXPECT_EQ(j["limit_index"], 0.5);
    EXPECT_EQ(j["lambda"], 0.0);

    EXPECT_EQ(run({"limit", "--baseline", path("broken.json")}).code, 2);
    EXPECT_EQ(run({"limit", "--baseline", path("unsorted.json")}).code, 2);
    EXPECT_EQ(run({"limit", "--baseline", path("missing.json")}).code, 2);
}

TEST_F(Cli, AnalyzeBothDirections) {
    const auto r = run({"analyze", "--input", (kData / "index_pair.csv").string(), "--transform", "returns",
                        "--out-dir", path("both"), "--svg"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_TRUE(j.contains("x_to_y"));
    EXPECT_TRUE(j.contains("y_to_x"));
    EXPECT_EQ(read_curve_csv(dir_ / "both" / "curve_xy.csv").size(), 231U);
    EXPECT_EQ(read_curve_csv(dir_ / "both" / "curve_yx.csv").size(), 231U);
    EXPECT_TRUE(fs::exists(dir_ / "both" / "curve_yx_B.svg"));
}

TEST_F(Cli, PresetList) {
    const auto r = run({"preset-list"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out).size(), 21U);
}
