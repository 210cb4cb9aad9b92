#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hnwsn/commands.hpp"

using namespace hnwsn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir()
{
    const fs::path dir = fs::temp_directory_path() / "hnwsn_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string kv(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
    return "<missing>";
}

std::string last_line(const std::string& text)
{
    auto trimmed = text.substr(0, text.find_last_not_of('\n') + 1);
    return trimmed.substr(trimmed.find_last_of('\n') + 1);
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(HNWSN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_config(const fs::path& path, const std::string& extra_models, std::uint64_t trials, const fs::path& out)
{
    std::ofstream f(path);
    f << R"({"models": [)" << extra_models << R"(], "sigma_values": [10], "n_values": [10, 50, 100],
            "s_values": [5], "d_values": [5], "r_values": [1],
            "region": {"x_min": 0, "x_max": 100, "y_min": -50, "y_max": 50},
            "trials": )" << trials << R"(, "master_seed": 5, "output_path": ")" << out.string() << "\"}";
}

}  // namespace

TEST(CmdSample, HeaderOnlyForZero)
{
    std::ostringstream out, err;
    SampleArgs a;
    a.n = 0;
    EXPECT_EQ(cmd_sample(a, out, err), kExitOk);
    EXPECT_EQ(out.str(), "x,y\n");
}

TEST(CmdSample, DeterministicAndMean)
{
    SampleArgs a;
    a.sigma = 5;
    a.n = 100000;
    a.seed = 42;
    std::ostringstream o1, o2, err;
    ASSERT_EQ(cmd_sample(a, o1, err), kExitOk);
    ASSERT_EQ(cmd_sample(a, o2, err), kExitOk);
    EXPECT_EQ(o1.str(), o2.str());
    std::istringstream in(o1.str());
    const auto t = parse_csv(in);
    ASSERT_EQ(t.rows.size(), 100000u);
    double sum = 0;
    for (const auto& row : t.rows) sum += std::stod(row[0]);
    EXPECT_NEAR(sum / 1e5, 3.989422804, 0.05);
}

TEST(CmdSample, UnwritablePath)
{
    SampleArgs a;
    a.n = 3;
    a.output = "/nonexistent-dir/x.csv";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_sample(a, out, err), kExitIo);
    EXPECT_NE(err.str().find("cannot open"), std::string::npos);
}

TEST(CmdAnalytic, MatchesLibraryAndSumsParts)
{
    AnalyticArgs a;
    a.s = 5;
    a.d = 3;
    a.sigma = 5;
    a.r = 1;
    a.n = 10;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_analytic(a, out, err), kExitOk);
    const auto report = full_report(make_scenario(5, 3), 1, 5, 10);
    EXPECT_EQ(kv(out.str(), "p_d"), format_number(report.p_d));
    const auto j = nlohmann::json::parse(last_line(out.str()));
    EXPECT_EQ(j["p_d"].get<double>(), report.p_d);
    EXPECT_TRUE(j["p_uniform"].is_null());
    for (const char* key : {"p_rect", "p_left", "p_right", "p_total", "p_uniform", "p_d", "p_not_detected"})
        EXPECT_TRUE(j.contains(key)) << key;
    const double sum = j["p_rect"].get<double>() + j["p_left"].get<double>() + j["p_right"].get<double>();
    EXPECT_NEAR(j["p_total"].get<double>(), sum, 1e-8);
}

TEST(CmdAnalytic, ZeroSensorsAndErrors)
{
    AnalyticArgs a;
    a.s = 5;
    a.d = 3;
    a.sigma = 5;
    a.n = 0;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_analytic(a, out, err), kExitOk);
    EXPECT_EQ(kv(out.str(), "p_d"), "0");
    a.d = 9;  // d > S
    EXPECT_EQ(cmd_analytic(a, out, err), kExitValidation);
    a.d = 3;
    a.tolerance = 1e-300;  // unreachable
    std::ostringstream err2;
    EXPECT_EQ(cmd_analytic(a, out, err2), kExitNumerical);
    EXPECT_NE(err2.str().find("best estimate"), std::string::npos);
}

TEST(CmdSimulate, SingleTrialAndDeterminism)
{
    SimulateArgs a;
    a.sigma = 5;
    a.n = 10;
    a.s = 5;
    a.d = 3;
    a.trials = 1;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_simulate(a, out, err), kExitOk);
    const auto p = kv(out.str(), "p_hat");
    EXPECT_TRUE(p == "0" || p == "1");
    a.trials = 5000;
    std::ostringstream o1, o2;
    cmd_simulate(a, o1, err);
    cmd_simulate(a, o2, err);
    EXPECT_EQ(o1.str(), o2.str());
}

TEST(CmdSimulate, CrossCommandOracle)
{
    SimulateArgs s;
    s.sigma = 5;
    s.n = 10;
    s.s = 5;
    s.d = 3;
    s.r = 1;
    s.trials = 1000000;
    s.seed = 99;
    AnalyticArgs a;
    a.s = 5;
    a.d = 3;
    a.sigma = 5;
    a.r = 1;
    a.n = 10;
    std::ostringstream so, ao, err;
    ASSERT_EQ(cmd_simulate(s, so, err), kExitOk);
    ASSERT_EQ(cmd_analytic(a, ao, err), kExitOk);
    EXPECT_NEAR(std::stod(kv(so.str(), "p_hat")), std::stod(kv(ao.str(), "p_d")), 0.005);
}

TEST(CmdSweepPlot, RoundTripAndDeterminism)
{
    const auto dir = scratch_dir();
    const auto cfg = dir / "fig4.json";
    const auto csv = dir / "fig4.csv";
    write_config(cfg, R"("half_normal", "uniform")", 2000, csv);
    std::ostringstream out, err;
    ASSERT_EQ(cmd_sweep({cfg.string(), std::nullopt, 0}, out, err), kExitOk) << err.str();
    const std::string first = slurp(csv);
    ASSERT_EQ(cmd_sweep({cfg.string(), std::nullopt, 1}, out, err), kExitOk);
    EXPECT_EQ(first, slurp(csv));
    EXPECT_EQ(first.substr(0, first.find('\n')), "model,sigma,N,S,d,r,trials,p_analytic,p_hat,ci_half_width,seed");
    EXPECT_TRUE(fs::exists(dir / "fig4.csv.status.csv"));

    PlotArgs p;
    p.csv_path = csv.string();
    p.output = (dir / "fig4.svg").string();
    ASSERT_EQ(cmd_plot(p, out, err), kExitOk) << err.str();
    const std::string svg = slurp(dir / "fig4.svg");
    ASSERT_EQ(cmd_plot(p, out, err), kExitOk);
    EXPECT_EQ(svg, slurp(dir / "fig4.svg"));
    std::size_t polylines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++polylines;
    EXPECT_EQ(polylines, 2u);
}

TEST(CmdSweep, ConfigErrors)
{
    const auto dir = scratch_dir();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_sweep({(dir / "missing.json").string(), std::nullopt, 0}, out, err), kExitIo);
    const auto bad = dir / "bad.json";
    std::ofstream(bad) << R"({"models": ["uniform"], "typo": 1})";
    EXPECT_EQ(cmd_sweep({bad.string(), std::nullopt, 0}, out, err), kExitValidation);
    // every combination has d > S
    const auto allbad = dir / "allbad.json";
    std::ofstream(allbad) << R"({"models": ["uniform"], "sigma_values": [1], "n_values": [1], "s_values": [1],
        "d_values": [2], "r_values": [1], "region": {"x_min": 0, "x_max": 10, "y_min": -5, "y_max": 5},
        "trials": 10, "master_seed": 1, "output_path": "-"})";
    EXPECT_EQ(cmd_sweep({allbad.string(), std::nullopt, 0}, out, err), kExitValidation);
}

TEST(CmdPlot, Errors)
{
    const auto dir = scratch_dir();
    const auto empty = dir / "empty.csv";
    std::ofstream(empty) << "model,N,p_hat\n";
    std::ostringstream out, err;
    PlotArgs p;
    p.csv_path = empty.string();
    EXPECT_EQ(cmd_plot(p, out, err), kExitValidation);
    p.spec.y_columns = {"nope"};
    std::ostringstream err2;
    EXPECT_EQ(cmd_plot(p, out, err2), kExitValidation);
    EXPECT_NE(err2.str().find("nope"), std::string::npos);
}

TEST(CmdValidate, PassesAndDetectsInjectedFault)
{
    std::ostringstream out, err;
    ValidationOptions opt;
    EXPECT_EQ(cmd_validate(opt, out, err), kExitOk) << out.str();
    opt.corrupt_normalizer = true;
    std::ostringstream bad;
    EXPECT_EQ(cmd_validate(opt, bad, err), kExitValidation);
    EXPECT_NE(bad.str().find("FAIL half_normal_pdf normalisation"), std::string::npos);
}

TEST(Binary, ExitCodes)
{
    EXPECT_EQ(run_cli("analytic --S 5 --d 3 --sigma 5 --r 1 --N 10"), 0);
    EXPECT_EQ(run_cli("analytic --S 5 --d 3 --sigma -5 --r 1 --N 10"), 1);
    EXPECT_EQ(run_cli("simulate --N 5 --S 5 --d 3 --r 1 --trials 0"), 1);
    EXPECT_EQ(run_cli("sample --n 3 --model uniform"), 1);  // uniform without region
    EXPECT_EQ(run_cli("sample --n 3 -o /nonexistent-dir/a.csv"), 3);
    EXPECT_EQ(run_cli("sample --n 3 --model uniform --region 0,10,0,10"), 0);
    EXPECT_EQ(run_cli("frobnicate"), 1);
    EXPECT_EQ(run_cli("validate --trials 20000"), 0);
    EXPECT_EQ(run_cli("validate --trials 20000 --inject-normalizer-fault"), 1);
}
