#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace maxeig;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "maxeig");
    std::vector<const char*> argv;
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> records(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
            if (tab == std::string::npos) {
                break;
            }
            start = tab + 1;
        }
        rows.push_back(fields);
    }
    return rows;
}

std::string write_temp(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("maxeig_cli_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

} // namespace

TEST(EmitTrace, Checkpoints)
{
    IterationTrace t;
    for (std::size_t k = 0; k <= 2; ++k) {
        t.steps.push_back({k, 1.0 / (k + 1), 0.0});
    }
    EXPECT_EQ(cli::emit_trace(t, {}).size(), 3u);
    const std::vector<std::size_t> zero{0};
    const auto single = cli::emit_trace(t, zero);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].z, 1.0);
    const std::vector<std::size_t> beyond{1, 5};
    const auto rows = cli::emit_trace(t, beyond);
    EXPECT_EQ(rows[0].z, 0.5);
    EXPECT_FALSE(rows[1].z.has_value());
    EXPECT_THROW(cli::emit_trace(IterationTrace{}, zero), std::invalid_argument);
}

TEST(EmitTrace, DefaultLayout)
{
    const std::vector<std::size_t> cps = cli::default_checkpoints();
    const std::vector<std::size_t> expected{0,   1,   2,   3,   4,   5,   6,   7,   8,   9,   10,  50,
                                            100, 200, 300, 400, 500, 600, 700, 800, 900, 990, 1000};
    EXPECT_EQ(cps, expected);
}

TEST(Format, Digits)
{
    EXPECT_EQ(cli::format_number(0.52526796180585511, false), "0.525268");
    EXPECT_EQ(cli::format_number(0.1, true), "0.10000000000000001");
    EXPECT_EQ(std::stod(cli::format_number(0.52526796180585511, true)), 0.52526796180585511);
}

TEST(Cli, BenchMatchesReferenceRows)
{
    const Result r = run({"bench", "--model", "square", "--sizes", "8,100,500,1000", "--machine"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = records(r.out);
    ASSERT_EQ(rows.size(), 4u);
    const double expected[4][3] = {{0.523309, 0.525268, 0.525268},
                                   {0.387333, 0.376393, 0.376383},
                                   {0.349147, 0.338342, 0.338329},
                                   {0.338027, 0.327254, 0.32724}};
    const char* orders[] = {"8", "100", "500", "1000"};
    for (std::size_t i = 0; i < 4; ++i) {
        ASSERT_EQ(rows[i].size(), 6u);
        EXPECT_EQ(rows[i][0], "bench");
        EXPECT_EQ(rows[i][1], orders[i]);
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_NEAR(std::stod(rows[i][2 + j]), expected[i][j], 5e-6);
        }
    }
}

TEST(Cli, BenchHumanTableHasSixDigits)
{
    const Result r = run({"bench", "--sizes", "8"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0.523309"), std::string::npos);
    EXPECT_NE(r.out.find("time"), std::string::npos);
}

TEST(Cli, MachineOutputIsDeterministic)
{
    const std::vector<std::string> args{"solve", "--model", "square:8", "--machine"};
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> bench{"bench", "--sizes", "8,100", "--machine"};
    EXPECT_EQ(run(bench).out, run(bench).out);
}

TEST(Cli, HuaCollapse)
{
    Result r = run({"hua", "44", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("collapse at year 3"), std::string::npos);
    r = run({"hua", "44.344", "20"});
    EXPECT_NE(r.out.find("collapse at year 8"), std::string::npos);
    const std::string file = write_temp("hua.txt", "0.25 0.14\n0.40 0.12\n");
    r = run({"hua", "--file", file, "--machine", "44.34397483", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(records(r.out)[0], (std::vector<std::string>{"collapse_year", "13"}));
    EXPECT_EQ(run({"hua", "44"}).code, 2);
}

TEST(Cli, SolveOneByOneFile)
{
    const std::string file = write_temp("one.txt", "a:\nb:\nc: 5\n");
    const Result r = run({"solve", "--file", file, "--machine"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = records(r.out);
    bool saw_lambda = false, saw_g = false;
    for (const auto& row : rows) {
        if (row[0] == "lambda0") {
            EXPECT_EQ(row[1], "5");
            saw_lambda = true;
        }
        if (row[0] == "g") {
            EXPECT_EQ(row, (std::vector<std::string>{"g", "1"}));
            saw_g = true;
        }
    }
    EXPECT_TRUE(saw_lambda);
    EXPECT_TRUE(saw_g);
}

TEST(Cli, SolvePitfallWarning)
{
    const Result r = run({"solve", "--v0", "uniform"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("4.78557"), std::string::npos);
    EXPECT_NE(r.out.find("warning"), std::string::npos);
}

TEST(Cli, PowerRows)
{
    const Result r = run({"power", "--machine"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = records(r.out);
    ASSERT_EQ(rows.size(), 24u);
    EXPECT_EQ(rows[0][1], "0");
    EXPECT_NEAR(std::stod(rows[0][2]), 2.11289, 1e-5);
    EXPECT_EQ(rows[21][1], "990");
    EXPECT_NEAR(std::stod(rows[21][2]), 0.525268, 1e-6);
    const Result absent = run({"power", "--max-iters", "5", "--checkpoints", "0,10"});
    EXPECT_NE(absent.out.find("absent"), std::string::npos);
}

TEST(Cli, BoundsAndKappa)
{
    Result r = run({"bounds", "--machine"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = records(r.out);
    EXPECT_EQ(rows[0][0], "delta1");
    EXPECT_NEAR(std::stod(rows[0][1]), 2.05768, 1e-4);
    r = run({"kappa", "--kind", "dn", "--grid", "1000", "--machine"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto k = records(r.out);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0][1], "DN");
    EXPECT_NEAR(std::stod(k[0][2]), 0.25, 1e-4);
    const std::string op = write_temp("op.txt", "interval: 0 1\na: constant 1\nb: constant 0\n");
    r = run({"kappa", "--file", op, "--machine"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(records(r.out).size(), 4u);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"solve", "--tol", "-1"}).code, 2);
    EXPECT_EQ(run({"kappa", "--kind", "xy"}).code, 2);
    EXPECT_EQ(run({"solve", "--model", "cube"}).code, 2);
    EXPECT_EQ(run({"solve", "--file", "/nonexistent/file"}).code, 2);
    EXPECT_EQ(run({"solve", "--v0", "random"}).code, 2);
    const std::string bad = write_temp("bad.txt", "a: 1\nb: 1\nc: 0 -1\n");
    EXPECT_EQ(run({"solve", "--file", bad}).code, 2);
    const std::string zero = write_temp("zero.txt", "a: 1\nb: 1\nc: 0 0\n");
    EXPECT_EQ(run({"solve", "--file", zero}).code, 1);
    EXPECT_EQ(run({"solve", "--v0", "uniform", "--tol", "1e-300", "--max-iters", "1"}).code, 1);
    EXPECT_EQ(run({"solve", "--help"}).code, 0);
}
