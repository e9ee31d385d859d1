#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dgp/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args, const dgp::CliHooks& hooks = {}) {
    std::ostringstream out, err;
    const int status = dgp::run_cli(args, out, err, hooks);
    return {status, out.str(), err.str()};
}

// Runs the installed binary through the shell; returns exit status and stdout.
std::pair<int, std::string> run_binary(const std::string& args) {
    const std::string command = std::string(DGP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    std::string output;
    char buffer[4096];
    while (const auto n = std::fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, output};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("dgp_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

}  // namespace

TEST(Cli, CountPrintsExactValues) {
    EXPECT_EQ(run({"count", "--m", "4", "--n", "36"}).out, "15\n");
    EXPECT_EQ(run({"count", "--m", "2", "--n", "100"}).out, "6\n");
    EXPECT_EQ(run({"count", "--m", "3", "--n", "10"}).out, "1\n");
    EXPECT_EQ(run({"count", "--m", "100", "--n", "2000"}).out, "4743848348492353061865\n");
}

TEST(Cli, ListStreamsTuples) {
    const auto r = run({"list", "--m", "4", "--n", "36", "--limit", "2"});
    EXPECT_EQ(r.status, dgp::kExitOk);
    EXPECT_EQ(r.out, "2 2 3 29\n2 2 13 19\n");
    const auto all = run({"list", "--m", "4", "--n", "36"});
    EXPECT_EQ(std::count(all.out.begin(), all.out.end(), '\n'), 15);
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(run({"verify", "--min", "4", "--max", "4"}).status, dgp::kExitOk);
    EXPECT_EQ(run({"verify", "--min", "4", "--max", "500", "--workers", "3"}).status, dgp::kExitOk);

    dgp::CliHooks corrupted;
    corrupted.decomposer = [](std::int64_t m, std::int64_t n, const dgp::PrimeTable& t) -> std::optional<dgp::PrimePartition> {
        if (m == 4 && n == 36) return std::nullopt;
        return dgp::decompose(m, n, t);
    };
    const auto bad = run({"verify", "--min", "30", "--max", "40"}, corrupted);
    EXPECT_EQ(bad.status, dgp::kExitCounterexample);
    EXPECT_NE(bad.out.find("counterexample m=4 n=36"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"count", "--m", "4"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"count", "--m", "x", "--n", "4"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"count", "--m", "0", "--n", "10"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"verify", "--min", "3", "--max", "10"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"estimate", "--e", "9"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"check", "--suite", "nope"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"check", "--suite", "recurrence", "--p", "9"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"fit", "--k", "3", "--min-m", "10", "--max-m", "10"}).status, dgp::kExitUsage);
    EXPECT_EQ(run({"--help"}).status, dgp::kExitOk);
}

TEST(Cli, EstimateAndFit) {
    const auto est = run({"estimate", "--e", "100"});
    EXPECT_EQ(est.status, dgp::kExitOk);
    EXPECT_NE(est.out.find("g=6"), std::string::npos);
    EXPECT_NE(est.out.find("estimate=5.75"), std::string::npos);

    const auto fit = run({"fit", "--k", "3", "--min-m", "4", "--max-m", "60"});
    EXPECT_EQ(fit.status, dgp::kExitOk);
    EXPECT_NE(fit.out.find("c_of_k="), std::string::npos);
}

TEST(Cli, CheckSuites) {
    const auto all = run({"check", "--suite", "all", "--p", "5", "--max-m", "8"});
    EXPECT_EQ(all.status, dgp::kExitOk) << all.out << all.err;
    EXPECT_EQ(all.out.find("FAIL"), std::string::npos);
    for (const char* name : {"double", "prime-quotient", "recurrence", "multiplicity-union", "corollary", "bijection"}) {
        EXPECT_NE(all.out.find(std::string("PASS ") + name), std::string::npos) << name;
    }
    const auto two = run({"check", "--suite", "recurrence", "--p", "2", "--max-m", "6"});
    EXPECT_EQ(two.status, dgp::kExitOk);
    EXPECT_NE(two.out.find("note: degenerate"), std::string::npos);
}

TEST_F(CliFiles, EmittersWriteCsv) {
    const auto comet = dir_ / "comet.csv";
    EXPECT_EQ(run({"comet", "--max", "100", "--out", comet.string()}).status, dgp::kExitOk);
    const auto text = slurp(comet);
    EXPECT_EQ(text.substr(0, 4), "E,g\n");
    EXPECT_EQ(text.substr(text.size() - 6), "100,6\n");

    const auto surface = dir_ / "surface.csv";
    EXPECT_EQ(run({"surface", "--max", "36", "--out", surface.string()}).status, dgp::kExitOk);
    EXPECT_NE(slurp(surface).find("\n4,36,15\n"), std::string::npos);

    const auto fixed_m = dir_ / "fixed_m.csv";
    EXPECT_EQ(run({"fixed-m", "--m", "5", "--max", "10", "--out", fixed_m.string()}).status, dgp::kExitOk);
    EXPECT_EQ(slurp(fixed_m), "n,Y\n10,1\n");

    const auto fixed_k = dir_ / "fixed_k.csv";
    EXPECT_EQ(run({"fixed-k", "--k", "18", "--max-m", "2", "--out", fixed_k.string()}).status, dgp::kExitOk);
    EXPECT_EQ(slurp(fixed_k), "m,Y\n2,4\n");
}

TEST_F(CliFiles, WitnessSidecar) {
    const auto path = dir_ / "witnesses.csv";
    EXPECT_EQ(run({"verify", "--min", "4", "--max", "12", "--witnesses", "--witness-file", path.string()}).status,
              dgp::kExitOk);
    EXPECT_EQ(slurp(path), "m,n,parts\n2,4,2 2\n2,6,3 3\n3,6,2 2 2\n2,8,3 5\n4,8,2 2 2 2\n3,9,3 3 3\n2,10,3 7\n"
                           "5,10,2 2 2 2 2\n2,12,5 7\n3,12,2 3 7\n4,12,2 2 3 5\n6,12,2 2 2 2 2 2\n");
}

TEST_F(CliFiles, UnwritableOutputExitsThree) {
    const auto missing = dir_ / "no_such_dir" / "out.csv";
    EXPECT_EQ(run({"comet", "--max", "100", "--out", missing.string()}).status, dgp::kExitResource);
    EXPECT_EQ(run({"verify", "--min", "4", "--max", "10", "--witnesses", "--witness-file", missing.string()}).status,
              dgp::kExitResource);
}

TEST(CliBinary, ExitStatusContract) {
    auto [ok, out] = run_binary("count --m 4 --n 36");
    EXPECT_EQ(ok, 0);
    EXPECT_EQ(out, "15\n");
    EXPECT_EQ(run_binary("verify --min 4 --max 4").first, 0);
    EXPECT_EQ(run_binary("count --m 4").first, 2);
    EXPECT_EQ(run_binary("comet --max 10 --out /nonexistent-dir/x.csv").first, 3);
}
