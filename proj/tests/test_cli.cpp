#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "robust-pricing");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = robust_pricing::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

robust_pricing::json parse(const CliRun& r) { return robust_pricing::json::parse(r.out); }

} // namespace

TEST(CliPrice, PreciseSigma) {
    const CliRun r = run({"price", "--mu", "0.5", "--beta", "1", "--sigma", "0.2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r);
    EXPECT_NEAR(j["price"].get<double>(), 0.2691657, 1e-6);
    EXPECT_EQ(j["region"], "SigmaL");
}

TEST(CliPrice, DefaultSigmaBounds) {
    const CliRun r = run({"price", "--mu", "0.5", "--beta", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(parse(r)["price"].get<double>(), 0.292893, 1e-6);
}

TEST(CliPrice, DomainErrorExitsTwo) {
    const CliRun r = run({"price", "--mu", "1", "--beta", "1", "--sigma", "0"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("MeanOutOfRange"), std::string::npos);
}

TEST(CliPrice, UsageErrors) {
    EXPECT_EQ(run({"price", "--mu", "abc", "--beta", "1"}).code, 64);
    EXPECT_EQ(run({"price", "--bogus"}).code, 64);
    EXPECT_EQ(run({}).code, 64);
    EXPECT_EQ(run({"price", "--beta", "1"}).code, 64);
    EXPECT_EQ(run({"price", "--mu", "0.5", "--beta", "1", "--format", "xml"}).code, 64);
}

TEST(CliPrice, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(CliTail, Example) {
    const CliRun r = run({"tail", "--mu", "0.5", "--beta", "1", "--sigma", "0.3", "--p", "0.3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r);
    EXPECT_DOUBLE_EQ(j["value"].get<double>(), 0.307692307692);
    EXPECT_EQ(j["region"], "Cantelli");
}

TEST(CliTail, PriceOutOfRange) {
    EXPECT_EQ(run({"tail", "--mu", "0.5", "--beta", "1", "--p", "2"}).code, 2);
}

TEST(CliTail, CsvFormat) {
    const CliRun r = run({"tail", "--mu", "0.5", "--beta", "1", "--sigma", "0.3", "--p", "0.5",
                       "--format", "csv"});
    EXPECT_EQ(r.out, "p,value,region\n0.5,0.18,ThreePoint\n");
}

TEST(CliBundle, LowPriceAboveThreshold) {
    const CliRun r = run({"bundle", "--mu", "0.5", "--beta", "1", "--sigma", "0.4", "--m", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r);
    EXPECT_EQ(j["per_good"]["region"], "SigmaL");
    EXPECT_NEAR(j["threshold"].get<double>(), 2.7110835, 1e-6);
}

TEST(CliSweep, PriceSweepRowCount) {
    const CliRun r = run({"sweep", "--param", "price", "--from", "0.01", "--to", "0.99", "--steps",
                       "99", "--mu", "0.5", "--beta", "1", "--sigma", "0.33"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 100);
    EXPECT_EQ(r.out.substr(0, 10), "x,revenue\n");
}

TEST(CliSweep, InvalidSpec) {
    EXPECT_EQ(run({"sweep", "--param", "price", "--from", "0.5", "--to", "0.1", "--steps", "9",
                   "--mu", "0.5", "--beta", "1"})
                  .code,
              64);
    EXPECT_EQ(run({"sweep", "--param", "price", "--from", "0.1", "--to", "0.5", "--steps", "1",
                   "--mu", "0.5", "--beta", "1"})
                  .code,
              64);
    EXPECT_EQ(run({"sweep", "--figure", "9"}).code, 64);
    EXPECT_EQ(run({"sweep"}).code, 64);
}

TEST(CliSweep, PresetLowHighJump) {
    const CliRun r = run({"sweep", "--figure", "3b", "--steps", "400"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,price");
    double prev = -1;
    int jumps = 0;
    while (std::getline(in, line)) {
        const double p = std::stod(line.substr(line.find(',') + 1));
        if (prev >= 0 && p > prev + 0.05) ++jumps;
        prev = p;
    }
    EXPECT_EQ(jumps, 1);
}

TEST(CliSweep, PresetRegionMap) {
    const CliRun r = run({"sweep", "--figure", "5", "--steps", "21"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0,0.2,SigmaL"), std::string::npos);
    EXPECT_NE(r.out.find("0,0.5,SigmaM"), std::string::npos);
    EXPECT_NE(r.out.find("0.5,0.5,SigmaH"), std::string::npos);
}

TEST(CliSweep, AllPresetsRun) {
    for (const char* f : {"2a", "2b", "3a", "3b", "4", "5", "6a", "6b", "7a", "7b"}) {
        const CliRun r = run({"sweep", "--figure", f, "--steps", "20"});
        EXPECT_EQ(r.code, 0) << f << ": " << r.err;
        EXPECT_GT(count_lines(r.out), 1) << f;
    }
}

TEST(CliSweep, ByteStable) {
    const std::vector<std::string> args{"sweep", "--figure", "6b", "--steps", "50"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliSweep, ParameterSweeps) {
    for (const char* p : {"sigma", "sigma_lo", "sigma_hi"}) {
        const CliRun r = run({"sweep", "--param", p, "--from", "0.01", "--to", "0.2", "--steps", "5",
                           "--mu", "0.5", "--beta", "1", "--sigma-hi", "0.3"});
        EXPECT_EQ(r.code, 0) << p << ": " << r.err;
        EXPECT_EQ(count_lines(r.out), 6);
    }
    const CliRun b = run({"sweep", "--param", "beta", "--from", "1", "--to", "3", "--steps", "5",
                       "--mu", "0.5", "--beta", "1", "--sigma", "0.2"});
    EXPECT_EQ(b.code, 0) << b.err;
    const CliRun h = run({"sweep", "--param", "h", "--from", "1", "--to", "5", "--steps", "3", "--mu",
                       "2", "--beta", "10", "--sigma", "2"});
    EXPECT_EQ(h.code, 0) << h.err;
    EXPECT_EQ(count_lines(h.out), 4);
}

TEST(CliQueue, CsvColumns) {
    const CliRun r = run({"queue", "--mu", "2", "--beta", "10", "--sigma", "2", "--lambda", "5",
                       "--theta", "2", "--h", "1", "--from", "0.5", "--to", "4", "--steps", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "p,gamma_star,revenue,region_of_tail");
    EXPECT_EQ(count_lines(r.out), 9);
}

TEST(CliQueue, JsonOptimum) {
    const CliRun r = run({"queue", "--mu", "2", "--beta", "10", "--sigma", "2.6", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(parse(r)["price"].get<double>(), 3.1794, 1e-3);
}

TEST(CliRegions, Grid) {
    const CliRun r = run({"regions", "--mu", "0.5", "--beta", "1", "--steps", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 1 + 66);
}

TEST(CliVerify, Passes) {
    const CliRun r = run({"verify", "--trials", "20", "--seed", "7"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliOut, WritesFile) {
    const std::string path = ::testing::TempDir() + "rp_cli_out.json";
    const CliRun r = run({"price", "--mu", "0.5", "--beta", "1", "--out", path});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(body.find("SigmaM"), std::string::npos);
    std::remove(path.c_str());
}
