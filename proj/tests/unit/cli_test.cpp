#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hadrow/formats.hpp"
#include "hadrow/hadcore.hpp"
#include "hadrow/spi.hpp"

namespace hadrow::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("hadrow_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
        ::unsetenv("HADROW_MAX_N");
    }
    void TearDown() override {
        fs::remove_all(dir_);
        ::unsetenv("HADROW_MAX_N");
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& content) const {
        std::ofstream(path(name), std::ios::binary) << content;
    }

    fs::path dir_;
};

TEST_F(CliTest, RowCsvMatchesGoldenRowSix) {
    const auto r = run_cli({"row", "--index", "6", "--n", "4"});
    EXPECT_EQ(r.code, kSuccess);
    EXPECT_EQ(r.out, "1,1,-1,-1,-1,-1,1,1,1,1,-1,-1,-1,-1,1,1\n");
}

TEST_F(CliTest, RowZeroIsAllOnes) {
    const auto r = run_cli({"row", "--index", "0", "--n", "3"});
    EXPECT_EQ(r.code, kSuccess);
    EXPECT_EQ(r.out, "1,1,1,1,1,1,1,1\n");
}

TEST_F(CliTest, RowIndexOutOfRangeNamesValidRange) {
    const auto r = run_cli({"row", "--index", "8", "--n", "3"});
    EXPECT_EQ(r.code, kUsageError);
    EXPECT_NE(r.err.find("[0, 8)"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, RowFormatsOrderingAndVerbose) {
    auto r = run_cli({"row", "--index", "6", "--n", "4", "--format", "pbm"});
    EXPECT_EQ(r.out, "P1\n4 4\n0011\n1100\n0011\n1100\n");

    r = run_cli({"row", "--index", "1", "--n", "1", "--format", "packed"});
    EXPECT_EQ(r.out, std::string("\x40", 1));

    r = run_cli({"row", "--index", "1", "--n", "2", "--ordering", "sequency", "--verbose"});
    EXPECT_EQ(r.out, "1,1,-1,-1\n");
    EXPECT_NE(r.err.find("multiplications 6"), std::string::npos) << r.err;

    EXPECT_EQ(run_cli({"row", "--index", "1", "--n", "3", "--format", "pbm"}).code, kUsageError);
    EXPECT_EQ(run_cli({"row", "--index", "1", "--n", "3", "--format", "png"}).code, kUsageError);
    EXPECT_EQ(run_cli({"row", "--index", "1", "--n", "3", "--ordering", "walsh"}).code,
              kUsageError);
    EXPECT_EQ(run_cli({"row", "--index", "0", "--n", "31"}).code, kUsageError);
    EXPECT_EQ(run_cli({"row", "--n", "3"}).code, kUsageError);
    EXPECT_EQ(run_cli({}).code, kUsageError);
    EXPECT_EQ(run_cli({"--help"}).code, kSuccess);
}

TEST_F(CliTest, RowWritesFileAndReportsUnwritableOutput) {
    EXPECT_EQ(run_cli({"row", "--index", "3", "--n", "2", "--out", path("row.csv")}).code,
              kSuccess);
    EXPECT_EQ(slurp(path("row.csv")), "1,-1,-1,1\n");
    EXPECT_EQ(run_cli({"row", "--index", "3", "--n", "2", "--out", path("missing/dir/x")}).code,
              kIoError);
}

TEST_F(CliTest, EnvironmentCanLowerButNotRaiseTheCap) {
    ::setenv("HADROW_MAX_N", "4", 1);
    EXPECT_EQ(run_cli({"row", "--index", "0", "--n", "4"}).code, kSuccess);
    const auto r = run_cli({"row", "--index", "0", "--n", "5"});
    EXPECT_EQ(r.code, kUsageError);
    EXPECT_NE(r.err.find("[1, 4]"), std::string::npos) << r.err;

    ::setenv("HADROW_MAX_N", "40", 1);
    EXPECT_EQ(run_cli({"row", "--index", "0", "--n", "31"}).code, kUsageError);
    ::setenv("HADROW_MAX_N", "abc", 1);
    EXPECT_EQ(run_cli({"row", "--index", "0", "--n", "2"}).code, kUsageError);
}

TEST_F(CliTest, BatchMatchesPackedOracleRows) {
    ASSERT_EQ(run_cli({"batch", "--indices", "0..4", "--n", "2", "--out", path("p.hadp")}).code,
              kSuccess);
    const std::string bytes = slurp(path("p.hadp"));
    const auto file = decode_patterns(
        std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
    EXPECT_EQ(file.header.count, 4u);
    const auto oracle = full_matrix(2);
    ASSERT_EQ(file.rows.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(file.rows[i].index, i);
        EXPECT_EQ(file.rows[i].row, oracle[i]);
    }
    // Packed payload: rows 0x00, 0x50, 0x30, 0x60.
    EXPECT_EQ(bytes.substr(bytes.size() - 4), std::string("\x00\x50\x30\x60", 4));
}

TEST_F(CliTest, BatchSingleRowPayload) {
    const auto r = run_cli({"batch", "--indices", "0", "--n", "1"});
    EXPECT_EQ(r.code, kSuccess);
    ASSERT_EQ(r.out.size(), kPatternHeaderSize + 8 + 1);
    EXPECT_EQ(r.out.back(), '\x00');
}

TEST_F(CliTest, BatchIsByteIdenticalAcrossJobs) {
    const std::vector<std::string> base{"batch", "--indices", "0..300,517,1000..1024", "--n",
                                        "10", "--ordering", "sequency"};
    auto one = base;
    one.insert(one.end(), {"--jobs", "1", "--out", path("a.hadp")});
    auto eight = base;
    eight.insert(eight.end(), {"--jobs", "8", "--out", path("b.hadp")});
    ASSERT_EQ(run_cli(one).code, kSuccess);
    ASSERT_EQ(run_cli(eight).code, kSuccess);
    EXPECT_EQ(slurp(path("a.hadp")), slurp(path("b.hadp")));
}

TEST_F(CliTest, BatchUsageErrors) {
    EXPECT_EQ(run_cli({"batch", "--indices", "0..5", "--n", "2"}).code, kUsageError);
    EXPECT_EQ(run_cli({"batch", "--indices", "3..1", "--n", "2"}).code, kUsageError);
    EXPECT_EQ(run_cli({"batch", "--indices", "a", "--n", "2"}).code, kUsageError);
    EXPECT_EQ(run_cli({"batch", "--indices", "0..0", "--n", "2"}).code, kUsageError);
    EXPECT_EQ(run_cli({"batch", "--indices", "0", "--n", "2", "--jobs", "0"}).code, kUsageError);
}

TEST_F(CliTest, VerifyPassesAndReportsCounterLaw) {
    const auto r = run_cli({"verify", "--n-max", "8"});
    EXPECT_EQ(r.code, kSuccess) << r.out << r.err;
    EXPECT_NE(r.out.find("C(5) = 62"), std::string::npos) << r.out;
    for (const char* suite : {"oracle-equivalence", "counter-law", "orthogonality", "sequency-law"}) {
        EXPECT_NE(r.out.find(suite), std::string::npos) << suite;
    }
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyRejectsOrdersBeyondOracleCap) {
    EXPECT_EQ(run_cli({"verify", "--n-max", "20"}).code, kUsageError);
    EXPECT_EQ(run_cli({"verify", "--n-max", "0"}).code, kUsageError);
}

TEST_F(CliTest, SimulateConstantImage) {
    write("flat.pgm", "P2\n4 4\n255\n50 50 50 50\n50 50 50 50\n50 50 50 50\n50 50 50 50\n");
    const auto r = run_cli({"simulate", "--image", path("flat.pgm"), "--indices", "0"});
    EXPECT_EQ(r.code, kSuccess) << r.err;
    EXPECT_EQ(r.out, "0,800\n");
}

TEST_F(CliTest, SimulateThenReconstructRoundTrip) {
    write("tiny.pgm", "P2\n2 2\n255\n1 2\n3 4\n");
    const auto sim = run_cli({"simulate", "--image", path("tiny.pgm"), "--indices", "0..4",
                              "--ordering", "natural", "--out", path("m.csv")});
    ASSERT_EQ(sim.code, kSuccess) << sim.err;
    EXPECT_EQ(slurp(path("m.csv")), "0,10\n1,-2\n2,-4\n3,0\n");

    const auto rec = run_cli({"reconstruct", "--measurements", path("m.csv"), "--width", "2",
                              "--height", "2", "--pgm-format", "p2"});
    ASSERT_EQ(rec.code, kSuccess) << rec.err;
    EXPECT_EQ(rec.out, "P2\n2 2\n255\n1 2\n3 4\n");
}

TEST_F(CliTest, FullRoundTripReproducesPixelsForEveryOrdering) {
    Scene scene{8, 4, {}};
    for (std::size_t i = 0; i < 32; ++i) scene.pixels.push_back(static_cast<std::uint16_t>(i * 2011));
    {
        std::ofstream out(path("scene.pgm"), std::ios::binary);
        write_pgm(out, scene);
    }
    for (const char* ordering : {"natural", "sequency", "dyadic"}) {
        ASSERT_EQ(run_cli({"simulate", "--image", path("scene.pgm"), "--ordering", ordering,
                           "--out", path("m.csv"), "--jobs", "3"})
                      .code,
                  kSuccess);
        ASSERT_EQ(run_cli({"reconstruct", "--measurements", path("m.csv"), "--ordering", ordering,
                           "--width", "8", "--height", "4", "--out", path("back.pgm")})
                      .code,
                  kSuccess);
        std::ifstream in(path("back.pgm"), std::ios::binary);
        EXPECT_EQ(read_pgm(in), scene) << ordering;
    }
}

TEST_F(CliTest, SimulateAndReconstructErrors) {
    write("odd.pgm", "P2\n3 2\n255\n1 2 3\n4 5 6\n");
    EXPECT_EQ(run_cli({"simulate", "--image", path("odd.pgm")}).code, kUsageError);
    write("junk.pgm", "hello");
    EXPECT_EQ(run_cli({"simulate", "--image", path("junk.pgm")}).code, kIoError);
    EXPECT_EQ(run_cli({"simulate", "--image", path("nope.pgm")}).code, kIoError);

    write("bad.csv", "0,10\nnot-a-line\n");
    EXPECT_EQ(run_cli({"reconstruct", "--measurements", path("bad.csv"), "--width", "2",
                       "--height", "2"})
                  .code,
              kIoError);
    write("dup.csv", "0,10\n0,10\n");
    EXPECT_EQ(run_cli({"reconstruct", "--measurements", path("dup.csv"), "--width", "2",
                       "--height", "2"})
                  .code,
              kUsageError);
    write("ok.csv", "0,10\n");
    EXPECT_EQ(run_cli({"reconstruct", "--measurements", path("ok.csv"), "--width", "3",
                       "--height", "2"})
                  .code,
              kUsageError);
    EXPECT_EQ(run_cli({"reconstruct", "--measurements", path("ok.csv")}).code, kUsageError);
    const auto square = run_cli({"reconstruct", "--measurements", path("ok.csv"), "--n", "2",
                                 "--pgm-format", "p2"});
    EXPECT_EQ(square.code, kSuccess);
    EXPECT_EQ(square.out, "P2\n2 2\n255\n3 3\n3 3\n");  // 10/4 rounds to 3
}

TEST_F(CliTest, BenchReportsPredictedCountsAndLinearMemory) {
    const auto r = run_cli({"bench", "--n-min", "10", "--n-max", "14", "--repeats", "3"});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "n,median_ns,multiplications,predicted_cost,peak_bytes");
    std::vector<double> peaks;
    while (std::getline(lines, line)) {
        std::vector<std::string> cols;
        std::istringstream fields(line);
        for (std::string f; std::getline(fields, f, ',');) cols.push_back(f);
        ASSERT_EQ(cols.size(), 5u) << line;
        EXPECT_EQ(cols[2], cols[3]) << line;
        peaks.push_back(std::stod(cols[4]));
    }
    ASSERT_EQ(peaks.size(), 5u);
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        EXPECT_NEAR(peaks[i] / peaks[i - 1], 2.0, 0.3);
    }
}

TEST_F(CliTest, BenchRejectsEmptyRange) {
    EXPECT_EQ(run_cli({"bench", "--n-min", "5", "--n-max", "4"}).code, kUsageError);
    EXPECT_EQ(run_cli({"bench", "--n-min", "1", "--n-max", "31"}).code, kUsageError);
    EXPECT_EQ(run_cli({"bench", "--repeats", "0"}).code, kUsageError);
}

TEST(IndexListTest, ParsesRangesAndLists) {
    EXPECT_EQ(parse_index_list("0..4"), (std::vector<std::uint64_t>{0, 1, 2, 3}));
    EXPECT_EQ(parse_index_list("7,1,3..5,1"), (std::vector<std::uint64_t>{1, 3, 4, 7}));
    EXPECT_EQ(parse_index_list("2..2"), (std::vector<std::uint64_t>{}));
    EXPECT_THROW(parse_index_list(""), std::invalid_argument);
    EXPECT_THROW(parse_index_list("1,,2"), std::invalid_argument);
    EXPECT_THROW(parse_index_list("-1"), std::invalid_argument);
    EXPECT_THROW(parse_index_list("5..3"), std::invalid_argument);
}

}  // namespace
}  // namespace hadrow::cli
