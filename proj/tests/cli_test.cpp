#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace tempo_katz::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tempo_katz_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    write("chain.txt", "0 1 1\n1 2 2\n2 3 3\n");
    write("triangle.txt", "0 1 5\n1 0 5\n1 2 5\n2 1 5\n0 2 5\n2 0 5\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int call(std::vector<std::string> args) {
    args.insert(args.begin(), "tempo-katz");
    out_.str("");
    err_.str("");
    return main_entry(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    if (!header) {
      EXPECT_EQ(line, "node,value,rank");
      header = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

TEST(DenseRanking, TiesShareRank) {
  Vector v(5);
  v << 1.0, 3.0, 3.0, 0.5, 1.0;
  const auto ranked = dense_ranking(v);
  ASSERT_EQ(ranked.size(), 5u);
  EXPECT_EQ(ranked[0].node, 1);
  EXPECT_EQ(ranked[1].node, 2);
  EXPECT_EQ(ranked[1].rank, 1u);
  EXPECT_EQ(ranked[2].node, 0);
  EXPECT_EQ(ranked[3].node, 4);
  EXPECT_EQ(ranked[3].rank, 2u);
  EXPECT_EQ(ranked[4].rank, 3u);
}

TEST_F(CliTest, ExponentialOnChain) {
  ASSERT_EQ(call({"rank", path("chain.txt"), "--function", "exponential", "--alpha", "0.5",
                  "--mode", "standard", "--measure", "tc"}),
            0)
      << err_.str();
  const auto rows = csv_rows(out_.str());
  ASSERT_EQ(rows.size(), 4u);
  const double expected[] = {1.6458333333333333, 1.625, 1.5, 1.0};
  for (int i = 0; i < 4; ++i) {
    std::istringstream row(rows[i]);
    std::string node, value, rank;
    std::getline(row, node, ',');
    std::getline(row, value, ',');
    std::getline(row, rank, ',');
    EXPECT_EQ(std::stoi(node), i);
    EXPECT_NEAR(std::stod(value), expected[i], 1e-15);
    EXPECT_EQ(std::stoi(rank), i + 1);
  }
  EXPECT_NE(out_.str().find("# alpha=0.5"), std::string::npos);
  EXPECT_NE(out_.str().find("# truncated=false"), std::string::npos);
}

TEST_F(CliTest, RankIsTheDefaultSubcommand) {
  ASSERT_EQ(call({path("chain.txt"), "--alpha", "0.5"}), 0);
  EXPECT_EQ(csv_rows(out_.str()).size(), 4u);
}

TEST_F(CliTest, CheckAlphaOnTriangle) {
  ASSERT_EQ(call({"check-alpha", path("triangle.txt"), "--mode", "standard"}), 0);
  EXPECT_NE(out_.str().find("ell=0.5"), std::string::npos) << out_.str();
}

TEST_F(CliTest, AlphaOutOfRange) {
  EXPECT_EQ(call({"rank", path("triangle.txt"), "--alpha", "10"}), 2);
  EXPECT_NE(err_.str().find("admissible interval (0, 0.5"), std::string::npos) << err_.str();
  EXPECT_TRUE(out_.str().empty());
}

TEST_F(CliTest, ForceOutsideIntervalFailsNumerically) {
  // At alpha = 1/2 the system is singular; anything past it leaves the
  // nonnegative regime. Either way the run must not claim success silently.
  const int code = call({"rank", path("triangle.txt"), "--alpha", "0.5", "--force"});
  EXPECT_EQ(code, 3) << out_.str();
}

TEST_F(CliTest, ForcedRunIsFlagged) {
  ASSERT_EQ(call({"rank", path("triangle.txt"), "--alpha", "0.7", "--force", "--function",
                  "exponential"}),
            0);
  EXPECT_NE(out_.str().find("# forced=true"), std::string::npos);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(call({"rank", path("missing.txt"), "--alpha", "0.1"}), 1);
  write("loop.txt", "0 0 1\n");
  EXPECT_EQ(call({"rank", path("loop.txt"), "--alpha", "0.1"}), 1);
  write("bad.txt", "0 1\n");
  EXPECT_EQ(call({"validate", path("bad.txt")}), 1);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos);
  EXPECT_EQ(call({"rank", path("chain.txt"), "--alpha", "0.1", "--mode", "sideways"}), 1);
  EXPECT_EQ(call({"rank", path("chain.txt"), "--alpha", "-1"}), 1);
  EXPECT_EQ(call({"rank", path("chain.txt"), "--alpha", "0.1", "--tol", "0"}), 1);
  EXPECT_EQ(call({"rank", path("chain.txt"), "--alpha", "0.1", "--function", "sine"}), 1);
}

TEST_F(CliTest, CsvAndJsonAgree) {
  for (const char* mode : {"standard", "nbt-space", "nbt-time", "nbt-both"}) {
    for (const char* measure : {"tc", "sc"}) {
      ASSERT_EQ(call({"rank", path("triangle.txt"), "--alpha", "0.3", "--mode", mode,
                      "--measure", measure, "--function", "exponential"}),
                0);
      const auto rows = csv_rows(out_.str());
      ASSERT_EQ(call({"rank", path("triangle.txt"), "--alpha", "0.3", "--mode", mode,
                      "--measure", measure, "--function", "exponential", "--format", "json"}),
                0);
      const std::string json_text = out_.str();
      const auto doc = nlohmann::json::parse(json_text);
      ASSERT_EQ(doc["nodes"].size(), rows.size());
      EXPECT_EQ(doc["metadata"]["mode"], mode);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        // Same digits, not just the same double.
        const std::string value = rows[i].substr(rows[i].find(',') + 1,
                                                 rows[i].rfind(',') - rows[i].find(',') - 1);
        EXPECT_NE(json_text.find("\"value\": " + value + ","), std::string::npos) << value;
      }
    }
  }
}

TEST_F(CliTest, FastPathAgreesWithEdgeLevel) {
  for (const char* mode : {"standard", "nbt-space"}) {
    ASSERT_EQ(call({"rank", path("triangle.txt"), "--alpha", "0.4", "--mode", mode}), 0);
    const std::string fast = out_.str();
    EXPECT_NE(fast.find("# path=node-level"), std::string::npos);
    ASSERT_EQ(call({"rank", path("triangle.txt"), "--alpha", "0.4", "--mode", mode,
                    "--no-fastpath"}),
              0);
    const auto a = csv_rows(fast);
    const auto b = csv_rows(out_.str());
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double va = std::stod(a[i].substr(a[i].find(',') + 1));
      const double vb = std::stod(b[i].substr(b[i].find(',') + 1));
      EXPECT_NEAR(va, vb, 1e-10 * vb);
    }
  }
}

TEST_F(CliTest, CoefficientFile) {
  write("coeffs.txt", "1\n1\n0.5\n");
  ASSERT_EQ(call({"rank", path("chain.txt"), "--alpha", "2", "--function",
                  "coeffs:" + path("coeffs.txt")}),
            0)
      << err_.str();
  // 1 + 2 + 0.5 * 4 from node 0: walks of length 1 and 2 only.
  const auto rows = csv_rows(out_.str());
  EXPECT_EQ(rows[0], "0,5,1");
}

TEST_F(CliTest, OutputFileIsAtomic) {
  const std::string target = path("out.csv");
  ASSERT_EQ(call({"rank", path("chain.txt"), "--alpha", "0.5", "-o", target}), 0);
  EXPECT_TRUE(out_.str().empty());
  EXPECT_TRUE(fs::exists(target));
  EXPECT_FALSE(fs::exists(target + ".tmp"));

  const std::string failed = path("failed.csv");
  EXPECT_EQ(call({"rank", path("triangle.txt"), "--alpha", "10", "-o", failed}), 2);
  EXPECT_FALSE(fs::exists(failed));
  EXPECT_FALSE(fs::exists(failed + ".tmp"));
}

TEST_F(CliTest, Validate) {
  write("dups.txt", "0 1 1\n0 1 1\n1 2 3\n");
  ASSERT_EQ(call({"validate", path("dups.txt")}), 0);
  EXPECT_NE(out_.str().find("duplicates_collapsed=1"), std::string::npos);
  EXPECT_NE(out_.str().find("snapshots=2"), std::string::npos);
}

TEST_F(CliTest, DumpMatrix) {
  ASSERT_EQ(call({"dump-matrix", "M", path("chain.txt")}), 0);
  EXPECT_EQ(out_.str(), "3 3 2\n0 1 1\n1 2 1\n");
  ASSERT_EQ(call({"dump-matrix", "A", path("chain.txt"), "--tau", "1"}), 0);
  EXPECT_EQ(out_.str(), "4 4 1\n1 2 1\n");
  ASSERT_EQ(call({"dump-matrix", "W-cross", path("chain.txt"), "--tau", "0", "--tau2", "1"}), 0);
  EXPECT_EQ(out_.str(), "1 1 1\n0 0 1\n");
  EXPECT_EQ(call({"dump-matrix", "A", path("chain.txt")}), 1);
  EXPECT_EQ(call({"dump-matrix", "A", path("chain.txt"), "--tau", "9"}), 1);
  EXPECT_EQ(call({"dump-matrix", "Q", path("chain.txt")}), 1);
}

}  // namespace
}  // namespace tempo_katz::cli
