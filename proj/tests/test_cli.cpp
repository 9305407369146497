#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "graphseg/bench.hpp"
#include "graphseg/cli.hpp"
#include "graphseg/image.hpp"
#include "test_support.hpp"

using namespace graphseg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("graphseg_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "graphseg");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(Cli, UniformImageWithDefaults) {
  save_ppm(graphseg::testing::uniform_image(40, 30, 90, 120, 200), path("in.ppm"));
  ASSERT_EQ(cli({"segment", "--input", path("in.ppm"), "--output", path("out.ppm"), "--stats", path("s.json")}), 0)
      << err_.str();
  const json stats = json::parse(slurp(path("s.json")));
  EXPECT_EQ(stats["component_count"], 1);
  EXPECT_EQ(stats["width"], 40);
  EXPECT_EQ(stats["height"], 30);
  EXPECT_EQ(stats["strategy"], "sequential");
  EXPECT_FALSE(stats.contains("tiles"));
  for (const char* key : {"smooth", "build", "sort", "threshold", "minsize", "render", "total"}) {
    EXPECT_TRUE(stats["timings_ms"].contains(key)) << key;
  }
  const Image8 out = load_ppm(path("out.ppm"));
  EXPECT_EQ(out.width(), 40);
}

TEST_F(Cli, HybridSingleTileIsByteIdenticalToSequential) {
  std::mt19937_64 rng(41);
  save_ppm(graphseg::testing::random_image(rng, 50, 37), path("in.ppm"));
  ASSERT_EQ(cli({"segment", "--input", path("in.ppm"), "--output", path("seq.ppm"), "--k", "500"}), 0);
  ASSERT_EQ(cli({"segment", "--input", path("in.ppm"), "--output", path("hyb.ppm"), "--k", "500", "--strategy",
                 "hybrid", "--tiles", "1"}),
            0);
  ASSERT_EQ(cli({"segment", "--input", path("in.ppm"), "--output", path("pipe.ppm"), "--k", "500", "--strategy",
                 "pipelined", "--workers", "3"}),
            0);
  EXPECT_EQ(slurp(path("seq.ppm")), slurp(path("hyb.ppm")));
  EXPECT_EQ(slurp(path("seq.ppm")), slurp(path("pipe.ppm")));
}

TEST_F(Cli, HybridEightTilesOnSmallPhoto) {
  const std::string photo = std::string(GRAPHSEG_TEST_DATA_DIR) + "/chelsea_128x72.ppm";
  ASSERT_EQ(cli({"segment", "--input", photo, "--output", path("out.ppm"), "--strategy", "hybrid", "--tiles", "8",
                 "--stats", path("s.json")}),
            0)
      << err_.str();
  EXPECT_EQ(json::parse(slurp(path("s.json")))["tiles"], 8);
}

TEST_F(Cli, ExitCodes) {
  save_ppm(graphseg::testing::uniform_image(3, 3, 0, 0, 0), path("tiny.ppm"));
  EXPECT_EQ(cli({}), 2);
  EXPECT_EQ(cli({"segment", "--input", path("tiny.ppm")}), 2);
  EXPECT_EQ(cli({"segment", "--input", path("tiny.ppm"), "--output", path("o.ppm"), "--k", "-3"}), 2);
  EXPECT_EQ(cli({"segment", "--input", path("tiny.ppm"), "--output", path("o.ppm"), "--strategy", "tiled"}), 2);
  EXPECT_EQ(cli({"segment", "--input", path("missing.ppm"), "--output", path("o.ppm")}), 3);
  std::ofstream(path("bad.ppm")) << "P3\n1 1\n255\n0 0 0\n";
  EXPECT_EQ(cli({"segment", "--input", path("bad.ppm"), "--output", path("o.ppm")}), 3);
  EXPECT_EQ(cli({"segment", "--input", path("tiny.ppm"), "--output", path("o.ppm"), "--strategy", "hybrid", "--tiles",
                 "4"}),
            4);
  EXPECT_NE(err_.str().find("too large"), std::string::npos);
  EXPECT_EQ(cli({"bench", "--input", path("tiny.ppm"), "--tiles", "4", "--runs", "1"}), 4);
  EXPECT_EQ(cli({"--help"}), 0);
}

TEST_F(Cli, CompareReportsJson) {
  std::mt19937_64 rng(42);
  save_ppm(graphseg::testing::random_image(rng, 20, 20), path("in.ppm"));
  ASSERT_EQ(cli({"segment", "--input", path("in.ppm"), "--output", path("a.ppm"), "--seed", "1"}), 0);
  ASSERT_EQ(cli({"segment", "--input", path("in.ppm"), "--output", path("b.ppm"), "--seed", "2"}), 0);
  EXPECT_NE(slurp(path("a.ppm")), slurp(path("b.ppm")));
  ASSERT_EQ(cli({"compare", "--a", path("a.ppm"), "--b", path("b.ppm")}), 0);
  const json j = json::parse(out_.str());
  EXPECT_TRUE(j["identical"].get<bool>());
  EXPECT_EQ(j["rand_index"].get<double>(), 1.0);
  EXPECT_EQ(j["component_counts"][0], j["component_counts"][1]);
  save_ppm(Image8(20, 21), path("c.ppm"));
  EXPECT_EQ(cli({"compare", "--a", path("a.ppm"), "--b", path("c.ppm")}), 2);
}

TEST_F(Cli, BenchWritesCsvAndSvg) {
  std::mt19937_64 rng(43);
  save_ppm(graphseg::testing::random_image(rng, 32, 24), path("in.ppm"));
  ASSERT_EQ(cli({"bench", "--input", path("in.ppm"), "--strategies", "sequential,hybrid", "--tiles", "1,2", "--runs",
                 "2", "--csv", path("b.csv"), "--svg", path("b.svg")}),
            0)
      << err_.str();
  std::ifstream csv(path("b.csv"));
  const auto report = read_csv(csv);
  EXPECT_EQ(report.rows.size(), 9u);
  EXPECT_EQ(report.rows.front().image, "in.ppm");
  EXPECT_NE(slurp(path("b.svg")).find("</svg>"), std::string::npos);

  ASSERT_EQ(cli({"bench", "--input", path("in.ppm"), "--strategies", "pipelined", "--runs", "1"}), 0);
  std::istringstream stdout_csv(out_.str());
  EXPECT_EQ(read_csv(stdout_csv).rows.size(), 2u);
}

TEST_F(Cli, ExecutableRuns) {
  save_ppm(graphseg::testing::uniform_image(8, 8, 1, 1, 1), path("in.ppm"));
  const std::string cmd = std::string("\"") + GRAPHSEG_CLI_PATH + "\" segment --input \"" + path("in.ppm") +
                          "\" --output \"" + path("out.ppm") + "\" > \"" + path("log.txt") + "\" 2>&1";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(path("out.ppm")));
  const std::string bad = std::string("\"") + GRAPHSEG_CLI_PATH + "\" segment --input \"" + path("nope.ppm") +
                          "\" --output \"" + path("o.ppm") + "\" > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
}
