#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(MFT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mft_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, SimulateTrackEvaluate) {
  ASSERT_EQ(run("simulate --scenario lanes --out " + path("d.csv") + " --ground-truth " + path("gt.csv")), 0);
  ASSERT_EQ(run("track --detections " + path("d.csv") + " --out " + path("t.csv") + " --ground-truth " +
                path("gt.csv")),
            0);
  EXPECT_TRUE(fs::exists(path("t.csv.report.json")));
  ASSERT_EQ(run("evaluate --ground-truth " + path("gt.csv") + " --trajectories " + path("t.csv") +
                " --out " + path("r.json")),
            0);
  EXPECT_NE(slurp(path("r.json")).find("\"m_bar\""), std::string::npos);
}

TEST_F(Cli, TrackingIsByteIdentical) {
  ASSERT_EQ(run("simulate --scenario crowd --seed 4 --out " + path("d.csv")), 0);
  ASSERT_EQ(run("track --detections " + path("d.csv") + " --out " + path("a.csv")), 0);
  ASSERT_EQ(run("track --detections " + path("d.csv") + " --out " + path("b.csv")), 0);
  const std::string a = slurp(path("a.csv"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b.csv")));
}

TEST_F(Cli, EmitsGroundTruthTemplate) {
  ASSERT_EQ(run("simulate --scenario clutter --out " + path("d.csv") + " --emit-gt-template"), 0);
  EXPECT_TRUE(fs::exists(path("d.csv.gt.csv")));
}

TEST_F(Cli, BadConfigExitsThree) {
  std::ofstream(path("c.cfg")) << "match_threshold = 1.01\n";
  std::ofstream(path("d.csv")) << "0,0,1,1,1,1\n";
  EXPECT_EQ(run("track --detections " + path("d.csv") + " --out " + path("t.csv") + " --config " +
                path("c.cfg")),
            3);
}

TEST_F(Cli, MalformedDetectionsExitTwo) {
  std::ofstream(path("d.csv")) << "0,0,1,1,1,1\n0,zz,1\n";
  EXPECT_EQ(run("track --detections " + path("d.csv") + " --out " + path("t.csv")), 2);
  EXPECT_EQ(run("track --detections " + path("missing.csv") + " --out " + path("t.csv")), 2);
}

TEST_F(Cli, UsageErrorExitsTwo) { EXPECT_EQ(run("track"), 2); }

}  // namespace
