#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using elemental::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "elemental");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = elemental::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("elemental_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SampleRowsAndDeterminism) {
  const auto r = cli({"sample", "--n", "7", "--xi", "0.5", "--reps", "3", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 22u);
  EXPECT_EQ(ls[0], "rep,rank,value");
  EXPECT_EQ(ls[1].rfind("1,1,", 0), 0u);
  EXPECT_EQ(ls[21].rfind("3,7,", 0), 0u);
  EXPECT_EQ(cli({"sample", "--n", "7", "--xi", "0.5", "--reps", "3", "--seed", "4"}).out, r.out);
  EXPECT_NE(cli({"sample", "--n", "7", "--xi", "0.5", "--reps", "3", "--seed", "5"}).out, r.out);
}

TEST_F(CliTest, SampleWritesManifest) {
  const auto out = path("s.csv");
  ASSERT_EQ(cli({"sample", "--n", "4", "--xi", "0", "--seed", "2", "--out", out}).code, 0);
  const json m = json::parse(slurp(out + ".manifest.json"));
  EXPECT_EQ(m["command"], "sample");
  EXPECT_EQ(m["seed"], 2);
  EXPECT_EQ(m["error_count"], 0);
  for (const char* key : {"config", "version", "started", "finished", "outputs"}) EXPECT_TRUE(m.contains(key)) << key;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({"sample", "--n", "7", "--xi", "0", "--sigma", "-1"}).code, 2);
  EXPECT_EQ(cli({"sample", "--xi", "0"}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"estimate", "--data", write("empty.csv", "")}).code, 2);
  EXPECT_EQ(cli({"estimate", "--data", path("missing.csv")}).code, 2);
  EXPECT_EQ(cli({"estimate", "--data", write("d.csv", "1\n2\n3\n"), "--scheme", "nope"}).code, 2);
  EXPECT_EQ(cli({"verify"}).code, 2);
  EXPECT_EQ(cli({"experiment", "bias", "--n", "2", "--xi", "0", "--reps", "10"}).code, 2);
  EXPECT_EQ(cli({"experiment", "bias", "--origin", "sideways", "--xi", "0", "--reps", "10"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, EstimateHandExample) {
  const auto data = write("x.csv", "value\n5\n3\n2\n1\n");
  const auto r = cli({"estimate", "--data", data, "--all-elementals"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "rep,estimator,value");
  EXPECT_EQ(ls[2].rfind("1,elemental_1_3,", 0), 0u);
  // (5,3,2,1): log((5-3)/(3-2)) ... I=1,J=3: 2 log(X1-X2) - log(X1-X3) - log(X2-X3)
  EXPECT_NEAR(std::stod(ls[2].substr(ls[2].rfind(',') + 1)), 2 * std::log(2.0) - std::log(3.0), 1e-15);
  EXPECT_EQ(ls[3].rfind("1,elemental_1_4,", 0), 0u);
  EXPECT_EQ(ls[4].rfind("1,elemental_2_4,", 0), 0u);
}

TEST_F(CliTest, EstimateFromSampleOutputWithErrors) {
  const auto sampled = path("s.csv");
  ASSERT_EQ(cli({"sample", "--n", "12", "--xi", "0.2", "--reps", "2", "--mu", "1", "--out", sampled}).code, 0);
  std::string text = slurp(sampled);
  text += "3,1,4\n3,2,4\n3,3,1\n4,1,2\n4,2,1\n";
  const auto data = write("mixed.csv", text);
  const auto out = path("e.csv");
  ASSERT_EQ(cli({"estimate", "--data", data, "--baselines", "--out", out}).code, 0);
  const auto ls = lines(slurp(out));
  EXPECT_EQ(ls[1].rfind("1,linearly-rising,", 0), 0u);
  EXPECT_EQ(ls[2].rfind("1,pickands_k3,", 0), 0u);
  EXPECT_EQ(ls[3].rfind("1,hill_k3,", 0), 0u);
  EXPECT_EQ(ls[7], "3,error,tie");
  EXPECT_EQ(ls[8], "4,error,too-small");
  EXPECT_EQ(json::parse(slurp(out + ".manifest.json"))["error_count"], 2);
}

TEST_F(CliTest, EstimateWithWeightsFile) {
  const auto w = write("w.json", elemental::io::to_json(elemental::ElementalWeights::single(4, {1, 3})).dump());
  const auto r = cli({"estimate", "--data", write("x.csv", "5\n3\n2\n1\n"), "--weights", w});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_NEAR(std::stod(ls[1].substr(ls[1].rfind(',') + 1)), 2 * std::log(2.0) - std::log(3.0), 1e-15);
  const auto mismatch = cli({"estimate", "--data", write("y.csv", "5\n3\n2\n"), "--weights", w});
  EXPECT_EQ(lines(mismatch.out)[1], "1,error,size-mismatch");
}

TEST_F(CliTest, Verify) {
  const auto r7 = cli({"verify", "--n", "7"});
  ASSERT_EQ(r7.code, 0) << r7.err;
  const json j = json::parse(r7.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["elementals"].size(), 15u);
  EXPECT_EQ(j["rank"]["elemental_rank"], 15);
  EXPECT_EQ(j["rank"]["constraint_rank"], 6);
  EXPECT_EQ(cli({"verify", "--n", "3"}).code, 0);

  const auto lone = write("lone.json", R"({"n":7,"kind":"spacing","entries":[{"i":1,"j":2,"w":1}]})");
  const auto bad = cli({"verify", "--weights", lone});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(json::parse(bad.out)["passed"].get<bool>());
  const auto lr = write("lr.json", elemental::io::to_json(elemental::linearly_rising(7)).dump());
  EXPECT_EQ(cli({"verify", "--weights", lr}).code, 0);
}

TEST_F(CliTest, ExperimentBias) {
  const auto r = cli({"experiment", "bias", "--n", "7", "--xi", "0,1", "--reps", "300", "--scheme", "A1",
                      "--baselines"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "n,xi,estimator,mean,bias,variance,rmse,stderr,reps");
  EXPECT_EQ(ls.size(), 1u + 2 * 18);
  EXPECT_EQ(ls[16].rfind("7,0,equal-weight,", 0), 0u);
}

TEST_F(CliTest, ExperimentThreadsAreByteIdentical) {
  const std::vector<std::string> base{"experiment", "bias", "--n", "6", "--xi-grid", "-2:2:3", "--reps", "700"};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  EXPECT_EQ(cli(one).out, cli(four).out);
}

TEST_F(CliTest, ExperimentEfficiencyAndOptimal) {
  const auto out = path("eff.csv");
  const auto r = cli({"experiment", "efficiency", "--n", "8", "--xi", "0", "--block", "1500", "--optimal-at", "0",
                      "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto eff = lines(slurp(out + ".efficiency.csv"));
  EXPECT_EQ(eff[0], "n,xi,scheme,efficiency,min_variance,lower,upper,scheme_variance");
  EXPECT_EQ(eff.size(), 6u);
  EXPECT_EQ(eff[5].rfind("8,0,optimal_xi_0,", 0), 0u);
  EXPECT_EQ(lines(slurp(out)).size(), 6u);

  const auto o = cli({"experiment", "optimal-weights", "--n", "6", "--block", "1000"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["kind"], "elemental");
  EXPECT_LE(j["bounds"]["lower"].get<double>(), j["bounds"]["upper"].get<double>() * 1.1);
  EXPECT_EQ(cli({"experiment", "optimal-weights", "--n", "6", "--block", "5"}).code, 2);
}

TEST_F(CliTest, ExperimentConsistency) {
  const auto r = cli({"experiment", "consistency", "--n", "20,40", "--xi", "0", "--reps", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "n,xi,estimator,mean,bias,variance,rmse,stderr,reps,axis");
  EXPECT_EQ(ls.size(), 3u);
}

TEST_F(CliTest, InstalledBinaryMatchesInProcess) {
  const std::string out = path("bin.csv");
  const std::string cmd = std::string(ELEMENTAL_CLI_PATH) + " sample --n 5 --xi -1 --reps 2 --seed 9 --out " + out;
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(out), cli({"sample", "--n", "5", "--xi", "-1", "--reps", "2", "--seed", "9"}).out);
  const std::string bad = std::string(ELEMENTAL_CLI_PATH) + " sample --n 5 --xi 0 --sigma -1 2>/dev/null";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
