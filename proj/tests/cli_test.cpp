#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "portgnn/forward.hpp"
#include "portgnn/io.hpp"
#include "portgnn/programs.hpp"
#include "portgnn/wrap_gnn.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("portgnn_cli_test_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(const std::string& args) const {
    const fs::path log = dir_ / "cli_output.log";
    const std::string cmd = std::string(PORTGNN_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
  }

  std::string slurp(const fs::path& p) const { return portgnn::read_file(p); }

  fs::path dir_;
};

TEST_F(CliTest, GenStarWritesGraph) {
  const fs::path out = dir_ / "star.json";
  const CliResult r = run("gen star 3 --seed 0 -o " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json j = json::parse(slurp(out));
  EXPECT_EQ(j.at("n").get<int>(), 4);
  EXPECT_EQ(j.at("edges").size(), 3u);
  EXPECT_TRUE(j.contains("meta"));
  EXPECT_TRUE(j.at("meta").contains("spec_hash"));
}

TEST_F(CliTest, GenInvalidParamsExitsTwo) {
  EXPECT_EQ(run("gen star 0 -o " + (dir_ / "x.json").string()).exit_code, 2);
  EXPECT_EQ(run("gen nosuch 3 -o " + (dir_ / "x.json").string()).exit_code, 2);
  EXPECT_EQ(run("gen random 10 -o " + (dir_ / "x.json").string()).exit_code, 2);  // missing --delta
  EXPECT_EQ(run("gen star 3").exit_code, 2);                                      // missing --out
}

TEST_F(CliTest, GenIsByteDeterministic) {
  const fs::path a = dir_ / "a.json";
  const fs::path b = dir_ / "b.json";
  ASSERT_EQ(run("gen random 10 --delta 3 --seed 7 -o " + a.string()).exit_code, 0);
  ASSERT_EQ(run("gen random 10 --delta 3 --seed 7 -o " + b.string()).exit_code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, GenCycle) {
  const fs::path out = dir_ / "c6.json";
  ASSERT_EQ(run("gen cycle 6 -o " + out.string()).exit_code, 0);
  const json j = json::parse(slurp(out));
  EXPECT_EQ(j.at("n").get<int>(), 6);
  EXPECT_EQ(j.at("edges").size(), 6u);
}

TEST_F(CliTest, SimulateSingleLeafSolvesTheStar) {
  const fs::path graph = dir_ / "star.json";
  ASSERT_EQ(run("gen star 3 -o " + graph.string()).exit_code, 0);
  const fs::path lab = dir_ / "lab.json";
  ASSERT_EQ(run("simulate " + graph.string() + " single_leaf -o " + lab.string()).exit_code, 0);
  const portgnn::Graph g = portgnn::graph_from_json(json::parse(slurp(graph)));
  const portgnn::Labeling labeling = portgnn::labeling_from_json(json::parse(slurp(lab)));
  EXPECT_TRUE(portgnn::verify_single_leaf(g, labeling));
}

TEST_F(CliTest, SimulateSingleLeafUnderShuffledNumberings) {
  const fs::path graph = dir_ / "star.json";
  ASSERT_EQ(run("gen star 3 -o " + graph.string()).exit_code, 0);
  const portgnn::Graph g = portgnn::graph_from_json(json::parse(slurp(graph)));
  for (int s = 0; s < 10; ++s) {
    const fs::path lab = dir_ / ("lab" + std::to_string(s) + ".json");
    ASSERT_EQ(run("simulate " + graph.string() + " single_leaf --ports shuffle:" + std::to_string(s) +
                  " -o " + lab.string())
                  .exit_code,
              0);
    EXPECT_TRUE(portgnn::verify_single_leaf(g, portgnn::labeling_from_json(json::parse(slurp(lab)))));
  }
}

TEST_F(CliTest, SimulateIdentityOutputsDegrees) {
  const fs::path graph = dir_ / "c6.json";
  ASSERT_EQ(run("gen cycle 6 -o " + graph.string()).exit_code, 0);
  const fs::path lab = dir_ / "lab.json";
  ASSERT_EQ(run("simulate " + graph.string() + " identity -o " + lab.string()).exit_code, 0);
  const portgnn::Labeling labeling = portgnn::labeling_from_json(json::parse(slurp(lab)));
  for (int v = 1; v <= 6; ++v) EXPECT_EQ(labeling.of(v), 2);
}

TEST_F(CliTest, SimulateUnknownProgramExitsTwo) {
  const fs::path graph = dir_ / "star.json";
  ASSERT_EQ(run("gen star 3 -o " + graph.string()).exit_code, 0);
  EXPECT_EQ(run("simulate " + graph.string() + " nosuch -o " + (dir_ / "l.json").string()).exit_code, 2);
  EXPECT_EQ(run("simulate " + graph.string() + " single_leaf --ports bogus -o " + (dir_ / "l.json").string())
                .exit_code,
            2);
}

TEST_F(CliTest, SimulateGnnCheckpointMatchesDirectForward) {
  const fs::path graph = dir_ / "star.json";
  ASSERT_EQ(run("gen star 3 -o " + graph.string()).exit_code, 0);
  portgnn::ModelConfig mc;
  mc.kind = portgnn::ModelKind::VVC;
  mc.delta = 3;
  mc.feature_dim = 3;
  mc.layer_dims = {6, 6};
  portgnn::Rng rng(41);
  const portgnn::Model m = portgnn::make_model(mc, rng);
  const fs::path ckpt = dir_ / "model.json";
  portgnn::write_file_atomic(ckpt, portgnn::model_to_json(m).dump() + "\n");

  const fs::path lab = dir_ / "lab.json";
  ASSERT_EQ(run("simulate " + graph.string() + " gnn:" + ckpt.string() + " -o " + lab.string()).exit_code, 0);
  const portgnn::Graph g = portgnn::graph_from_json(json::parse(slurp(graph)));
  const auto x = portgnn::node_features(g, 3, portgnn::FeatureSpec::Degree);
  const auto direct = portgnn::readout_all(
      portgnn::cpngnn_forward(m, g, portgnn::consistent_port_numbering(g), x));
  EXPECT_EQ(portgnn::labeling_from_json(json::parse(slurp(lab))).label, direct);
}

TEST_F(CliTest, SimulateGnnRejectsBroadcastCheckpoints) {
  const fs::path graph = dir_ / "star.json";
  ASSERT_EQ(run("gen star 3 -o " + graph.string()).exit_code, 0);
  portgnn::ModelConfig mc;
  mc.kind = portgnn::ModelKind::MB;
  mc.delta = 3;
  mc.feature_dim = 3;
  mc.layer_dims = {4};
  portgnn::Rng rng(1);
  const fs::path ckpt = dir_ / "mb.json";
  portgnn::write_file_atomic(ckpt, portgnn::model_to_json(portgnn::make_model(mc, rng)).dump());
  EXPECT_EQ(run("simulate " + graph.string() + " gnn:" + ckpt.string() + " -o " + (dir_ / "l.json").string())
                .exit_code,
            2);
}

TEST_F(CliTest, ExpRatiosSmallSuitePasses) {
  const fs::path out = dir_ / "ratios";
  const CliResult r = run("exp-ratios --seed 3 --count 6 --nmax 10 --delta 3 -o " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const std::string csv = slurp(out / "ratios.csv");
  EXPECT_NE(csv.find("index,family,n,m,max_degree"), std::string::npos);
  EXPECT_NE(csv.find("star"), std::string::npos);
  EXPECT_NE(csv.find("path"), std::string::npos);
  EXPECT_EQ(csv.find(",0\n"), std::string::npos);  // no bound violations flagged
}

TEST_F(CliTest, ExpSingleLeafTinyRunWritesReports) {
  const fs::path out = dir_ / "leaf";
  const CliResult r =
      run("exp-singleleaf --seed 1 --trials 1 --iterations 5 --model vvc -o " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "summary.csv"));
  EXPECT_TRUE(fs::exists(out / "report_vvc.json"));
  EXPECT_TRUE(fs::exists(out / "curve_vvc.csv"));
  EXPECT_TRUE(fs::exists(out / "ckpt_vvc_trial0.json"));
  const json report = json::parse(slurp(out / "report_vvc.json"));
  EXPECT_EQ(report.at("trials").size(), 1u);
  EXPECT_EQ(report.at("trials").at(0).at("checkpoint").get<std::string>(), "ckpt_vvc_trial0.json");
}

TEST_F(CliTest, ExpSingleLeafIsByteDeterministic) {
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  ASSERT_EQ(run("exp-singleleaf --seed 2 --trials 1 --iterations 4 --model mb -o " + a.string()).exit_code, 0);
  ASSERT_EQ(run("exp-singleleaf --seed 2 --trials 1 --iterations 4 --model mb -o " + b.string()).exit_code, 0);
  EXPECT_EQ(slurp(a / "report_mb.json"), slurp(b / "report_mb.json"));
  EXPECT_EQ(slurp(a / "curve_mb.csv"), slurp(b / "curve_mb.csv"));
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
}

TEST_F(CliTest, NoSubcommandExitsTwo) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("--help").exit_code, 0);
}

}  // namespace
