#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "graphpse/mpnn.hpp"
#include "graphpse/weights_io.hpp"

namespace graphpse::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("graphpse_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
    return path(name);
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, EncodeLapPeOnK2) {
  const auto input = write("k2.jsonl", "{\"num_nodes\":2,\"edges\":[[0,1]]}\n");
  const auto r = run({"encode", input, "--pse", "LapPE", "--lap-pe-m", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, a, b, extra;
  std::getline(lines, header);
  std::getline(lines, a);
  std::getline(lines, b);
  EXPECT_EQ(header, "graph_id,node_id,kind,component_index,value");
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(a.rfind("0,0,LapPE,0,", 0), 0u);
  EXPECT_EQ(b.rfind("0,1,LapPE,0,", 0), 0u);
  const double va = std::stod(a.substr(a.rfind(',') + 1));
  const double vb = std::stod(b.substr(b.rfind(',') + 1));
  EXPECT_NEAR(std::abs(va), 0.7071067811865476, 1e-12);
  EXPECT_EQ(va, vb);
}

TEST_F(CliTest, EncodeEmptyInputIsHeaderOnly) {
  const auto input = write("empty.jsonl", "");
  const auto r = run({"encode", input, "--pse", "RWSE"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "graph_id,node_id,kind,component_index,value\n");
}

TEST_F(CliTest, EncodeMalformedLineReportsLineNumber) {
  const auto input = write("bad.jsonl",
                           "{\"num_nodes\":2,\"edges\":[[0,1]]}\n{\"num_nodes\":2,\"edges\":[[0,1]]}\n"
                           "{\"num_nodes\":2,\"edges\":[[0,5]]}\n");
  const auto r = run({"encode", input, "--pse", "RWSE"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(run({"encode", path("missing.jsonl"), "--pse", "RWSE"}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"bogus"}).code, kExitInputError);
  EXPECT_EQ(run({"verify-thm1", "--alphas", "1.5"}).code, kExitInputError);
  EXPECT_EQ(run({"gen", "csl", "--skips", "1,2"}).code, kExitInputError);
  EXPECT_EQ(run({"gen", "regular", "--n", "5", "--d", "3"}).code, kExitInputError);
  EXPECT_EQ(run({"--threads", "0", "verify-thm2"}).code, kExitInputError);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, EncodeWithoutAnyEncodingIsAnError) {
  const auto input = write("k2.jsonl", "{\"num_nodes\":2,\"edges\":[[0,1]]}\n");
  const auto r = run({"encode", input});
  EXPECT_EQ(r.code, kExitInputError);
}

TEST_F(CliTest, WlFig1PairNeedsCycles) {
  const auto ab = write("ab.jsonl",
                        "{\"num_nodes\":6,\"edges\":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]}\n"
                        "{\"num_nodes\":6,\"edges\":[[0,1],[1,2],[0,2],[3,4],[4,5],[3,5]]}\n");
  const auto plain = run({"wl", ab});
  ASSERT_EQ(plain.code, kExitOk) << plain.err;
  const auto pj = nlohmann::json::parse(plain.out);
  EXPECT_EQ(pj["num_classes"], 1);
  EXPECT_EQ(pj["distinguishable"], nlohmann::json::parse(R"(["00","00"])"));
  const auto cyc = run({"wl", ab, "--pse", "CycleSE", "--cycle-k", "3"});
  ASSERT_EQ(cyc.code, kExitOk) << cyc.err;
  const auto cj = nlohmann::json::parse(cyc.out);
  EXPECT_EQ(cj["num_classes"], 2);
  EXPECT_EQ(cj["distinguishable"], nlohmann::json::parse(R"(["01","10"])"));
}

TEST_F(CliTest, WlCslWithRwse) {
  const auto csl = path("csl.jsonl");
  ASSERT_EQ(run({"--seed", "3", "--out", csl, "gen", "csl", "--copies", "3"}).code, kExitOk);
  const auto plain = nlohmann::json::parse(run({"wl", csl}).out);
  EXPECT_EQ(plain["num_classes"], 1);
  const auto r = run({"wl", csl, "--rwse-steps", "1,2,3,4,5,6,7,8,9,10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["num_classes"], 10);
  const auto ids = j["class_ids"].get<std::vector<int>>();
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(ids[i], static_cast<int>(i / 3));
}

TEST_F(CliTest, VerifyCommands) {
  const auto t1 = run({"verify-thm1", "--trials", "10"});
  ASSERT_EQ(t1.code, kExitOk) << t1.err;
  std::istringstream lines(t1.out);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 40);
  const auto t2 = run({"verify-thm2"});
  ASSERT_EQ(t2.code, kExitOk) << t2.err;
  EXPECT_EQ(nlohmann::json::parse(t2.out)["verdict"], "indistinguishable");
}

TEST_F(CliTest, VerifyThm1WithWeightFile) {
  Rng rng(3);
  const int widths[] = {2, 3, 2};
  const auto stack = random_gin_stack(widths, 4, 1.0, rng);
  const auto weights = write("gin.json", gin_stack_to_json(stack).dump());
  const auto r = run({"verify-thm1", "--weights", weights, "--trials", "5", "--alphas", "0.2,0.05"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\n0.05000000000000000"), std::string::npos);
  EXPECT_EQ(run({"verify-thm1", "--weights", write("empty.json", "{\"matrices\":{}}")}).code, kExitInputError);
}

TEST_F(CliTest, GenAndStats) {
  const auto tri = path("tri.jsonl");
  const auto g = run({"--seed", "1", "--out", tri, "gen", "tri", "--count", "50"});
  ASSERT_EQ(g.code, kExitOk) << g.err;
  EXPECT_TRUE(fs::exists(tri + ".config.json"));
  EXPECT_TRUE(fs::exists(tri + ".meta.json"));
  const auto config = nlohmann::json::parse(read(tri + ".config.json"));
  EXPECT_EQ(config["seed"], 1);
  EXPECT_EQ(config["count"], 50);
  const auto s = run({"stats", tri});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_EQ(s.out.rfind("num_nodes,num_edges,density,", 0), 0u);
  EXPECT_NE(s.out.find("\n20.000000,30.000000,"), std::string::npos) << s.out;

  const auto fig1 = run({"gen", "fig1"});
  ASSERT_EQ(fig1.code, kExitOk);
  EXPECT_EQ(std::count(fig1.out.begin(), fig1.out.end(), '\n'), 4);
  const auto reg = run({"gen", "regular", "--n", "10", "--d", "3", "--count", "7", "--strategy", "uniform"});
  ASSERT_EQ(reg.code, kExitOk) << reg.err;
  EXPECT_EQ(std::count(reg.out.begin(), reg.out.end(), '\n'), 7);
  EXPECT_EQ(run({"gen", "regular", "--strategy", "other"}).code, kExitInputError);
}

TEST_F(CliTest, ConfigFileIsOverlaidByFlags) {
  const auto cfg = write("cfg.json", R"({"command":"gen","generator":"csl","seed":9,"copies":2})");
  const auto a = run({"--config", cfg, "gen", "csl"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 20);
  const auto b = run({"--config", cfg, "gen", "csl", "--copies", "1"});
  EXPECT_EQ(std::count(b.out.begin(), b.out.end(), '\n'), 10);
  EXPECT_EQ(a.out, run({"--seed", "9", "gen", "csl", "--copies", "2"}).out);
  EXPECT_EQ(run({"--config", write("bad.json", R"({"nonsense":1})"), "gen", "csl"}).code, kExitInputError);
}

TEST_F(CliTest, ConfigRoundTripReproducesRun) {
  const auto out = path("run.csv");
  ASSERT_EQ(run({"--seed", "5", "--out", out, "verify-thm1", "--trials", "7", "--alphas", "0.3"}).code, kExitOk);
  const auto again = path("again.csv");
  ASSERT_EQ(run({"--config", out + ".config.json", "--out", again, "verify-thm1"}).code, kExitOk);
  EXPECT_EQ(read(out), read(again));
}

TEST_F(CliTest, ThreadsDoNotChangeOutput) {
  const auto data = path("reg.jsonl");
  ASSERT_EQ(run({"--seed", "2", "--threads", "4", "--out", data, "gen", "regular", "--count", "30"}).code, kExitOk);
  EXPECT_EQ(read(data), run({"--seed", "2", "gen", "regular", "--count", "30"}).out);
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"encode", data, "--pse", "AllPSE"}, {"wl", data, "--pse", "RWSE"}, {"stats", data},
        {"verify-thm1", "--trials", "20"}}) {
    std::vector<std::string> one{"--seed", "4", "--threads", "1"};
    std::vector<std::string> four{"--seed", "4", "--threads", "4"};
    one.insert(one.end(), cmd.begin(), cmd.end());
    four.insert(four.end(), cmd.begin(), cmd.end());
    const auto a = run(one);
    const auto b = run(four);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out) << cmd.front();
  }
}

TEST_F(CliTest, EncodeForward) {
  Rng rng(8);
  const auto w = random_gpse_weights(20, 6, 2, 1, 1, rng);
  const auto weights = write("gpse.json", gpse_weights_to_json(w).dump());
  const auto input = write("c4.jsonl", "{\"num_nodes\":4,\"edges\":[[0,1],[1,2],[2,3],[0,3]]}\n");
  const auto out = path("enc.csv");
  const auto r = run({"--seed", "1", "--out", out, "encode", input, "--forward", weights});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto csv = read(out);
  EXPECT_NE(csv.find(",GPSE,5,"), std::string::npos);
  EXPECT_NE(csv.find("0,-1,GPSEHead1,0,"), std::string::npos);
  EXPECT_NE(csv.find(",GPSEHead0,0,"), std::string::npos);
  EXPECT_EQ(csv, read(out));
  const auto again = run({"--seed", "1", "encode", input, "--forward", weights});
  EXPECT_EQ(again.out, csv);
  EXPECT_NE(run({"--seed", "2", "encode", input, "--forward", weights}).out, csv);
  const auto constant = run({"encode", input, "--forward", weights, "--input-mode", "constant"});
  EXPECT_EQ(constant.code, kExitOk) << constant.err;
  EXPECT_EQ(run({"encode", input, "--forward", weights, "--input-mode", "nope"}).code, kExitInputError);
  const auto meta = nlohmann::json::parse(read(out + ".meta.json"));
  EXPECT_EQ(meta["num_graphs"], 1);
}

}  // namespace
}  // namespace graphpse::cli
