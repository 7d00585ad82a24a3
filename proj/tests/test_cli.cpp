#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qceq/json_io.hpp"

namespace fs = std::filesystem;
using qceq::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QCEQ_CLI + std::string(" ") + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qceq_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

const std::string kHH = R"({"n_in":1,"n_out":1,"gates":[{"kind":"H","wires":[0],"params":[]},{"kind":"H","wires":[0],"params":[]}]})";
const std::string kEmpty1 = R"({"n_in":1,"n_out":1,"gates":[]})";
const std::string kH = R"({"n_in":1,"n_out":1,"gates":[{"kind":"H","wires":[0],"params":[]}]})";
const fs::path kTraces = fs::path(QCEQ_SOURCE_DIR) / "traces";

}  // namespace

TEST_F(Cli, EquivUpToPhase) {
  const auto a = write("a.json", kHH), b = write("b.json", kEmpty1), h = write("h.json", kH);
  CliResult r = run("equiv " + a + " " + b + " --up-to-phase");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).at("equivalent").get<bool>());
  EXPECT_EQ(run("equiv " + h + " " + b).code, 1);
}

TEST_F(Cli, Eval) {
  const CliResult r = run("eval " + write("h.json", kH));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("unitary").get<bool>());
  EXPECT_NEAR(j.at("matrix")[1][1][0].get<double>(), -1 / std::sqrt(2.0), 1e-12);
}

TEST_F(Cli, WireCapFromEnvironment) {
  const auto c = write("c.json", R"({"n_in":3,"n_out":3,"gates":[{"kind":"H","wires":[2],"params":[]}]})");
  EXPECT_EQ(run("eval " + c, "QCEQ_WIRE_CAP=2").code, 2);
  EXPECT_EQ(run("eval " + c, "QCEQ_WIRE_CAP=3").code, 0);
}

TEST_F(Cli, VerifyRules) {
  const CliResult r = run("verify-rules --theory QC --samples 100 --max-qubits 6 --tol 1e-9 --seed 42");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).at("pass").get<bool>());
  EXPECT_EQ(run("verify-rules --theory QCancilla --samples 20").code, 0);
}

TEST_F(Cli, SameSeedSameBytes) {
  const CliResult a = run("minimality --theory QC --axiom SPLUS --samples 20 --seed 3");
  const CliResult b = run("minimality --theory QC --axiom SPLUS --samples 20 --seed 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("verify-rules --samples 10 --seed 9").out, run("verify-rules --samples 10 --seed 9").out);
}

TEST_F(Cli, MinimalityH2) {
  const CliResult r = run("minimality --theory QC --axiom H2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("verdict"), "PASS");
}

TEST_F(Cli, ReplayShippedTraces) {
  for (const auto& e : fs::directory_iterator(kTraces)) {
    if (e.path().filename() == "manifest.json") continue;
    const CliResult r = run("replay " + e.path().string() + " --allow-lemmas");
    EXPECT_EQ(r.code, 0) << e.path();
    EXPECT_LE(json::parse(r.out).at("max_drift").get<double>(), 1e-9);
  }
}

TEST_F(Cli, ReplayReportsFailingStep) {
  const CliResult r = run("replay " + (kTraces / "qc_FIVE_CX.json").string());
  EXPECT_EQ(r.code, 2);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j.at("ok").get<bool>());
  EXPECT_TRUE(j.at("failed_step").is_number_integer());
}

TEST_F(Cli, NormalizeWritesTrace) {
  const auto c = write("c.json", R"({"n_in":1,"n_out":1,"gates":[{"kind":"H","wires":[0],"params":[]},
    {"kind":"P","wires":[0],"params":[0.4]},{"kind":"H","wires":[0],"params":[]}]})");
  const std::string out = (dir_ / "t.json").string();
  const CliResult r = run("normalize " + c + " --trace " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("beta").size(), 4u);
  EXPECT_EQ(run("replay " + out + " --allow-lemmas").code, 0);
}

TEST_F(Cli, Synth1q) {
  const double s = 1 / std::sqrt(2.0);
  const json m = json::array({json::array({json::array({s, 0}), json::array({s, 0})}),
                              json::array({json::array({s, 0}), json::array({-s, 0})})});
  const CliResult r = run("synth1q " + write("m.json", m.dump()));
  ASSERT_EQ(r.code, 0);
  const json b = json::parse(r.out).at("beta");
  EXPECT_NEAR(b[1].get<double>(), M_PI / 2, 1e-9);
  EXPECT_NEAR(b[2].get<double>(), M_PI / 2, 1e-9);
}

TEST_F(Cli, Expand) {
  const auto c = write("c.json", R"({"n_in":1,"n_out":1,"gates":[{"kind":"X","wires":[0],"params":[]}]})");
  const CliResult r = run("expand " + c);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("gates").size(), 3u);
}

TEST_F(Cli, ListRules) {
  const CliResult r = run("list-rules --theory QC");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("axioms").size(), 10u);
  EXPECT_TRUE(json::parse(run("list-rules --all").out).contains("lemmas"));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify-rules --theory QCold").code, 2);
  EXPECT_EQ(run("eval " + (dir_ / "missing.json").string()).code, 2);
  EXPECT_EQ(run("eval " + write("bad.json", "{not json")).code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
