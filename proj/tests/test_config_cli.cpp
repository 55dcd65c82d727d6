#include "dint/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dint/analytic.hpp"
#include "dint/errors.hpp"

namespace fs = std::filesystem;

namespace dint {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dint");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("dint_cli_") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
    saved_cwd_ = fs::current_path();
  }
  void TearDown() override {
    fs::current_path(saved_cwd_);
    fs::remove_all(root_);
  }
  fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = root_ / name;
    std::ofstream(p) << body;
    return p;
  }
  fs::path root_;
  fs::path saved_cwd_;
};

TEST(Config, ParsesAndEchoes) {
  const auto doc = nlohmann::json::parse(R"({
    "params": {"k1": 0.1, "k2": 0.1, "k3": 1, "R": 4, "alpha3": 0.5, "mode": "nonlinear"},
    "signal": {"kind": "sinusoid", "amplitude": 2, "omega": 3,
               "noise": [{"amp": 0.1, "omega": 10, "phase": "cosine"}]},
    "sim": {"step_h": 0.0005, "duration": 3, "initial_state": [0, 1, 0],
            "method": "euler", "record_stride": 2},
    "sweep": {"grid": {"start": 1, "step": 1, "stop": 4}, "channels": [1, 3]}
  })");
  const RunConfig cfg = parse_run_config(doc);
  EXPECT_EQ(cfg.params.r, 4.0);
  EXPECT_EQ(cfg.params.mode, ObserverMode::nonlinear);
  EXPECT_DOUBLE_EQ(cfg.params.build().epsilon(), 0.25);
  EXPECT_EQ(cfg.signal.kind, SignalKind::sinusoid);
  ASSERT_EQ(cfg.signal.noise.size(), 1u);
  EXPECT_EQ(cfg.sim.method, Method::euler);
  EXPECT_EQ(cfg.sim.record_stride, 2u);
  EXPECT_EQ(cfg.sweep.freqs_hz, (std::vector<double>{1, 2, 3, 4}));
  const RunConfig again = parse_run_config(to_json(cfg));
  EXPECT_EQ(to_json(again), to_json(cfg));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_run_config(nlohmann::json::parse(R"({"params": {"k4": 1}})")),
               ConfigError);
  EXPECT_THROW(parse_run_config(nlohmann::json::parse(R"({"bogus": 1})")), ConfigError);
  EXPECT_THROW(parse_run_config(nlohmann::json::parse(R"({"sim": {"method": "rk2"}})")),
               ConfigError);
  EXPECT_THROW(parse_run_config(nlohmann::json::parse(R"({"params": {"k1": "x"}})")),
               ConfigError);
  EXPECT_THROW(scenario_config("fig9"), ConfigError);
}

TEST(Config, ScenariosExpand) {
  EXPECT_EQ(scenario_names().size(), 6u);
  const RunConfig f1 = scenario_config("fig1");
  EXPECT_EQ(f1.command, Command::sweep);
  EXPECT_EQ(f1.sweep_cases.size(), 9u);
  const RunConfig f4 = scenario_config("fig4");
  EXPECT_EQ(f4.command, Command::simulate);
  EXPECT_EQ(f4.sim.duration, 2000.0);
  EXPECT_EQ(f4.params.alpha3, 0.3);
  EXPECT_EQ(f4.params.mode, ObserverMode::nonlinear);
}

TEST_F(CliTest, UnknownKeyIsBadConfig) {
  const auto p = write_config("c.json", R"({"params": {"k1": 0.1, "gamma": 2}})");
  const auto r = run_cli({"validate", "--config", p.string()});
  EXPECT_EQ(r.code, cli::kBadConfig);
  EXPECT_NE(r.err.find("gamma"), std::string::npos);
}

TEST_F(CliTest, MissingFileIsBadConfig) {
  EXPECT_EQ(run_cli({"validate", "--config", (root_ / "nope.json").string()}).code,
            cli::kBadConfig);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kBadConfig);
}

TEST_F(CliTest, ValidateExitCodes) {
  const auto good = write_config("good.json", R"({"params": {"R": 5}})");
  const auto r = run_cli({"validate", "--config", good.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("valid"), std::string::npos);

  const auto weak = write_config("weak.json", R"({"params": {"k2": 0}})");
  const auto w = run_cli({"validate", "--config", weak.string()});
  EXPECT_EQ(w.code, cli::kInvalidParams);
  EXPECT_NE(w.out.find("gain inequality"), std::string::npos);

  const auto alpha =
      write_config("alpha.json", R"({"params": {"alpha3": 1.5, "mode": "nonlinear"}})");
  const auto a = run_cli({"validate", "--config", alpha.string()});
  EXPECT_EQ(a.code, cli::kInvalidParams);
  EXPECT_NE(a.out.find("alpha range"), std::string::npos);
}

TEST_F(CliTest, ReproduceMatchesExplicitConfigByteForByte) {
  const auto printed = run_cli({"reproduce", "fig3", "--print-config"});
  ASSERT_EQ(printed.code, cli::kOk);
  const auto cfg_path = write_config("fig3.json", printed.out);

  fs::create_directories(root_ / "a");
  fs::create_directories(root_ / "b");
  fs::current_path(root_ / "a");
  ASSERT_EQ(run_cli({"reproduce", "--scenario", "fig3"}).code, cli::kOk);
  fs::current_path(root_ / "b");
  ASSERT_EQ(run_cli({"simulate", "--config", cfg_path.string()}).code, cli::kOk);

  for (const char* f : {"trajectory.csv", "metrics.json", "config.json"}) {
    const std::string a = slurp(root_ / "a" / "fig3" / f);
    ASSERT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(root_ / "b" / "fig3" / f)) << f;
  }
}

TEST_F(CliTest, ZeroSignalGivesZeroMetrics) {
  const auto p = write_config("zero.json", R"({
    "params": {"R": 5},
    "signal": {"kind": "sinusoid", "amplitude": 0, "omega": 1},
    "sim": {"duration": 1}
  })");
  const fs::path out = root_ / "zero_out";
  ASSERT_EQ(run_cli({"simulate", "--config", p.string(), "--out", out.string()}).code,
            cli::kOk);
  const auto metrics = nlohmann::json::parse(slurp(out / "metrics.json"));
  for (const char* ch : {"e1", "e2", "e3"}) {
    EXPECT_EQ(metrics["metrics"]["errors"][ch]["max_abs"].get<double>(), 0.0) << ch;
  }
}

TEST_F(CliTest, SingleFrequencySweepMatchesTransfer) {
  const auto p = write_config("one.json", R"({
    "params": {"R": 5},
    "sweep": {"freqs_hz": [1.0], "samples": 20000}
  })");
  const fs::path out = root_ / "one_out";
  const auto r = run_cli({"sweep", "--config", p.string(), "--out", out.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::ifstream in(out / "bode_R5_a1_A1_linear.csv");
  ASSERT_TRUE(in.good());
  std::string line;
  std::getline(in, line);
  const auto params =
      ObserverParams::from_r({0.1, 0.1, 1.0}, 5.0, 1.0, ObserverMode::linear);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    const int ch = std::stoi(cells[2]);
    const double db = std::stod(cells[3]);
    EXPECT_NEAR(db, transfer_eval(params, ch, 2 * M_PI).gain_db, 0.05) << "ch=" << ch;
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace dint
