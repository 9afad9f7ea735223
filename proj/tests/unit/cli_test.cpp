#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config_json.hpp"
#include "ppac/error.hpp"
#include "ppac/trace_csv.hpp"

namespace fs = std::filesystem;
using namespace ppac::cli;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ppac_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& body) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static bool empty_or_missing(const fs::path& p) { return !fs::exists(p) || fs::is_empty(p); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::string csv_of(const ppac::SimConfig& cfg) {
  std::ostringstream s;
  ppac::write_trace_csv(s, ppac::simulate(cfg));
  return s.str();
}

}  // namespace

TEST_F(CliTest, PresetsRoundTripThroughJson) {
  for (const auto& name : preset_names()) {
    ppac::SimConfig cfg = preset(name);
    cfg.horizon = std::min<long>(cfg.horizon, 600);
    const nlohmann::json doc = nlohmann::json::parse(config_to_json(cfg).dump());
    const ppac::SimConfig back = config_from_json(doc);
    EXPECT_EQ(config_to_json(back), doc) << name;
    EXPECT_EQ(csv_of(back), csv_of(cfg)) << name;
  }
}

TEST_F(CliTest, BaseWithOverrides) {
  const auto cfg = config_from_json(nlohmann::json::parse(
      R"({"base": "1b/ideal", "horizon": 40, "disturbance": {"type": "constant", "value": 0.5}})"));
  EXPECT_EQ(cfg.horizon, 40);
  EXPECT_EQ(cfg.disturbance(7), 0.5);
  EXPECT_EQ(cfg.box.dim(), 4);
}

TEST_F(CliTest, MinimalDocumentGetsDefaults) {
  const auto cfg = config_from_json(nlohmann::json::parse(
      R"({"box": {"a": [[1, 2]], "b": [[1, 2]]}, "plant": {"a": [1.5], "b": [1.2]}, "horizon": 10})"));
  EXPECT_EQ(cfg.theta0, cfg.box.midpoint());
  EXPECT_EQ(cfg.phi0, Eigen::VectorXd::Zero(2));
  EXPECT_TRUE(std::holds_alternative<ppac::IdealVariant>(cfg.estimator));
}

TEST_F(CliTest, RejectsUnknownFieldsWithPath) {
  try {
    (void)config_from_json(nlohmann::json::parse(R"({"base": "1a/ideal", "estimator": {"type": "ideal", "dleta": 1}})"));
    FAIL() << "expected ConfigInvalid";
  } catch (const ppac::Error& e) {
    EXPECT_EQ(e.code(), ppac::ErrorCode::ConfigInvalid);
    EXPECT_NE(std::string(e.what()).find("$.estimator.dleta"), std::string::npos) << e.what();
  }
}

TEST_F(CliTest, RunWritesTraceAndAnalysis) {
  const fs::path cfg = write("cfg.json", R"({"base": "1a/ideal", "horizon": 200})");
  const fs::path out = dir_ / "out";
  ASSERT_EQ(run_config(cfg, out, out_, err_), kOk) << err_.str();
  const std::string trace = slurp(out / "trace.csv");
  EXPECT_EQ(trace.substr(0, trace.find('\n')), ppac::trace_csv_header(2));
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 201);
  const std::string analysis = slurp(out / "analysis.csv");
  for (const char* key : {"max_abs_y", "keyeq_max_deviation", "prop1_violations,0", "envelope_lambda"}) {
    EXPECT_NE(analysis.find(key), std::string::npos) << key;
  }
}

TEST_F(CliTest, MalformedConfigLeavesNoFiles) {
  const fs::path out = dir_ / "out";
  const fs::path broken = write("broken.json", R"({"base": "1a/ideal", "horizon": )");
  EXPECT_EQ(run_config(broken, out, out_, err_), kConfigError);
  EXPECT_TRUE(empty_or_missing(out));

  const fs::path outside = write("outside.json", R"({"base": "1a/ideal", "initial_estimate": {"a": [9, 2], "b": [0.5, -3]}})");
  EXPECT_EQ(run_config(outside, out, out_, err_), kConfigError);
  EXPECT_TRUE(empty_or_missing(out));

  EXPECT_EQ(run_config(dir_ / "missing.json", out, out_, err_), kConfigError);
  EXPECT_TRUE(empty_or_missing(out));
}

TEST_F(CliTest, UnstableTargetIsInvariantFailure) {
  const fs::path out = dir_ / "out";
  const fs::path cfg = write("cfg.json", R"({"base": "1a/ideal", "target": [1, -2]})");
  EXPECT_EQ(run_config(cfg, out, out_, err_), kInvariantFailure);
  EXPECT_NE(err_.str().find("UnstableTarget"), std::string::npos) << err_.str();
  EXPECT_TRUE(empty_or_missing(out));
}

TEST_F(CliTest, FigureOutputsAreDeterministic) {
  ASSERT_EQ(run_figure("1a", dir_ / "a", out_, err_), kOk) << err_.str();
  ASSERT_EQ(run_figure("1a", dir_ / "b", out_, err_), kOk) << err_.str();
  for (const char* name : {"fig1a_ideal.csv", "fig1a_classical.csv", "fig1a_ideal_analysis.csv"}) {
    ASSERT_TRUE(fs::exists(dir_ / "a" / name)) << name;
    EXPECT_EQ(slurp(dir_ / "a" / name), slurp(dir_ / "b" / name)) << name;
  }
  EXPECT_EQ(run_figure("9", dir_ / "c", out_, err_), kConfigError);
}

TEST_F(CliTest, VerifyCharpoly) {
  EXPECT_EQ(run_verify("charpoly", out_, err_), kOk) << out_.str() << err_.str();
  EXPECT_NE(out_.str().find("PASS charpoly"), std::string::npos);
  EXPECT_EQ(run_verify("bogus", out_, err_), kConfigError);
}

TEST_F(CliTest, Remark2Table) {
  const std::vector<double> eps{1e-2, 1e-3};
  const fs::path out = dir_ / "r2";
  ASSERT_EQ(run_remark2(eps, &out, out_, err_), kOk);
  EXPECT_EQ(slurp(out / "remark2.csv"), out_.str());
  EXPECT_EQ(out_.str().substr(0, out_.str().find('\n')), "eps,steps,classical_ratio,ideal_c,ideal_lambda");
  EXPECT_NE(out_.str().find("\n0.01,5,"), std::string::npos) << out_.str();
  const std::vector<double> bad{2.0};
  EXPECT_EQ(run_remark2(bad, nullptr, out_, err_), kConfigError);
}

TEST_F(CliTest, DefaultOutputDirectoryFromEnvironment) {
  ::setenv("PPAC_OUT_DIR", dir_.c_str(), 1);
  EXPECT_EQ(default_out_dir(), dir_);
  ::unsetenv("PPAC_OUT_DIR");
  EXPECT_EQ(default_out_dir(), fs::path("ppac_out"));
}

TEST_F(CliTest, ArgumentErrorsExitWithConfigCode) {
  std::string prog = "ppac";
  std::string sub = "figure";
  std::string bad = "7";
  char* argv[] = {prog.data(), sub.data(), bad.data()};
  testing::internal::CaptureStderr();
  testing::internal::CaptureStdout();
  EXPECT_EQ(main_entry(3, argv), kConfigError);
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
}
