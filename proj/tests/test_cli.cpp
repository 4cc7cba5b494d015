#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "qfridge/table_io.hpp"

using namespace qfridge;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Golden comparisons tolerate last-digit drift: every number is re-printed at 9 digits.
std::string round9(const std::string& text) {
  static const std::regex num(R"([-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)");
  std::string out;
  auto it = std::sregex_iterator(text.begin(), text.end(), num);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    out += text.substr(last, it->position() - last);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", std::stod(it->str()));
    out += buf;
    last = it->position() + it->length();
  }
  return out + text.substr(last);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("qfridge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  fs::path dir;
};

const char* kModelI =
    "# cooling regime\n"
    "[model]\n"
    "tag = I\n"
    "[params]\n"
    "E1 = 1\nE2 = 3\nTc = 1\nTh = 4\np1 = 1e-3\np2 = 1e-3\np3 = 1e-3\ng = 1e-3\n";

double value_after(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string k, v;
  while (is >> k) {
    std::getline(is, v);
    if (k == key) return std::stod(v);
  }
  return NAN;
}

}  // namespace

TEST_F(CliTest, SteadyReportsCoolingAndWritesStateAndManifest) {
  const auto cfg = write("m.ini", kModelI);
  const auto r = run({"steady", "--config", cfg, "--out", path("state.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(value_after(r.out, "T1"), 1.0);

  const FridgeModel m = build_model(ModelTag::I, cli::model_parameters(cli::load_config(cfg)));
  const auto ss = steady_state(m);
  const auto temps = temperatures(m, ss.rho);
  EXPECT_EQ(round9(format_value(value_after(r.out, "T1"))), round9(format_value(temps[0].value)));
  EXPECT_EQ(round9(format_value(value_after(r.out, "Q1"))), round9(format_value(heat_currents(m, ss.rho).per_particle[0])));

  const auto state = nlohmann::json::parse(slurp(path("state.json")));
  EXPECT_EQ(state["shape"], (std::vector<int>{2, 2, 2}));
  EXPECT_NEAR(state["re"][0][0].get<double>(), ss.rho(0, 0).real(), 1e-11);

  const auto manifest = nlohmann::json::parse(slurp(path("state.json") + ".manifest.json"));
  EXPECT_EQ(manifest["command"], "steady");
  EXPECT_EQ(manifest["outputs"][0], path("state.json"));
  EXPECT_EQ(manifest["resolved_parameters"]["model"]["params"]["Tr"], 1.0);
  EXPECT_EQ(manifest["resolved_parameters"]["model"]["params"].size(), 9u);
  EXPECT_TRUE(manifest["resolved_parameters"]["solver"].contains("tol"));
  EXPECT_TRUE(manifest.contains("tool_version"));
  EXPECT_TRUE(manifest.contains("wall_time_seconds"));
}

TEST_F(CliTest, SteadyEquilibriumReportsBathTemperatureAndNoCurrents) {
  const auto cfg = write("m.ini", kModelI);
  const auto r = run({"steady", "--config", cfg, "--set", "params.Th=1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(value_after(r.out, "T1"), 1.0, 1e-9);
  for (const char* q : {"Q1", "Q2", "Q3"}) EXPECT_LT(std::abs(value_after(r.out, q)), 1e-12);
}

TEST_F(CliTest, SteadyStateCsvFormat) {
  const auto cfg = write("m.ini", kModelI);
  ASSERT_EQ(run({"steady", "--config", cfg, "--out", path("s.csv")}).code, 0);
  const std::string csv = slurp(path("s.csv"));
  EXPECT_EQ(csv.substr(0, 15), "row,col,re,im\n0");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
}

TEST_F(CliTest, MissingFieldIsNamed) {
  std::string text = kModelI;
  text.replace(text.find("E2 = 3\n"), 7, "");
  const auto r = run({"steady", "--config", write("m.ini", text)});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("E2"), std::string::npos);
}

TEST_F(CliTest, MalformedConfigReportsLine) {
  const auto r = run({"steady", "--config", write("m.ini", "[model]\ntag = I\n[params\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("m.ini:3"), std::string::npos) << r.err;
  std::string text = kModelI;
  text.replace(text.find("Th = 4"), 6, "Th = hot");
  const auto bad = run({"steady", "--config", write("n.ini", text)});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("Th"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"steady"}).code, 1);
  EXPECT_EQ(run({"steady", "--config", path("missing.ini")}).code, 1);
  EXPECT_EQ(run({"sweep", "--config", write("m.ini", kModelI), "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, UnconvergedSteadyExitsTwo) {
  const auto r = run({"steady", "--config", write("m.ini", kModelI), "--tol", "1e-30"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("converged false"), std::string::npos);
}

TEST_F(CliTest, SweepMatchesLibraryAndIsDeterministic) {
  const auto cfg = write("s.ini", std::string(kModelI) + "[sweep]\naxis = Th\nstart = 1\nstop = 10\ncount = 5\n");
  const auto a = run({"sweep", "--config", cfg, "--out", path("a.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto b = run({"sweep", "--config", cfg, "--out", path("b.csv"), "--threads", "3"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));

  const auto table = run_sweep(cli::sweep_config(cli::load_config(cfg)));
  EXPECT_EQ(round9(slurp(path("a.csv"))), round9(to_csv(table)));

  ASSERT_EQ(run({"sweep", "--config", cfg, "--out", path("a.json")}).code, 0);
  EXPECT_EQ(round9(slurp(path("a.json"))), round9(to_json(table)));
  const auto manifest = nlohmann::json::parse(slurp(path("a.json") + ".manifest.json"));
  EXPECT_EQ(manifest["resolved_parameters"]["sweep"]["values"].size(), 5u);
  EXPECT_EQ(manifest["resolved_parameters"]["sweep"]["fixed"]["Tr"], 1.0);
}

TEST_F(CliTest, SweepWithoutOutPrintsTable) {
  const auto cfg = write("s.ini", std::string(kModelI) + "[sweep]\naxis = p2\nvalues = 1e-3, 1e-2\nrules = p3 = p2\n");
  const auto r = run({"sweep", "--config", cfg, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["metadata"]["rules"], "p3 = p2");
}

TEST_F(CliTest, SweepUnconvergedRowsExitTwo) {
  const auto cfg = write("s.ini", std::string(kModelI) + "[sweep]\naxis = Th\nvalues = 2, 3\n");
  const auto r = run({"sweep", "--config", cfg, "--tol", "1e-30"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unconverged"), std::string::npos);
}

TEST_F(CliTest, BadSweepSectionIsUsageError) {
  EXPECT_EQ(run({"sweep", "--config", write("a.ini", std::string(kModelI) + "[sweep]\naxis = Th\nvalues = 3, 2, 4\n")}).code, 1);
  EXPECT_EQ(run({"sweep", "--config", write("b.ini", std::string(kModelI) + "[sweep]\naxis = zz\nvalues = 1\n")}).code, 1);
  EXPECT_EQ(run({"sweep", "--config", write("c.ini", std::string(kModelI) + "[sweep]\naxis = Th\n")}).code, 1);
}

TEST_F(CliTest, Fig5LastRowsApproachClosedForm) {
  const auto r = run({"figure", "fig5", "--out", path("f5.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto [curve, want] : {std::pair{"Th4", 0.400}, std::pair{"Th8", 0.364}, std::pair{"Th12", 0.353}}) {
    const std::string csv = slurp(path(std::string("f5_") + curve + ".csv"));
    std::istringstream is(csv);
    std::string line, last;
    while (std::getline(is, line)) {
      if (!line.empty()) last = line;
    }
    const double t1 = std::stod(last.substr(last.find(',') + 1));
    EXPECT_NEAR(t1 / want, 1.0, 5e-3) << curve;
  }
  const auto manifest = nlohmann::json::parse(slurp(path("f5.csv") + ".manifest.json"));
  EXPECT_EQ(manifest["outputs"].size(), 3u);
}

TEST_F(CliTest, Fig6HeaderCarriesCaptionMetadata) {
  const auto r = run({"figure", "fig6", "--out", path("f6.csv")});
  ASSERT_EQ(r.code, 0);
  const std::string csv = slurp(path("f6_g1_h1.csv"));
  EXPECT_NE(csv.find("# p=0.001"), std::string::npos);
  EXPECT_NE(csv.find("# Tc=1"), std::string::npos);
  EXPECT_NE(csv.find("# E=1"), std::string::npos);
}

TEST_F(CliTest, FigureMatchesLibraryExactlyAfterRounding) {
  const auto r = run({"figure", "fig2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(round9(r.out), round9(to_csv(run_sweep(preset("fig2").curves[0]))));
}

TEST_F(CliTest, UnknownFigureListsIds) {
  const auto r = run({"figure", "fig42"});
  EXPECT_EQ(r.code, 1);
  for (const auto& id : figure_ids()) EXPECT_NE(r.err.find(id), std::string::npos);
}

TEST_F(CliTest, EvolveWritesTrajectory) {
  const auto cfg = write("e.ini", std::string(kModelI) + "[evolve]\nt_final = 2\ndt = 0.01\nsample_every = 50\n");
  const auto r = run({"evolve", "--config", cfg, "--out", path("traj.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("traj.json")));
  EXPECT_EQ(j["data"]["t"].size(), 5u);
  EXPECT_DOUBLE_EQ(j["data"]["t"].back().get<double>(), 2.0);
  // maximally mixed start: infinite temperature, written as null
  EXPECT_TRUE(j["data"]["T1"][0].is_null());
}

TEST_F(CliTest, EvolveNeedsFinalTime) {
  EXPECT_EQ(run({"evolve", "--config", write("e.ini", kModelI)}).code, 1);
}

TEST_F(CliTest, CustomModelFromSections) {
  const std::string text =
      "[model]\ntag = custom\n"
      "[particle.1]\nenergies = 0, 1\n"
      "[particle.2]\nenergies = 0, 1, 2.5\n"
      "[channel.a]\nparticle = 1\nkind = full_reset\ntemperature = 1\nrate = 1e-3\n"
      "[channel.b]\nparticle = 2\nkind = transition_jump\ntransition = 0, 2\ntemperature = 2\nrate = 1e-3\n"
      "[channel.c]\nparticle = 2\nkind = transition_jump\ntransition = 0, 1\ntemperature = 2\nrate = 1e-3\n";
  const auto r = run({"steady", "--config", write("c.ini", text)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(value_after(r.out, "T1"), 1.0, 1e-9);
}

TEST_F(CliTest, ValidatePassesAndFaultIsCaught) {
  const auto ok = run({"validate", "--no-dynamics"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);

  const auto bad = run({"validate", "--no-dynamics", "--inject-fault", "commutator_sign"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.out.find("FAIL energy_balance"), std::string::npos);
  EXPECT_EQ(run({"validate", "--inject-fault", "nope"}).code, 1);
}

TEST_F(CliTest, ValidateToleranceLoosensEveryThreshold) {
  const auto r = run({"validate", "--no-dynamics", "--tol", "1e-3"});
  std::istringstream is(r.out);
  std::string line;
  int checks = 0;
  while (std::getline(is, line)) {
    const auto pos = line.find("threshold=");
    if (pos == std::string::npos) continue;
    EXPECT_GE(std::stod(line.substr(pos + 10)), 1e-3) << line;
    ++checks;
  }
  EXPECT_GT(checks, 10);
}

TEST(RunConfig, OverridesSplitAtLastDot) {
  cli::ConfigFile c;
  cli::apply_overrides(c, {"channel.a.rate=0.5", "params.Th = 3"});
  EXPECT_EQ(c["channel.a"]["rate"], "0.5");
  EXPECT_EQ(c["params"]["Th"], "3");
  EXPECT_THROW(cli::apply_overrides(c, {"novalue"}), cli::UsageError);
  EXPECT_THROW(cli::apply_overrides(c, {"nodot=3"}), cli::UsageError);
}

TEST(RunConfig, NumbersAndLists) {
  EXPECT_DOUBLE_EQ(cli::parse_double(" 2.5e-3 ", "x"), 2.5e-3);
  EXPECT_THROW(cli::parse_double("2.5q", "x"), cli::UsageError);
  EXPECT_EQ(cli::parse_list("1, 2,3", "x"), (std::vector<double>{1, 2, 3}));
  EXPECT_THROW(cli::parse_list("", "x"), cli::UsageError);
}
