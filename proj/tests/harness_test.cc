#include "tvgame/harness.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "tvgame/errors.h"
#include "tvgame/svg_plot.h"

namespace tvgame {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tvgame_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(ConfigTest, DefaultsAndOverrides) {
  const RunConfig c = ParseRunConfig(nlohmann::json::parse(R"({
    "schedule": {"kind": "two_phase"},
    "x": {"type": "single_base", "kind": "optimistic_ogd", "eta": 0.05},
    "y": "nash_oracle",
    "T": 500, "stride": 7, "c": 0.25, "plot": false, "seed": 3})"));
  EXPECT_EQ(c.horizon, 500);
  EXPECT_EQ(c.stride, 7);
  EXPECT_EQ(c.x.type, PlayerSpec::Type::kSingleBase);
  EXPECT_EQ(c.x.kind, LearnerKind::kOptimisticOgd);
  EXPECT_DOUBLE_EQ(c.x.eta, 0.05);
  EXPECT_EQ(c.y.type, PlayerSpec::Type::kNashOracle);
  EXPECT_DOUBLE_EQ(c.c, 0.25);
  EXPECT_FALSE(c.plot);
  EXPECT_EQ(c.seed, 3u);
  const RunConfig again = ParseRunConfig(ToJson(c));
  EXPECT_EQ(ToJson(again), ToJson(c));
}

TEST(ConfigTest, Rejections) {
  auto parse = [](const char* text) { return ParseRunConfig(nlohmann::json::parse(text)); };
  EXPECT_THROW(parse(R"({"T": 1})"), ConfigError);
  EXPECT_THROW(parse(R"({"stride": 0})"), ConfigError);
  EXPECT_THROW(parse(R"({"bogus": 1})"), ConfigError);
  EXPECT_THROW(parse(R"({"T": "ten"})"), ConfigError);
  EXPECT_THROW(parse(R"({"x": {"type": "single_base"}})"), ConfigError);
  EXPECT_THROW(parse(R"({"x": {"type": "two_layer", "kind": "sgd"}})"), ConfigError);
  EXPECT_THROW(parse(R"({"x": "wizard"})"), ConfigError);
  EXPECT_THROW(parse(R"({"c": -1})"), ConfigError);
  EXPECT_THROW(parse(R"({"schedule": {"matrix": [[1]]}})"), ConfigError);
  EXPECT_THROW(parse(R"([1, 2])"), ConfigError);
  EXPECT_THROW(LoadRunConfig("/nonexistent/config.json"), ConfigError);
}

TEST(ConfigTest, AdversarialOpponentScheduleFixesColumnPlayer) {
  const RunConfig c = ParseRunConfig(nlohmann::json::parse(
      R"({"schedule": {"kind": "adversarial_opponent", "base": {"kind": "appendix_g"}}})"));
  EXPECT_EQ(c.y.type, PlayerSpec::Type::kAdversarialBestResponse);
  EXPECT_EQ(BuildSchedule(c.schedule, 1000).kind(), GameSchedule::Kind::kDriftingEpochs);
  EXPECT_THROW(ParseRunConfig(nlohmann::json::parse(
                   R"({"schedule": {"kind": "adversarial_opponent", "base": {"kind": "two_phase"}},
                       "y": "two_layer"})")),
               ConfigError);
}

TEST(BuildScheduleTest, Kinds) {
  EXPECT_EQ(BuildSchedule({{"kind", "two_phase"}}, 10).kind(), GameSchedule::Kind::kTwoPhase);
  EXPECT_EQ(BuildSchedule({{"kind", "drifting_epochs"}}, 1000).kind(),
            GameSchedule::Kind::kDriftingEpochs);
  const GameSchedule st = BuildSchedule(
      nlohmann::json::parse(R"({"kind": "stationary",
                                "matrix": {"rows": 1, "cols": 2, "entries": [[0.5, -0.5]]}})"),
      4);
  EXPECT_EQ(st.MatrixAt(4), (PayoffMatrix{{0.5, -0.5}}));
  const GameSchedule pd = BuildSchedule(
      nlohmann::json::parse(R"({"kind": "periodic_drift", "matrix": [[1, 0]], "scales": [1, 0.5]})"), 4);
  EXPECT_EQ(pd.MatrixAt(2), (PayoffMatrix{{0.5, 0}}));
  const GameSchedule file = BuildSchedule(
      nlohmann::json::parse(R"({"kind": "file", "steps": [{"matrix": [[1]], "repeat": 3}]})"), 3);
  EXPECT_EQ(file.kind(), GameSchedule::Kind::kFile);
  EXPECT_THROW(BuildSchedule(nlohmann::json::parse(
                                 R"({"kind": "file", "steps": [{"matrix": [[1]], "repeat": 3}]})"),
                             4),
               ConfigError);
  EXPECT_THROW(BuildSchedule({{"kind", "appendix_g"}}, 64), ConfigError);
  EXPECT_THROW(BuildSchedule({{"kind", "mystery"}}, 10), ConfigError);
}

TEST(PlayerTest, Construction) {
  EXPECT_THROW(MakePlayer(PlayerSpec::Adversary(), Role::kRow, 2, 10), ConfigError);
  EXPECT_THROW(MakePlayer(PlayerSpec::Fixed({0.5, 0.5}), Role::kRow, 3, 10), DimensionError);
  EXPECT_THROW(MakePlayer(PlayerSpec::Fixed({0.7, 0.7}), Role::kRow, 2, 10), ConfigError);
  auto p = MakePlayer(PlayerSpec::Fixed({0.25, 0.75}), Role::kRow, 2, 10);
  EXPECT_TRUE(std::isnan(p->epsilon()));
  const PayoffMatrix a{{1, -1}, {-1, 1}};
  EXPECT_DOUBLE_EQ(p->Decide(RoundContext{&a, nullptr})[1], 0.75);
}

TEST(SimulateTest, NashOracleOnTwoPhase) {
  const long T = 1000;
  const RunResult r = Simulate(GameSchedule::TwoPhase(T), PlayerSpec::NashOracle(),
                               PlayerSpec::NashOracle(), 100);
  EXPECT_EQ(r.final_row().dyn_ne_reg, 0.0);
  EXPECT_EQ(r.final_row().ne_reg, 500.0);
  EXPECT_TRUE(r.invariants.holds());
  EXPECT_EQ(r.distinct_matrices, 2u);
}

TEST(SimulateTest, RowSampling) {
  const RunResult r = Simulate(GameSchedule::TwoPhase(1050), PlayerSpec::NashOracle(),
                               PlayerSpec::NashOracle(), 100);
  ASSERT_EQ(r.rows.size(), 11u);
  EXPECT_EQ(r.rows.front().t, 100);
  EXPECT_EQ(r.rows[9].t, 1000);
  EXPECT_EQ(r.rows.back().t, 1050);
  const RunResult every = Simulate(GameSchedule::TwoPhase(10), PlayerSpec::NashOracle(),
                                   PlayerSpec::NashOracle(), 1);
  ASSERT_EQ(every.rows.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(every.rows[k].t, static_cast<long>(k + 1));
}

TEST(SimulateTest, MetaDiagnosticsPresentOnlyForTwoLayer) {
  const RunResult r = Simulate(GameSchedule::TwoPhase(200),
                               PlayerSpec::TwoLayer(LearnerKind::kHedgeFixedShare),
                               PlayerSpec::Fixed({0.5, 0.5}), 50);
  for (const TraceRow& row : r.rows) {
    EXPECT_GT(row.eps_x, 0.0);
    EXPECT_LE(row.eps_x, 0.25);
    EXPECT_GE(row.meta_entropy_x, 0.0);
    EXPECT_TRUE(std::isnan(row.eps_y));
    EXPECT_TRUE(std::isnan(row.meta_entropy_y));
  }
}

TEST(SimulateTest, AdversaryNeverLetsRowPlayerBeatValue) {
  // Against a best response, each round's payoff is the row's worst case,
  // which is at least the game value.
  const RunResult r = Simulate(GameSchedule::Stationary(PayoffMatrix{{1, -1}, {-1, 1}}, 500),
                               PlayerSpec::TwoLayer(LearnerKind::kHedgeFixedShare),
                               PlayerSpec::Adversary(), 500);
  EXPECT_TRUE(r.invariants.holds());
  EXPECT_LE(r.final_row().reg_y, 1e-9);
}

TEST(SimulateTest, ClampCountOnDriftingEpochs) {
  const long T = 1000;
  const GameSchedule s = GameSchedule::DriftingEpochs(T);
  const RunResult r = Simulate(s, PlayerSpec::NashOracle(), PlayerSpec::NashOracle(), 100);
  long expected = 0;
  for (long t = 1; t <= T; ++t) expected += s.ClampedAt(t) ? 1 : 0;
  EXPECT_EQ(r.clamped_rounds, expected);
  EXPECT_GT(expected, 0);
}

TEST(TraceCsvTest, HeaderAndFormat) {
  std::ostringstream out;
  WriteTraceCsv({TraceRow{5, 1.0 / 3.0, 2, 0, 0, 0, 0, 0, 0, NAN, 0.25, 0, 0}}, out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "t,reg_x,reg_y,dyn_ne_reg,ne_reg,dual_gap,p_t,v_t,w_t,eps_x,eps_y,"
            "meta_entropy_x,meta_entropy_y");
  EXPECT_NE(text.find("\n5,0.333333333333,2,"), std::string::npos);
  std::istringstream in(text);
  const std::vector<TraceRow> rows = ReadTraceCsv(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(std::isnan(rows[0].eps_x));
  EXPECT_DOUBLE_EQ(rows[0].eps_y, 0.25);
  std::ostringstream empty;
  WriteTraceCsv({}, empty);
  EXPECT_EQ(empty.str(), std::string(kTraceHeader) + "\n");
}

TEST(RunCommandTest, WritesFilesDeterministically) {
  const fs::path dir = ScratchDir("run");
  RunConfig c;
  c.schedule = {{"kind", "appendix_g"}};
  c.horizon = 2000;
  c.out_dir = dir.string();
  c.name = "first";
  const RunResult r = RunCommand(c);
  EXPECT_TRUE(r.invariants.holds());
  EXPECT_TRUE(fs::exists(dir / "first.csv"));
  EXPECT_TRUE(fs::exists(dir / "first.json"));
  EXPECT_TRUE(fs::exists(dir / "first.svg"));
  c.name = "second";
  RunCommand(c);
  EXPECT_EQ(Slurp(dir / "first.csv"), Slurp(dir / "second.csv"));
  const nlohmann::json summary = nlohmann::json::parse(Slurp(dir / "first.json"));
  EXPECT_EQ(summary.at("clamped_rounds").get<long>(), r.clamped_rounds);
  EXPECT_TRUE(summary.at("invariants").at("holds").get<bool>());
  fs::remove_all(dir);
}

TEST(SweepTest, SingleEtaGivesTwoRuns) {
  const fs::path dir = ScratchDir("sweep1");
  RunConfig c;
  c.schedule = {{"kind", "two_phase"}};
  c.horizon = 400;
  c.sweep_etas = {0.1};
  c.out_dir = dir.string();
  c.name = "s";
  const SweepResult s = RunSweep(c);
  EXPECT_EQ(s.single.size(), 1u);
  EXPECT_EQ(s.comparisons.size(), 3u);
  for (const MeasureComparison& m : s.comparisons) EXPECT_EQ(m.best_index, 0u);
  EXPECT_TRUE(fs::exists(dir / "s_eta_1.csv"));
  EXPECT_TRUE(fs::exists(dir / "s_two_layer.csv"));
  EXPECT_TRUE(fs::exists(dir / "s_summary.json"));
  EXPECT_TRUE(fs::exists(dir / "s.svg"));
  fs::remove_all(dir);
}

TEST(SweepTest, DefaultEtasArePool) {
  const fs::path dir = ScratchDir("sweep_pool");
  RunConfig c;
  c.schedule = {{"kind", "appendix_g"}};
  c.horizon = 1024;
  c.out_dir = dir.string();
  c.plot = false;
  const SweepResult s = RunSweep(c);
  ASSERT_EQ(s.single.size(), 6u);  // floor(10 / 2) + 1
  EXPECT_DOUBLE_EQ(s.single[0].eta, 1.0 / (4.0 * 32.0));
  EXPECT_TRUE(s.invariants_hold);
  for (const MeasureComparison& m : s.comparisons) {
    for (const SweepEntry& e : s.single) {
      EXPECT_LE(m.best_value, MeasureValue(e.final_row, m.measure));
    }
  }
  fs::remove_all(dir);
}

TEST(SvgTest, Deterministic) {
  std::vector<PlotPanel> panels{{"a", {{"one", {1, 2, 3}, {0, 1, 4}, true},
                                       {"two", {1, 2, 3}, {1, NAN, 2}, false}}},
                                {"b", {}}};
  const std::string svg = RenderSvg("title <x>", panels);
  EXPECT_EQ(svg, RenderSvg("title <x>", panels));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("title &lt;x&gt;"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace tvgame
