#include "tvgame/environments.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "tvgame/errors.h"

namespace tvgame {
namespace {

bool BitEqual(const PayoffMatrix& a, const PayoffMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.entries().data(), b.entries().data(),
                     a.entries().size() * sizeof(double)) == 0;
}

TEST(ScheduleTest, TwoPhase) {
  const GameSchedule s = GameSchedule::TwoPhase(10);
  const PayoffMatrix first{{1, -1}, {-1, 1}};
  const PayoffMatrix second{{1, -1}, {1, -1}};
  for (long t = 1; t <= 5; ++t) EXPECT_EQ(s.MatrixAt(t), first);
  for (long t = 6; t <= 10; ++t) EXPECT_EQ(s.MatrixAt(t), second);
  EXPECT_THROW(s.MatrixAt(0), std::out_of_range);
  EXPECT_THROW(s.MatrixAt(11), std::out_of_range);
}

TEST(ScheduleTest, TwoPhaseCumulativeMatrix) {
  const long T = 1000;
  const GameSchedule s = GameSchedule::TwoPhase(T);
  std::vector<double> sum(4, 0.0);
  for (long t = 1; t <= T; ++t) {
    const PayoffMatrix a = s.MatrixAt(t);
    for (int k = 0; k < 4; ++k) sum[k] += a.entries()[k];
  }
  EXPECT_EQ(sum, (std::vector<double>{1000, -1000, 0, 0}));
}

TEST(ScheduleTest, Stationary) {
  const PayoffMatrix a{{0.1, -0.4, 1}, {0, 0.3, -1}};
  const GameSchedule s = GameSchedule::Stationary(a, 7);
  for (long t = 1; t <= 7; ++t) EXPECT_TRUE(BitEqual(s.MatrixAt(t), a));
  EXPECT_EQ(s.rows(), 2u);
  EXPECT_EQ(s.cols(), 3u);
}

TEST(ScheduleTest, DriftingEpochsStructure) {
  const long T = 10000;
  const GameSchedule s = GameSchedule::DriftingEpochs(T);
  EXPECT_EQ(s.epoch_prefix(), 200);
  const PayoffMatrix plus{{5.0 / 6.0, 0.0}, {-1.0 / 6.0, -1.0}};
  const PayoffMatrix minus{{1.0 / 6.0, 1.0}, {-5.0 / 6.0, 0.0}};
  const double shrink = std::pow(1e4, -0.25);  // 0.1
  for (long start : {0L, 2500L, 5000L, 7500L}) {
    for (long t = start + 1; t <= start + 200; ++t) {
      const PayoffMatrix a = s.MatrixAt(t);
      const PayoffMatrix& expect = t % 2 == 0 ? plus : minus;
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(a.entries()[k], expect.entries()[k], 1e-15);
      EXPECT_FALSE(s.ClampedAt(t));
    }
    // Second phase: (1 - T^{-1/4}) A1 on even rounds, clamped A1 on odd rounds.
    const PayoffMatrix even = s.MatrixAt(start + 202);
    EXPECT_NEAR(even(0, 0), -(1.0 - shrink), 1e-15);
    EXPECT_NEAR(even(1, 1), 1.0 - shrink, 1e-15);
    EXPECT_FALSE(s.ClampedAt(start + 202));
    EXPECT_EQ(s.MatrixAt(start + 201), (PayoffMatrix{{-1, -1}, {1, 1}}));
    EXPECT_TRUE(s.ClampedAt(start + 201));
    EXPECT_EQ(s.MatrixAt(start + 2500), even);
  }
}

TEST(ScheduleTest, DriftingEpochsPrefixAtTwoMillion) {
  EXPECT_EQ(GameSchedule::DriftingEpochs(2000000).epoch_prefix(), 2828);
}

TEST(ScheduleTest, DriftingEpochsUnevenBoundaries) {
  // T = 1001: epochs start after floor(kT/4) = 0, 250, 500, 750.
  const GameSchedule s = GameSchedule::DriftingEpochs(1001);
  const long prefix = s.epoch_prefix();
  EXPECT_EQ(prefix, 62);
  EXPECT_NEAR(s.MatrixAt(251)(0, 1), 1.0, 1e-15);       // odd, first phase: A0 - E
  EXPECT_NEAR(s.MatrixAt(250 + prefix + 2)(0, 0), -(1.0 - std::pow(1001.0, -0.25)), 1e-15);
  EXPECT_NEAR(s.MatrixAt(1001)(0, 0), -1.0, 0.0);
}

TEST(ScheduleTest, DriftingEpochsRejectsShortHorizons) {
  EXPECT_THROW(GameSchedule::DriftingEpochs(63), std::invalid_argument);
  // T = 64: epochs of 16 rounds cannot hold a prefix of 16.
  EXPECT_THROW(GameSchedule::DriftingEpochs(64), std::invalid_argument);
  EXPECT_NO_THROW(GameSchedule::DriftingEpochs(100));
}

TEST(ScheduleTest, DriftingEpochsEquilibria) {
  const GameSchedule s = GameSchedule::DriftingEpochs(10000);
  const NashSolution even = SolveNash(s.MatrixAt(2));
  EXPECT_EQ(even.x_star, MixedStrategy::Vertex(2, 1));
  EXPECT_EQ(even.y_star, MixedStrategy::Vertex(2, 0));
  const NashSolution odd = SolveNash(s.MatrixAt(1));
  EXPECT_EQ(odd.x_star, MixedStrategy::Vertex(2, 1));
  EXPECT_EQ(odd.y_star, MixedStrategy::Vertex(2, 1));
}

TEST(ScheduleTest, ReplayIsBitExact) {
  const GameSchedule s = GameSchedule::DriftingEpochs(4096);
  for (long t = 1; t <= 4096; ++t) ASSERT_TRUE(BitEqual(s.MatrixAt(t), s.MatrixAt(t)));
  const GameSchedule copy = GameSchedule::DriftingEpochs(4096);
  for (long t = 1; t <= 4096; ++t) ASSERT_TRUE(BitEqual(s.MatrixAt(t), copy.MatrixAt(t)));
}

TEST(ScheduleTest, EntriesStayBounded) {
  for (long T : {100L, 4096L, 12345L}) {
    const GameSchedule s = GameSchedule::DriftingEpochs(T);
    for (long t = 1; t <= T; ++t) EXPECT_LE(s.MatrixAt(t).MaxNorm(), 1.0);
  }
}

TEST(ScheduleTest, PeriodicDrift) {
  const PayoffMatrix a{{0.5, -1}, {0.25, 0}};
  const GameSchedule s = GameSchedule::PeriodicDrift(a, {1, -1}, 6);
  EXPECT_EQ(s.MatrixAt(1), a);
  EXPECT_EQ(s.MatrixAt(2), (PayoffMatrix{{-0.5, 1}, {-0.25, 0}}));
  EXPECT_EQ(s.MatrixAt(5), a);
  EXPECT_THROW(GameSchedule::PeriodicDrift(a, {}, 6), std::invalid_argument);
  EXPECT_THROW(GameSchedule::PeriodicDrift(a, {2.0}, 6), std::invalid_argument);
}

TEST(ScheduleTest, StepsFromJson) {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "T": 5,
    "steps": [{"matrix": [[1, 0], [0, 1]], "repeat": 2},
              {"matrix": [[0, 1], [1, 0]]},
              {"matrix": [[0.5, 0.5], [0, 0]], "repeat": 2}]})");
  const GameSchedule s = GameSchedule::FromJson(j);
  EXPECT_EQ(s.MatrixAt(2), (PayoffMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(s.MatrixAt(3), (PayoffMatrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(s.MatrixAt(5), (PayoffMatrix{{0.5, 0.5}, {0, 0}}));
  const GameSchedule again = GameSchedule::FromJson(s.StepsToJson());
  for (long t = 1; t <= 5; ++t) EXPECT_EQ(again.MatrixAt(t), s.MatrixAt(t));
}

TEST(ScheduleTest, StepsErrors) {
  EXPECT_THROW(GameSchedule::FromJson(nlohmann::json::parse(
                   R"({"T": 3, "steps": [{"matrix": [[1]], "repeat": 2}]})")),
               ConfigError);
  EXPECT_THROW(GameSchedule::FromJson(nlohmann::json::parse(
                   R"({"T": 2, "steps": [{"matrix": [[1]]}, {"matrix": [[1, 0]]}]})")),
               DimensionError);
  EXPECT_THROW(GameSchedule::FromJson(nlohmann::json::parse(
                   R"({"T": 1, "steps": [{"matrix": [[1.5]]}]})")),
               ConfigError);
  EXPECT_THROW(GameSchedule::FromJson(nlohmann::json::parse(R"({"steps": []})")),
               ConfigError);
  EXPECT_THROW(GameSchedule::FromFile("/nonexistent/schedule.json"), ConfigError);
}

TEST(ScheduleTest, FromFile) {
  const auto path = std::filesystem::temp_directory_path() / "tvgame_steps_test.json";
  {
    std::ofstream out(path);
    out << R"({"T": 3, "steps": [{"matrix": [[0.2, -0.2]], "repeat": 3}]})";
  }
  const GameSchedule s = GameSchedule::FromFile(path.string());
  EXPECT_EQ(s.horizon(), 3);
  EXPECT_EQ(s.MatrixAt(3), (PayoffMatrix{{0.2, -0.2}}));
  std::filesystem::remove(path);
}

TEST(AdversaryTest, BestResponseExamples) {
  const PayoffMatrix a{{1, -1}, {-1, 1}};
  EXPECT_EQ(AdversarialOpponent(MixedStrategy::Vertex(2, 0), a), MixedStrategy::Vertex(2, 0));
  EXPECT_EQ(AdversarialOpponent(MixedStrategy::Uniform(2), a), MixedStrategy::Vertex(2, 0));
  const PayoffMatrix b{{5.0 / 6.0, 0}, {-1.0 / 6.0, -1}};
  EXPECT_EQ(AdversarialOpponent(MixedStrategy::Vertex(2, 1), b), MixedStrategy::Vertex(2, 0));
  EXPECT_THROW(AdversarialOpponent(MixedStrategy::Uniform(3), a), DimensionError);
}

}  // namespace
}  // namespace tvgame
