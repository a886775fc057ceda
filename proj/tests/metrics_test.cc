#include "tvgame/metrics.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "tvgame/support_enumeration.h"

namespace tvgame {
namespace {

MixedStrategy RandomStrategy(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(k);
  double s = 0.0;
  for (double& v : w) s += (v = u(rng) + 1e-3);
  for (double& v : w) v /= s;
  return ProjectOntoSimplex(w);
}

TEST(MetricsTest, SingleRoundRegret) {
  MetricsAccumulator acc(2, 2);
  acc.Step(PayoffMatrix{{1, -1}, {-1, 1}}, MixedStrategy::Vertex(2, 0),
           MixedStrategy::Vertex(2, 0));
  EXPECT_DOUBLE_EQ(acc.regret_x(), 2.0);
  EXPECT_DOUBLE_EQ(acc.regret_y(), 0.0);
  EXPECT_DOUBLE_EQ(acc.dual_gap(), 2.0);
  EXPECT_DOUBLE_EQ(acc.path_length(), 0.0);
  EXPECT_DOUBLE_EQ(acc.variation(), 0.0);
  EXPECT_DOUBLE_EQ(acc.ne_regret(), 1.0);
  EXPECT_DOUBLE_EQ(acc.dynamic_ne_regret(), 1.0);
  EXPECT_TRUE(std::isnan(acc.deviation()));
}

TEST(MetricsTest, StationaryEquilibriumPlay) {
  const PayoffMatrix a{{0.5, -1}, {-0.3, 0.8}};
  const NashSolution ne = SolveNash(a);
  MetricsAccumulator acc(2, 2, a);
  for (int t = 0; t < 100; ++t) acc.Step(a, ne.x_star, ne.y_star);
  EXPECT_NEAR(acc.dual_gap(), 0.0, 1e-12);
  EXPECT_NEAR(acc.dynamic_ne_regret(), 0.0, 1e-12);
  EXPECT_NEAR(acc.ne_regret(), 0.0, 1e-10);
  EXPECT_DOUBLE_EQ(acc.path_length(), 0.0);
  EXPECT_DOUBLE_EQ(acc.variation(), 0.0);
  EXPECT_DOUBLE_EQ(acc.deviation(), 0.0);
  EXPECT_EQ(acc.nash_cache().misses(), 1u);
}

TEST(MetricsTest, TwoPhaseEquilibriumPlay) {
  const long T = 1000;
  const GameSchedule s = GameSchedule::TwoPhase(T);
  MetricsAccumulator acc(2, 2, AverageMatrix(s));
  NashCache cache;
  for (long t = 1; t <= T; ++t) {
    const PayoffMatrix a = s.MatrixAt(t);
    const NashSolution& ne = cache.Solve(a);
    acc.Step(a, ne.x_star, ne.y_star);
  }
  EXPECT_EQ(acc.dynamic_ne_regret(), 0.0);
  EXPECT_EQ(acc.ne_regret(), 500.0);
  EXPECT_EQ(acc.cumulative_matrix(), PayoffMatrix::Unbounded(2, 2, {1000, -1000, 0, 0}));
}

TEST(MetricsTest, StationaryVertexPlayWithPureEquilibrium) {
  // Row 1 dominates for the minimizer and column 0 for the maximizer.
  const PayoffMatrix a{{0.9, 0.7}, {0.2, -0.5}};
  MetricsAccumulator acc(2, 2);
  for (int t = 0; t < 10; ++t) acc.Step(a, MixedStrategy::Vertex(2, 1), MixedStrategy::Vertex(2, 0));
  EXPECT_DOUBLE_EQ(acc.regret_x(), 0.0);
  EXPECT_DOUBLE_EQ(acc.regret_y(), 0.0);
}

TEST(MetricsTest, NashCacheHitsOnRepeatedMatrices) {
  NashCache cache;
  const PayoffMatrix a{{1, -1}, {-1, 1}};
  const NashSolution& first = cache.Solve(a);
  const NashSolution& second = cache.Solve(PayoffMatrix{{1, -1}, {-1, 1}});
  EXPECT_EQ(&first, &second);
  EXPECT_EQ(cache.misses(), 1u);
  cache.Solve(PayoffMatrix{{1, -1}, {1, -1}});
  EXPECT_EQ(cache.size(), 2u);
}

TEST(MetricsTest, DimensionDrift) {
  MetricsAccumulator acc(2, 2);
  EXPECT_THROW(acc.Step(PayoffMatrix{{1, 0, 0}, {0, 1, 0}}, MixedStrategy::Uniform(2),
                        MixedStrategy::Uniform(3)),
               DimensionError);
}

// Re-derives every measure at every prefix from the raw history without
// running sums; equilibria come from support enumeration instead of the LP.
TEST(MetricsTest, MatchesBruteForceRecomputation) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<int> dims(2, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = dims(rng), n = dims(rng);
    const long T = 1 + trial % 20;
    // A few distinct matrices reused so the cache and the zero-variation
    // branches are both exercised.
    std::vector<PayoffMatrix> pool;
    for (int k = 0; k < 3; ++k) {
      std::vector<double> e(m * n);
      for (double& v : e) v = entry(rng);
      pool.emplace_back(m, n, e);
    }
    std::vector<PayoffMatrix> as;
    std::vector<MixedStrategy> xs, ys;
    std::uniform_int_distribution<int> pick(0, 2);
    for (long t = 0; t < T; ++t) {
      as.push_back(pool[pick(rng)]);
      xs.push_back(RandomStrategy(rng, m));
      ys.push_back(RandomStrategy(rng, n));
    }
    std::vector<double> abar(m * n, 0.0);
    for (const PayoffMatrix& a : as) {
      for (std::size_t k = 0; k < m * n; ++k) abar[k] += a.entries()[k] / T;
    }

    MetricsAccumulator acc(m, n, PayoffMatrix::Unbounded(m, n, abar));
    for (long t = 1; t <= T; ++t) {
      acc.Step(as[t - 1], xs[t - 1], ys[t - 1]);

      double payoff = 0.0, gap = 0.0, values = 0.0, path = 0.0, var = 0.0, dev = 0.0;
      std::vector<double> loss(m, 0.0), reward(n, 0.0), sum(m * n, 0.0);
      for (long s = 0; s < t; ++s) {
        const PayoffMatrix& a = as[s];
        std::vector<double> ls(m, 0.0), rs(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            payoff += xs[s][i] * a(i, j) * ys[s][j];
            ls[i] += a(i, j) * ys[s][j];
            rs[j] += xs[s][i] * a(i, j);
            sum[i * n + j] += a(i, j);
          }
        }
        for (std::size_t i = 0; i < m; ++i) loss[i] += ls[i];
        for (std::size_t j = 0; j < n; ++j) reward[j] += rs[j];
        gap += *std::max_element(rs.begin(), rs.end()) - *std::min_element(ls.begin(), ls.end());
        const auto eq = EnumerateSupports(a);
        ASSERT_TRUE(eq.has_value());
        values += eq->value;
        double d = 0.0;
        for (std::size_t k = 0; k < m * n; ++k) d = std::max(d, std::abs(a.entries()[k] - abar[k]));
        dev += d;
        if (s > 0) {
          const PayoffMatrix& b = as[s - 1];
          double dd = 0.0;
          for (std::size_t k = 0; k < m * n; ++k) dd = std::max(dd, std::abs(a.entries()[k] - b.entries()[k]));
          var += dd * dd;
          // The LP's canonical equilibria define P_t; repeated matrices
          // contribute nothing, distinct ones their L1 movement.
          const NashSolution na = SolveNash(a), nb = SolveNash(b);
          path += L1Distance(na.x_star.weights(), nb.x_star.weights()) +
                  L1Distance(na.y_star.weights(), nb.y_star.weights());
        }
      }
      std::vector<double> avg(sum);
      for (double& v : avg) v /= static_cast<double>(t);
      const auto cum = EnumerateSupports(PayoffMatrix::Unbounded(m, n, avg));
      ASSERT_TRUE(cum.has_value());

      EXPECT_NEAR(acc.cumulative_payoff(), payoff, 1e-9);
      EXPECT_NEAR(acc.regret_x(), payoff - *std::min_element(loss.begin(), loss.end()), 1e-9);
      EXPECT_NEAR(acc.regret_y(), *std::max_element(reward.begin(), reward.end()) - payoff, 1e-9);
      EXPECT_NEAR(acc.dual_gap(), gap, 1e-9);
      EXPECT_NEAR(acc.dynamic_ne_regret(), std::abs(payoff - values), 1e-9);
      EXPECT_NEAR(acc.ne_regret(), std::abs(payoff - t * cum->value), 1e-9);
      EXPECT_NEAR(acc.path_length(), path, 1e-9);
      EXPECT_NEAR(acc.variation(), var, 1e-9);
      EXPECT_NEAR(acc.deviation(), dev, 1e-9);
    }
  }
}

TEST(MetricsTest, OrderingsOnRandomPlay) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  MetricsAccumulator acc(3, 2);
  double prev_gap = 0.0;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> e(6);
    for (double& v : e) v = entry(rng);
    acc.Step(PayoffMatrix(3, 2, e), RandomStrategy(rng, 3), RandomStrategy(rng, 2));
    EXPECT_LE(acc.regret_x(), acc.dual_gap() + 1e-12);
    EXPECT_LE(acc.regret_y(), acc.dual_gap() + 1e-12);
    EXPECT_LE(acc.dynamic_ne_regret(), acc.dual_gap() + 1e-12);
    EXPECT_GE(acc.dual_gap(), prev_gap);
    EXPECT_LE(std::abs(acc.cumulative_payoff()), t + 1.0);
    prev_gap = acc.dual_gap();
  }
}

TEST(MeasureScheduleTest, StationaryIsZero) {
  const NonstationarityMeasures m =
      MeasureSchedule(GameSchedule::Stationary(PayoffMatrix{{1, -1}, {-1, 1}}, 50));
  EXPECT_EQ(m.path_length, 0.0);
  EXPECT_EQ(m.variation, 0.0);
  EXPECT_EQ(m.deviation, 0.0);
  EXPECT_EQ(m.combined, 0.0);
}

TEST(MeasureScheduleTest, AlternatingSignKeepsEquilibrium) {
  // A and -A share the unique uniform equilibrium; the matrix swings by 2.
  const long T = 1000;
  const NonstationarityMeasures m = MeasureSchedule(
      GameSchedule::PeriodicDrift(PayoffMatrix{{1, -1}, {-1, 1}}, {1, -1}, T));
  EXPECT_NEAR(m.path_length, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(m.variation, 4.0 * (T - 1));
  EXPECT_DOUBLE_EQ(m.deviation, static_cast<double>(T));
  EXPECT_NEAR(m.combined, m.variation, 1e-9);
}

TEST(MeasureScheduleTest, TwoPhase) {
  const long T = 100;
  const NonstationarityMeasures m = MeasureSchedule(GameSchedule::TwoPhase(T));
  // One switch: the matrix moves by 2 in the max norm; Abar = [[1,-1],[0,0]].
  EXPECT_DOUBLE_EQ(m.variation, 4.0);
  EXPECT_DOUBLE_EQ(m.deviation, static_cast<double>(T));
  const NashSolution a = SolveNash(PayoffMatrix{{1, -1}, {-1, 1}});
  const NashSolution b = SolveNash(PayoffMatrix{{1, -1}, {1, -1}});
  EXPECT_DOUBLE_EQ(m.path_length, L1Distance(a.x_star.weights(), b.x_star.weights()) +
                                      L1Distance(a.y_star.weights(), b.y_star.weights()));
}

TEST(MeasureScheduleTest, VariationBoundedByDeviation) {
  for (long T : {100L, 1000L, 10000L}) {
    const NonstationarityMeasures m = MeasureSchedule(GameSchedule::DriftingEpochs(T));
    EXPECT_LE(m.variation, 4.0 * m.deviation);
  }
}

TEST(MeasureScheduleTest, DriftingEpochsOrders) {
  for (long T : {10000L, 100000L}) {
    const NonstationarityMeasures m = MeasureSchedule(GameSchedule::DriftingEpochs(T));
    const double root = std::sqrt(static_cast<double>(T));
    EXPECT_GE(m.path_length / root, 0.1);
    EXPECT_LE(m.path_length / root, 20.0);
    EXPECT_GE(m.variation / root, 0.1);
    EXPECT_LE(m.variation / root, 20.0);
    EXPECT_GE(m.deviation / std::pow(T, 0.75), 0.1);
    EXPECT_LE(m.deviation / std::pow(T, 0.75), 10.0);
  }
}

}  // namespace
}  // namespace tvgame
