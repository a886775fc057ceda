#ifndef TVGAME_METRICS_H_
#define TVGAME_METRICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tvgame/environments.h"
#include "tvgame/matrix_game.h"

namespace tvgame {

// Memoizes SolveNash by exact matrix bytes. Schedules reuse a handful of
// distinct matrices, so a long run costs only a few LP solves.
class NashCache {
 public:
  const NashSolution& Solve(const PayoffMatrix& a);
  std::size_t size() const { return cache_.size(); }
  std::size_t misses() const { return misses_; }

 private:
  std::unordered_map<std::string, NashSolution> cache_;
  std::size_t misses_ = 0;
};

// Running performance and non-stationarity measures for one trajectory.
//
//   Reg^x     = sum x_t^T A_t y_t - min_i (sum A_t y_t)_i
//   Reg^y     = max_j (sum x_t^T A_t)_j - sum x_t^T A_t y_t
//   Dual-Gap  = sum_t [max_j (x_t^T A_t)_j - min_i (A_t y_t)_i]
//   DynNE-Reg = |sum x_t^T A_t y_t - sum_t value(A_t)|
//   NE-Reg    = |sum x_t^T A_t y_t - t * value(sum A_s / t)|
//   P_t       = sum_{s>=2} ||x*_s - x*_{s-1}||_1 + ||y*_s - y*_{s-1}||_1
//   V_t       = sum_{s>=2} ||A_s - A_{s-1}||_inf^2
//   W_t       = sum_{s<=t} ||A_s - Abar||_inf   (only with a reference Abar)
//
// Equilibria are the canonical LP solutions, so P_t is the path length of
// one particular selection and upper-bounds the minimum over selections.
class MetricsAccumulator {
 public:
  MetricsAccumulator(std::size_t rows, std::size_t cols,
                     std::optional<PayoffMatrix> average = std::nullopt);

  void Step(const PayoffMatrix& a, const MixedStrategy& x, const MixedStrategy& y);

  long rounds() const { return rounds_; }
  double cumulative_payoff() const { return payoff_sum_; }
  double regret_x() const;
  double regret_y() const;
  double dual_gap() const { return gap_sum_; }
  double dynamic_ne_regret() const;
  // Solves the rescaled cumulative game; costs one LP per call.
  double ne_regret() const;
  double cumulative_value() const { return value_sum_; }
  double path_length() const { return path_length_; }
  double variation() const { return variation_; }
  // NaN when no reference average was supplied.
  double deviation() const;
  double last_gap() const { return last_gap_; }
  PayoffMatrix cumulative_matrix() const;
  const NashCache& nash_cache() const { return cache_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::optional<PayoffMatrix> average_;
  NashCache cache_;
  long rounds_ = 0;
  double payoff_sum_ = 0.0;
  std::vector<double> loss_sum_;
  std::vector<double> reward_sum_;
  std::vector<double> matrix_sum_entries_;
  double value_sum_ = 0.0;
  double gap_sum_ = 0.0;
  double last_gap_ = 0.0;
  double path_length_ = 0.0;
  double variation_ = 0.0;
  double deviation_ = 0.0;
  std::optional<PayoffMatrix> prev_matrix_;
  std::optional<NashSolution> prev_nash_;
};

struct NonstationarityMeasures {
  double path_length;  // P_T
  double variation;    // V_T
  double deviation;    // W_T
  double combined;     // Q_T = V_T + min{P_T, W_T}
};

// Time average (1/T) sum_t A_t of a schedule.
PayoffMatrix AverageMatrix(const GameSchedule& schedule);

// Two passes over the schedule: the first computes Abar, the second
// accumulates all three measures.
NonstationarityMeasures MeasureSchedule(const GameSchedule& schedule);

}  // namespace tvgame

#endif  // TVGAME_METRICS_H_
