#ifndef TVGAME_ENVIRONMENTS_H_
#define TVGAME_ENVIRONMENTS_H_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvgame/matrix_game.h"

namespace tvgame {

// A replayable sequence of payoff matrices A_1..A_T. MatrixAt(t) is a pure
// function of (schedule, t), so two passes over the same schedule see
// bit-identical matrices.
class GameSchedule {
 public:
  enum class Kind { kStationary, kTwoPhase, kDriftingEpochs, kPeriodicDrift, kFile };

  // A_t = matrix for every t.
  static GameSchedule Stationary(PayoffMatrix matrix, long horizon);

  // [[1,-1],[-1,1]] for t <= T/2, then [[1,-1],[1,-1]].
  static GameSchedule TwoPhase(long horizon);

  // Four epochs with boundaries floor(kT/4). The first T0 = 2 floor(sqrt T)
  // rounds of each epoch alternate A0 + (-1)^t E; the rest play
  // (1 - (-1)^t T^{-1/4}) A1, clamped into [-1, 1]. Here
  //   A0 = [[1/2, 1/2], [-1/2, -1/2]], A1 = [[-1, -1], [1, 1]],
  //   E  = [[1/3, -1/2], [1/3, -1/2]].
  // Designed so that P_T and V_T grow like sqrt(T) and W_T like T^{3/4}.
  // Requires T >= 64 and every epoch longer than T0.
  static GameSchedule DriftingEpochs(long horizon);

  // A_t = scales[(t - 1) mod scales.size()] * matrix, e.g. scales {1, -1}
  // alternates between A and -A.
  static GameSchedule PeriodicDrift(PayoffMatrix matrix,
                                    std::vector<double> scales, long horizon);

  struct Step {
    PayoffMatrix matrix;
    long repeat;
  };
  // Piecewise-constant schedule; the steps must cover exactly T rounds.
  static GameSchedule FromSteps(std::vector<Step> steps, long horizon);
  // {"T": int, "steps": [{"matrix": {...}, "repeat": int}, ...]}; a missing
  // "repeat" means 1.
  static GameSchedule FromJson(const nlohmann::json& j);
  static GameSchedule FromFile(const std::string& path);
  nlohmann::json StepsToJson() const;

  // 1 <= t <= T, otherwise std::out_of_range.
  PayoffMatrix MatrixAt(long t) const;
  // True when MatrixAt(t) had entries clamped back into [-1, 1].
  bool ClampedAt(long t) const;

  long horizon() const { return horizon_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Kind kind() const { return kind_; }
  // Length of the alternating prefix of each epoch (drifting epochs only).
  long epoch_prefix() const { return epoch_prefix_; }

 private:
  GameSchedule(Kind kind, long horizon, std::size_t rows, std::size_t cols);

  PayoffMatrix RawAt(long t, bool* clamped) const;
  long EpochStart(int k) const;

  Kind kind_;
  long horizon_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<PayoffMatrix> matrices_;
  std::vector<double> scales_;
  std::vector<long> step_ends_;  // cumulative round counts for kFile
  long epoch_prefix_ = 0;
};

// The column player's best response to x_t under A_t (lowest index on ties).
MixedStrategy AdversarialOpponent(const MixedStrategy& x, const PayoffMatrix& a);

}  // namespace tvgame

#endif  // TVGAME_ENVIRONMENTS_H_
