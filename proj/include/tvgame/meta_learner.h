#ifndef TVGAME_META_LEARNER_H_
#define TVGAME_META_LEARNER_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tvgame/learners.h"
#include "tvgame/matrix_game.h"

namespace tvgame {

// Geometric grid of base step sizes eta_i = 2^{i-1} / (L sqrt(T)),
// i = 1..N with N = floor(log2(T) / 2) + 1, and the meta constants derived
// from the base learner's DRVU parameters.
struct StepSizePool {
  long horizon;
  double c;                  // analysis constant entering L
  double lipschitz;          // L = max{4, sqrt(16 c beta), sqrt(8 c beta / gamma)}
  double lambda;             // stability-correction weight gamma * L / 2
  std::vector<double> etas;  // strictly increasing, etas[0] = 1 / (L sqrt(T))

  static StepSizePool Make(long horizon, const DrvuParams& params, double c);
  static std::size_t CountFor(long horizon);
};

// Two-layer learner for one player over Delta_k.
//
// Keeps N tuned base learners followed by k dummy learners (the i-th dummy
// always plays e_i). Each round the meta layer mixes their decisions with
// weights from optimistic projected gradient descent on the simplex:
//
//   p_t       = Proj(p^_t - (eps_t / 2) m_t)
//   p^_{t+1}  = Proj(p^_t - (eps_t / 2) l_t)
//
// where l_{t,i} = <x_{t,i}, g_t> + lambda ||x_{t,i} - x_{t-1,i}||_1^2 and m_t
// is the same with g_{t-1} in place of g_t (m_1 = 0, no correction at t = 1).
// The rate eps_{t+1} = 1 / sqrt(L^2 + sum_{s=2}^t ||g_s - g_{s-1}||_inf^2).
//
// The learner only ever sees the gradient vectors g_t, never the matrix.
class MetaLearner {
 public:
  // Standard construction: pool from `kind`'s DRVU constants for dimension
  // `dim` and horizon T >= 2, plus the dim dummy learners.
  static MetaLearner Make(std::size_t dim, long horizon, LearnerKind kind,
                          double c = 0.5);

  // Arbitrary learner set, used for degenerate-pool tests.
  MetaLearner(std::vector<BaseLearner> learners, double lipschitz,
              double lambda);

  // Collects base decisions and returns x_t. Throws std::logic_error when
  // called twice without an intervening Feed().
  const MixedStrategy& Decide();
  // Consumes the gradient g_t (A_t y_t for the row player, -A_t^T x_t for
  // the column player).
  void Feed(std::span<const double> gradient);

  std::size_t dim() const { return dim_; }
  long round() const { return round_; }  // rounds fed so far
  double epsilon() const { return epsilon_; }
  double lambda() const { return lambda_; }
  double lipschitz() const { return lipschitz_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& auxiliary_weights() const { return auxiliary_; }
  const std::vector<BaseLearner>& learners() const { return learners_; }
  std::size_t tuned_count() const { return tuned_count_; }
  const MixedStrategy& decision() const { return decision_; }
  // Shannon entropy (nats) of the current meta weights.
  double WeightEntropy() const;

 private:
  double Correction(std::size_t i) const;

  std::size_t dim_;
  std::vector<BaseLearner> learners_;
  std::size_t tuned_count_;
  double lipschitz_;
  double lambda_;
  double epsilon_;
  double variation_sum_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> auxiliary_;
  std::vector<double> prev_gradient_;
  MixedStrategy decision_;
  long round_ = 0;
  bool decided_ = false;
};

// Row (x) and column (y) players for an m x n game.
std::pair<MetaLearner, MetaLearner> MakePlayerPair(std::size_t m, std::size_t n,
                                                   long horizon,
                                                   LearnerKind kind,
                                                   double c = 0.5);

}  // namespace tvgame

#endif  // TVGAME_META_LEARNER_H_
