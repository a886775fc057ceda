#ifndef TVGAME_LEARNERS_H_
#define TVGAME_LEARNERS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvgame/matrix_game.h"

namespace tvgame {

enum class LearnerKind { kHedgeFixedShare, kOptimisticOgd, kDummy };

std::string_view ToString(LearnerKind kind);
// Accepts "hedge_fixed_share" and "optimistic_ogd"; throws ConfigError.
LearnerKind ParseLearnerKind(std::string_view name);

// Constants of a dynamic-regret bound of the form
//   (alpha/eta)(1 + P^u) + eta*beta*sum ||g_t - g_{t-1}||^2
//                        - (gamma/eta)*sum ||x_t - x_{t-1}||_1^2.
struct DrvuParams {
  double alpha;
  double beta;
  double gamma;
};

// Proven constants for the two optimistic learners. Dummy learners carry
// none and raise std::invalid_argument.
DrvuParams DrvuParamsFor(LearnerKind kind, std::size_t dim, long horizon);

// One online learner over Delta_k following the optimistic mirror-descent
// two-step: Predict() takes the optimistic half-step from the current center
// using a guess of the next loss, Update() moves the center using the loss
// actually observed.
//
//  * Hedge (entropic regularizer): predict x ~ c * exp(-eta*h), update
//    c' ~ c * exp(-eta*g) then fixed-share c'' = (1 - xi) c' + xi/k.
//  * OGD (Euclidean regularizer): predict x = Proj(c - eta*h), update
//    c' = Proj(c - eta*g).
//  * Dummy: always the same vertex; Update() is a no-op.
class BaseLearner {
 public:
  static BaseLearner HedgeFixedShare(std::size_t dim, double eta,
                                     double fixed_share);
  static BaseLearner OptimisticOgd(std::size_t dim, double eta);
  static BaseLearner Dummy(std::size_t dim, std::size_t vertex);

  // Computes and records this round's decision. The first decision also
  // becomes last_decision(), so stability terms vanish at t = 1.
  const MixedStrategy& Predict(std::span<const double> optimism);
  void Update(std::span<const double> loss);

  LearnerKind kind() const { return kind_; }
  std::size_t dim() const { return center_.size(); }
  double eta() const { return eta_; }  // 0 for dummies
  double fixed_share() const { return fixed_share_; }
  const MixedStrategy& decision() const { return decision_; }
  const MixedStrategy& last_decision() const { return last_decision_; }
  // x~_t for hedge (post fixed-share), x^_t for OGD, the vertex for dummies.
  const MixedStrategy& center() const { return center_; }

 private:
  BaseLearner(LearnerKind kind, double eta, double fixed_share,
              MixedStrategy start);

  MixedStrategy HedgeStep(std::span<const double> direction) const;
  MixedStrategy OgdStep(std::span<const double> direction) const;

  LearnerKind kind_;
  double eta_;
  double fixed_share_;
  MixedStrategy center_;
  MixedStrategy decision_;
  MixedStrategy last_decision_;
  bool has_decision_ = false;
};

// Builds a tuned learner of the given kind; hedge uses xi = 1/horizon.
BaseLearner MakeLearner(LearnerKind kind, std::size_t dim, double eta,
                        long horizon);

struct DrvuReport {
  bool holds;
  double lhs;              // sum <x_t - u_t, g_t>
  double rhs;              // full bound including the diameter slack
  double path_length;      // P^u
  double variation;        // sum_{t>=1} ||g_t - g_{t-1}||_inf^2 with g_0 = 0
  double stability;        // sum_{t>=2} ||x_t - x_{t-1}||_1^2
};

// Runs a fresh learner of `kind` (optimism h_t = g_{t-1}, h_1 = 0) over the
// loss sequence and compares its dynamic regret against the comparators
// with the bound from DrvuParamsFor(kind, m, T). For OGD the Euclidean
// diameter D^2 = 2m is added to the right-hand side.
DrvuReport DrvuCheck(LearnerKind kind, double eta,
                     std::span<const std::vector<double>> losses,
                     std::span<const MixedStrategy> comparators);

}  // namespace tvgame

#endif  // TVGAME_LEARNERS_H_
