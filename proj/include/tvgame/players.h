#ifndef TVGAME_PLAYERS_H_
#define TVGAME_PLAYERS_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tvgame/learners.h"
#include "tvgame/matrix_game.h"
#include "tvgame/meta_learner.h"
#include "tvgame/metrics.h"

namespace tvgame {

enum class Role { kRow, kColumn };

// What a player may look at when deciding. Learning players ignore both
// fields; oracles and the adversary use them.
struct RoundContext {
  const PayoffMatrix* matrix = nullptr;          // A_t
  const MixedStrategy* row_decision = nullptr;   // x_t, set for the column player
};

class Player {
 public:
  virtual ~Player() = default;

  virtual MixedStrategy Decide(const RoundContext& context) = 0;
  // Loss gradient of the round: A_t y_t for the row player, -A_t^T x_t for
  // the column player.
  virtual void Feed(std::span<const double> gradient) = 0;

  // Meta-layer diagnostics; NaN for players without a meta layer.
  virtual double epsilon() const;
  virtual double weight_entropy() const;
};

struct PlayerSpec {
  enum class Type {
    kTwoLayer,
    kSingleBase,
    kFixedStrategy,
    kNashOracle,
    kAdversarialBestResponse,
  };
  Type type = Type::kTwoLayer;
  LearnerKind kind = LearnerKind::kHedgeFixedShare;
  double eta = 0.0;               // single_base only
  std::vector<double> strategy;   // fixed_strategy only

  static PlayerSpec TwoLayer(LearnerKind kind);
  static PlayerSpec SingleBase(LearnerKind kind, double eta);
  static PlayerSpec Fixed(std::vector<double> strategy);
  static PlayerSpec NashOracle();
  static PlayerSpec Adversary();
};

std::string_view ToString(PlayerSpec::Type type);

// {"type": "two_layer", "kind": "hedge_fixed_share"}
// {"type": "single_base", "kind": "optimistic_ogd", "eta": 0.01}
// {"type": "fixed_strategy", "strategy": [0.5, 0.5]}
// {"type": "nash_oracle"} | {"type": "adversarial_best_response"}
// A bare string is accepted for the parameterless types.
PlayerSpec PlayerSpecFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const PlayerSpec& spec);

// Throws ConfigError for an adversarial row player or a bad spec, and
// DimensionError when a fixed strategy does not match `dim`.
std::unique_ptr<Player> MakePlayer(const PlayerSpec& spec, Role role,
                                   std::size_t dim, long horizon,
                                   double c = 0.5);

class TwoLayerPlayer : public Player {
 public:
  explicit TwoLayerPlayer(MetaLearner meta) : meta_(std::move(meta)) {}
  MixedStrategy Decide(const RoundContext& context) override;
  void Feed(std::span<const double> gradient) override;
  double epsilon() const override { return meta_.epsilon(); }
  double weight_entropy() const override { return meta_.WeightEntropy(); }
  const MetaLearner& meta() const { return meta_; }

 private:
  MetaLearner meta_;
};

// One base learner with optimism h_t = g_{t-1} (h_1 = 0).
class SingleBasePlayer : public Player {
 public:
  explicit SingleBasePlayer(BaseLearner learner);
  MixedStrategy Decide(const RoundContext& context) override;
  void Feed(std::span<const double> gradient) override;

 private:
  BaseLearner learner_;
  std::vector<double> hint_;
};

class FixedStrategyPlayer : public Player {
 public:
  explicit FixedStrategyPlayer(MixedStrategy strategy)
      : strategy_(std::move(strategy)) {}
  MixedStrategy Decide(const RoundContext&) override { return strategy_; }
  void Feed(std::span<const double>) override {}

 private:
  MixedStrategy strategy_;
};

// Plays its side of the canonical equilibrium of the current A_t.
class NashOraclePlayer : public Player {
 public:
  explicit NashOraclePlayer(Role role) : role_(role) {}
  MixedStrategy Decide(const RoundContext& context) override;
  void Feed(std::span<const double>) override {}

 private:
  Role role_;
  NashCache cache_;
};

// Column player best-responding to the revealed x_t under A_t.
class AdversarialBestResponsePlayer : public Player {
 public:
  MixedStrategy Decide(const RoundContext& context) override;
  void Feed(std::span<const double>) override {}
};

}  // namespace tvgame

#endif  // TVGAME_PLAYERS_H_
