#include "tvgame/players.h"

#include <cmath>
#include <limits>
#include <string>

#include "tvgame/environments.h"
#include "tvgame/errors.h"

namespace tvgame {

double Player::epsilon() const { return std::numeric_limits<double>::quiet_NaN(); }
double Player::weight_entropy() const {
  return std::numeric_limits<double>::quiet_NaN();
}

PlayerSpec PlayerSpec::TwoLayer(LearnerKind kind) {
  PlayerSpec s;
  s.type = Type::kTwoLayer;
  s.kind = kind;
  return s;
}

PlayerSpec PlayerSpec::SingleBase(LearnerKind kind, double eta) {
  PlayerSpec s;
  s.type = Type::kSingleBase;
  s.kind = kind;
  s.eta = eta;
  return s;
}

PlayerSpec PlayerSpec::Fixed(std::vector<double> strategy) {
  PlayerSpec s;
  s.type = Type::kFixedStrategy;
  s.strategy = std::move(strategy);
  return s;
}

PlayerSpec PlayerSpec::NashOracle() {
  PlayerSpec s;
  s.type = Type::kNashOracle;
  return s;
}

PlayerSpec PlayerSpec::Adversary() {
  PlayerSpec s;
  s.type = Type::kAdversarialBestResponse;
  return s;
}

std::string_view ToString(PlayerSpec::Type type) {
  switch (type) {
    case PlayerSpec::Type::kTwoLayer: return "two_layer";
    case PlayerSpec::Type::kSingleBase: return "single_base";
    case PlayerSpec::Type::kFixedStrategy: return "fixed_strategy";
    case PlayerSpec::Type::kNashOracle: return "nash_oracle";
    case PlayerSpec::Type::kAdversarialBestResponse: return "adversarial_best_response";
  }
  return "unknown";
}

PlayerSpec PlayerSpecFromJson(const nlohmann::json& j) {
  try {
    const std::string type =
        j.is_string() ? j.get<std::string>() : j.at("type").get<std::string>();
    auto kind = [&] {
      return j.is_object() && j.contains("kind")
                 ? ParseLearnerKind(j.at("kind").get<std::string>())
                 : LearnerKind::kHedgeFixedShare;
    };
    if (type == "two_layer") return PlayerSpec::TwoLayer(kind());
    if (type == "single_base") {
      if (!j.is_object() || !j.contains("eta")) {
        throw ConfigError("single_base player needs \"eta\"");
      }
      const double eta = j.at("eta").get<double>();
      if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw ConfigError("single_base eta must be positive and finite");
      }
      return PlayerSpec::SingleBase(kind(), eta);
    }
    if (type == "fixed_strategy") {
      if (!j.is_object() || !j.contains("strategy")) {
        throw ConfigError("fixed_strategy player needs \"strategy\"");
      }
      return PlayerSpec::Fixed(j.at("strategy").get<std::vector<double>>());
    }
    if (type == "nash_oracle") return PlayerSpec::NashOracle();
    if (type == "adversarial_best_response") return PlayerSpec::Adversary();
    throw ConfigError("unknown player type: " + type);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("player spec: ") + e.what());
  }
}

nlohmann::json ToJson(const PlayerSpec& spec) {
  nlohmann::json j{{"type", std::string(ToString(spec.type))}};
  if (spec.type == PlayerSpec::Type::kTwoLayer ||
      spec.type == PlayerSpec::Type::kSingleBase) {
    j["kind"] = std::string(ToString(spec.kind));
  }
  if (spec.type == PlayerSpec::Type::kSingleBase) j["eta"] = spec.eta;
  if (spec.type == PlayerSpec::Type::kFixedStrategy) j["strategy"] = spec.strategy;
  return j;
}

std::unique_ptr<Player> MakePlayer(const PlayerSpec& spec, Role role,
                                   std::size_t dim, long horizon, double c) {
  switch (spec.type) {
    case PlayerSpec::Type::kTwoLayer:
      return std::make_unique<TwoLayerPlayer>(
          MetaLearner::Make(dim, horizon, spec.kind, c));
    case PlayerSpec::Type::kSingleBase:
      return std::make_unique<SingleBasePlayer>(
          MakeLearner(spec.kind, dim, spec.eta, horizon));
    case PlayerSpec::Type::kFixedStrategy:
      if (spec.strategy.size() != dim) {
        throw DimensionError("fixed strategy has " +
                             std::to_string(spec.strategy.size()) +
                             " entries, player has " + std::to_string(dim) +
                             " actions");
      }
      try {
        return std::make_unique<FixedStrategyPlayer>(MixedStrategy(spec.strategy));
      } catch (const DimensionError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("fixed strategy: ") + e.what());
      }
    case PlayerSpec::Type::kNashOracle:
      return std::make_unique<NashOraclePlayer>(role);
    case PlayerSpec::Type::kAdversarialBestResponse:
      if (role != Role::kColumn) {
        throw ConfigError("adversarial_best_response is only valid for the y-player");
      }
      return std::make_unique<AdversarialBestResponsePlayer>();
  }
  throw ConfigError("unknown player type");
}

MixedStrategy TwoLayerPlayer::Decide(const RoundContext&) { return meta_.Decide(); }

void TwoLayerPlayer::Feed(std::span<const double> gradient) { meta_.Feed(gradient); }

SingleBasePlayer::SingleBasePlayer(BaseLearner learner)
    : learner_(std::move(learner)), hint_(learner_.dim(), 0.0) {}

MixedStrategy SingleBasePlayer::Decide(const RoundContext&) {
  return learner_.Predict(hint_);
}

void SingleBasePlayer::Feed(std::span<const double> gradient) {
  learner_.Update(gradient);
  hint_.assign(gradient.begin(), gradient.end());
}

MixedStrategy NashOraclePlayer::Decide(const RoundContext& context) {
  if (context.matrix == nullptr) throw std::logic_error("nash oracle needs A_t");
  const NashSolution& ne = cache_.Solve(*context.matrix);
  return role_ == Role::kRow ? ne.x_star : ne.y_star;
}

MixedStrategy AdversarialBestResponsePlayer::Decide(const RoundContext& context) {
  if (context.matrix == nullptr || context.row_decision == nullptr) {
    throw std::logic_error("adversary needs A_t and x_t");
  }
  return AdversarialOpponent(*context.row_decision, *context.matrix);
}

}  // namespace tvgame
