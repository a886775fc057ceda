#include "tvgame/environments.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tvgame/errors.h"

namespace tvgame {
namespace {

PayoffMatrix ClampedScale(const PayoffMatrix& a, double factor, bool* clamped) {
  std::vector<double> out(a.entries().begin(), a.entries().end());
  bool any = false;
  for (double& v : out) {
    v *= factor;
    if (v > 1.0 || v < -1.0) {
      v = std::clamp(v, -1.0, 1.0);
      any = true;
    }
  }
  if (clamped != nullptr) *clamped = any;
  return PayoffMatrix(a.rows(), a.cols(), std::move(out));
}

}  // namespace

GameSchedule::GameSchedule(Kind kind, long horizon, std::size_t rows,
                           std::size_t cols)
    : kind_(kind), horizon_(horizon), rows_(rows), cols_(cols) {
  if (horizon_ < 1) throw std::invalid_argument("schedule horizon must be >= 1");
}

GameSchedule GameSchedule::Stationary(PayoffMatrix matrix, long horizon) {
  GameSchedule s(Kind::kStationary, horizon, matrix.rows(), matrix.cols());
  s.matrices_.push_back(std::move(matrix));
  return s;
}

GameSchedule GameSchedule::TwoPhase(long horizon) {
  GameSchedule s(Kind::kTwoPhase, horizon, 2, 2);
  s.matrices_.push_back(PayoffMatrix{{1, -1}, {-1, 1}});
  s.matrices_.push_back(PayoffMatrix{{1, -1}, {1, -1}});
  return s;
}

GameSchedule GameSchedule::DriftingEpochs(long horizon) {
  if (horizon < 64) {
    throw std::invalid_argument("drifting-epoch schedule needs T >= 64");
  }
  GameSchedule s(Kind::kDriftingEpochs, horizon, 2, 2);
  s.epoch_prefix_ = 2 * static_cast<long>(std::floor(std::sqrt(static_cast<double>(horizon))));
  for (int k = 1; k <= 4; ++k) {
    if (s.EpochStart(k + 1) - s.EpochStart(k) <= s.epoch_prefix_) {
      throw std::invalid_argument(
          "drifting-epoch schedule: T too small, epochs must exceed 2*floor(sqrt(T))");
    }
  }
  const PayoffMatrix a0{{0.5, 0.5}, {-0.5, -0.5}};
  const PayoffMatrix a1{{-1, -1}, {1, 1}};
  const PayoffMatrix e{{1.0 / 3.0, -0.5}, {1.0 / 3.0, -0.5}};
  const double shrink = std::pow(static_cast<double>(horizon), -0.25);
  s.matrices_.push_back(PayoffMatrix(2, 2, [&] {
    const PayoffMatrix sum = a0.Plus(e);
    return std::vector<double>(sum.entries().begin(), sum.entries().end());
  }()));
  s.matrices_.push_back(PayoffMatrix(2, 2, [&] {
    const PayoffMatrix diff = a0.Minus(e);
    return std::vector<double>(diff.entries().begin(), diff.entries().end());
  }()));
  // Second phase: coefficient 1/2 + (1/2 - (-1)^t T^{-1/4}).
  s.matrices_.push_back(ClampedScale(a1, 0.5 + (0.5 - shrink), nullptr));  // even t
  s.matrices_.push_back(ClampedScale(a1, 0.5 + (0.5 + shrink), nullptr));  // odd t
  return s;
}

GameSchedule GameSchedule::PeriodicDrift(PayoffMatrix matrix,
                                         std::vector<double> scales,
                                         long horizon) {
  if (scales.empty()) throw std::invalid_argument("periodic drift needs scales");
  GameSchedule s(Kind::kPeriodicDrift, horizon, matrix.rows(), matrix.cols());
  for (double f : scales) {
    // Validates the scaled matrix up front so MatrixAt never throws.
    PayoffMatrix(matrix.rows(), matrix.cols(), [&] {
      const PayoffMatrix scaled = matrix.Scaled(f);
      return std::vector<double>(scaled.entries().begin(), scaled.entries().end());
    }());
  }
  s.matrices_.push_back(std::move(matrix));
  s.scales_ = std::move(scales);
  return s;
}

GameSchedule GameSchedule::FromSteps(std::vector<Step> steps, long horizon) {
  if (steps.empty()) throw ConfigError("schedule file has no steps");
  GameSchedule s(Kind::kFile, horizon, steps.front().matrix.rows(),
                 steps.front().matrix.cols());
  long total = 0;
  for (Step& step : steps) {
    if (step.matrix.rows() != s.rows_ || step.matrix.cols() != s.cols_) {
      throw DimensionError("schedule steps disagree on matrix shape");
    }
    if (!step.matrix.bounded()) throw ConfigError("schedule matrices must be in [-1, 1]");
    if (step.repeat < 1) throw ConfigError("schedule step repeat must be >= 1");
    total += step.repeat;
    s.step_ends_.push_back(total);
    s.matrices_.push_back(std::move(step.matrix));
  }
  if (total != horizon) {
    throw ConfigError("schedule steps cover " + std::to_string(total) +
                      " rounds but T = " + std::to_string(horizon));
  }
  return s;
}

GameSchedule GameSchedule::FromJson(const nlohmann::json& j) {
  try {
    const long horizon = j.at("T").get<long>();
    std::vector<Step> steps;
    for (const auto& item : j.at("steps")) {
      steps.push_back(Step{MatrixFromJson(item.at("matrix")),
                           item.value("repeat", 1L)});
    }
    return FromSteps(std::move(steps), horizon);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("schedule JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const DimensionError*>(&e) != nullptr) throw;
    throw ConfigError(std::string("schedule JSON: ") + e.what());
  }
}

GameSchedule GameSchedule::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schedule file " + path);
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("schedule file " + path + ": " + e.what());
  }
}

nlohmann::json GameSchedule::StepsToJson() const {
  nlohmann::json steps = nlohmann::json::array();
  long run = 0;
  for (long t = 1; t <= horizon_; ++t) {
    ++run;
    const bool last = t == horizon_;
    if (last || !(MatrixAt(t) == MatrixAt(t + 1))) {
      steps.push_back({{"matrix", ToJson(MatrixAt(t))}, {"repeat", run}});
      run = 0;
    }
  }
  return {{"T", horizon_}, {"steps", std::move(steps)}};
}

long GameSchedule::EpochStart(int k) const {
  // floor((k - 1) T / 4)
  return static_cast<long>((static_cast<long long>(k - 1) * horizon_) / 4);
}

PayoffMatrix GameSchedule::RawAt(long t, bool* clamped) const {
  if (t < 1 || t > horizon_) {
    throw std::out_of_range("round " + std::to_string(t) + " outside [1, " +
                            std::to_string(horizon_) + "]");
  }
  if (clamped != nullptr) *clamped = false;
  switch (kind_) {
    case Kind::kStationary:
      return matrices_[0];
    case Kind::kTwoPhase:
      return 2 * t <= horizon_ ? matrices_[0] : matrices_[1];
    case Kind::kDriftingEpochs: {
      int k = 1;
      while (k < 4 && t > EpochStart(k + 1)) ++k;
      const bool even = t % 2 == 0;
      if (t <= EpochStart(k) + epoch_prefix_) return even ? matrices_[0] : matrices_[1];
      if (!even && clamped != nullptr) *clamped = true;
      return even ? matrices_[2] : matrices_[3];
    }
    case Kind::kPeriodicDrift: {
      const double f = scales_[static_cast<std::size_t>(t - 1) % scales_.size()];
      return ClampedScale(matrices_[0], f, clamped);
    }
    case Kind::kFile: {
      const auto it = std::lower_bound(step_ends_.begin(), step_ends_.end(), t);
      return matrices_[static_cast<std::size_t>(it - step_ends_.begin())];
    }
  }
  throw std::logic_error("unhandled schedule kind");
}

PayoffMatrix GameSchedule::MatrixAt(long t) const { return RawAt(t, nullptr); }

bool GameSchedule::ClampedAt(long t) const {
  bool clamped = false;
  RawAt(t, &clamped);
  return clamped;
}

MixedStrategy AdversarialOpponent(const MixedStrategy& x, const PayoffMatrix& a) {
  return BestResponseCol(a, x).strategy;
}

}  // namespace tvgame
