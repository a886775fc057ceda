#include "tvgame/learners.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvgame/errors.h"

namespace tvgame {
namespace {

void RequireFinite(std::span<const double> v, const char* what) {
  for (double e : v) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument(std::string("non-finite ") + what);
    }
  }
}

}  // namespace

std::string_view ToString(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kHedgeFixedShare:
      return "hedge_fixed_share";
    case LearnerKind::kOptimisticOgd:
      return "optimistic_ogd";
    case LearnerKind::kDummy:
      return "dummy";
  }
  return "unknown";
}

LearnerKind ParseLearnerKind(std::string_view name) {
  if (name == "hedge_fixed_share") return LearnerKind::kHedgeFixedShare;
  if (name == "optimistic_ogd") return LearnerKind::kOptimisticOgd;
  throw ConfigError("unknown base learner kind '" + std::string(name) + "'");
}

DrvuParams DrvuParamsFor(LearnerKind kind, std::size_t dim, long horizon) {
  if (dim == 0 || horizon < 1) {
    throw std::invalid_argument("DRVU constants need dim >= 1 and horizon >= 1");
  }
  const double m = static_cast<double>(dim);
  switch (kind) {
    case LearnerKind::kHedgeFixedShare:
      return {3.0 + std::log(m * static_cast<double>(horizon)), 1.0, 0.25};
    case LearnerKind::kOptimisticOgd:
      return {m + 2.0, m / 2.0, 1.0 / (4.0 * m)};
    case LearnerKind::kDummy:
      break;
  }
  throw std::invalid_argument("dummy learners have no DRVU constants");
}

BaseLearner::BaseLearner(LearnerKind kind, double eta, double fixed_share,
                         MixedStrategy start)
    : kind_(kind),
      eta_(eta),
      fixed_share_(fixed_share),
      center_(start),
      decision_(start),
      last_decision_(std::move(start)) {}

BaseLearner BaseLearner::HedgeFixedShare(std::size_t dim, double eta,
                                         double fixed_share) {
  if (!(eta > 0.0)) throw std::invalid_argument("step size must be positive");
  if (!(fixed_share >= 0.0 && fixed_share <= 1.0)) {
    throw std::invalid_argument("fixed-share coefficient must lie in [0, 1]");
  }
  return BaseLearner(LearnerKind::kHedgeFixedShare, eta, fixed_share,
                     MixedStrategy::Uniform(dim));
}

BaseLearner BaseLearner::OptimisticOgd(std::size_t dim, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("step size must be positive");
  return BaseLearner(LearnerKind::kOptimisticOgd, eta, 0.0,
                     MixedStrategy::Uniform(dim));
}

BaseLearner BaseLearner::Dummy(std::size_t dim, std::size_t vertex) {
  return BaseLearner(LearnerKind::kDummy, 0.0, 0.0,
                     MixedStrategy::Vertex(dim, vertex));
}

MixedStrategy BaseLearner::HedgeStep(std::span<const double> direction) const {
  // Log-space with max subtraction; zero center weights stay zero.
  const std::size_t k = center_.size();
  std::vector<double> logits(k);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    logits[i] = center_[i] > 0.0
                    ? std::log(center_[i]) - eta_ * direction[i]
                    : -std::numeric_limits<double>::infinity();
    top = std::max(top, logits[i]);
  }
  std::vector<double> w(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = std::exp(logits[i] - top);
    sum += w[i];
  }
  for (double& e : w) e /= sum;
  return MixedStrategy(std::move(w));
}

MixedStrategy BaseLearner::OgdStep(std::span<const double> direction) const {
  std::vector<double> v(center_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = center_[i] - eta_ * direction[i];
  }
  return ProjectOntoSimplex(v);
}

const MixedStrategy& BaseLearner::Predict(std::span<const double> optimism) {
  if (kind_ != LearnerKind::kDummy) {
    if (optimism.size() != center_.size()) {
      throw DimensionError("optimism vector has the wrong dimension");
    }
    RequireFinite(optimism, "optimism vector");
  }
  MixedStrategy next = kind_ == LearnerKind::kHedgeFixedShare ? HedgeStep(optimism)
                       : kind_ == LearnerKind::kOptimisticOgd ? OgdStep(optimism)
                                                              : center_;
  last_decision_ = has_decision_ ? std::move(decision_) : next;
  decision_ = std::move(next);
  has_decision_ = true;
  return decision_;
}

void BaseLearner::Update(std::span<const double> loss) {
  if (kind_ == LearnerKind::kDummy) return;
  if (loss.size() != center_.size()) {
    throw DimensionError("loss vector has the wrong dimension");
  }
  RequireFinite(loss, "loss vector");
  if (kind_ == LearnerKind::kOptimisticOgd) {
    center_ = OgdStep(loss);
    return;
  }
  const MixedStrategy advanced = HedgeStep(loss);
  const double k = static_cast<double>(center_.size());
  std::vector<double> mixed(center_.size());
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    mixed[i] = (1.0 - fixed_share_) * advanced[i] + fixed_share_ / k;
  }
  center_ = MixedStrategy(std::move(mixed));
}

BaseLearner MakeLearner(LearnerKind kind, std::size_t dim, double eta,
                        long horizon) {
  switch (kind) {
    case LearnerKind::kHedgeFixedShare:
      return BaseLearner::HedgeFixedShare(dim, eta,
                                          1.0 / static_cast<double>(horizon));
    case LearnerKind::kOptimisticOgd:
      return BaseLearner::OptimisticOgd(dim, eta);
    case LearnerKind::kDummy:
      break;
  }
  throw std::invalid_argument("MakeLearner: dummy learners need a vertex");
}

DrvuReport DrvuCheck(LearnerKind kind, double eta,
                     std::span<const std::vector<double>> losses,
                     std::span<const MixedStrategy> comparators) {
  if (losses.empty()) throw std::invalid_argument("empty loss sequence");
  if (comparators.size() != losses.size()) {
    throw DimensionError("comparator and loss sequences differ in length");
  }
  const std::size_t m = losses.front().size();
  const long horizon = static_cast<long>(losses.size());
  const DrvuParams params = DrvuParamsFor(kind, m, horizon);
  BaseLearner learner = MakeLearner(kind, m, eta, horizon);

  std::vector<double> prev_loss(m, 0.0);
  DrvuReport r{};
  for (std::size_t t = 0; t < losses.size(); ++t) {
    const std::vector<double>& g = losses[t];
    if (g.size() != m || comparators[t].size() != m) {
      throw DimensionError("dimension changes within the sequence");
    }
    const MixedStrategy& x = learner.Predict(prev_loss);
    for (std::size_t i = 0; i < m; ++i) r.lhs += (x[i] - comparators[t][i]) * g[i];
    if (t > 0) {
      const double d = L1Distance(x.weights(), learner.last_decision().weights());
      r.stability += d * d;
      r.path_length +=
          L1Distance(comparators[t].weights(), comparators[t - 1].weights());
    }
    const double v = LinfDistance(g, prev_loss);
    r.variation += v * v;
    learner.Update(g);
    prev_loss = g;
  }
  r.rhs = params.alpha / eta * (1.0 + r.path_length) +
          eta * params.beta * r.variation - params.gamma / eta * r.stability;
  if (kind == LearnerKind::kOptimisticOgd) r.rhs += 2.0 * static_cast<double>(m);
  r.holds = r.lhs <= r.rhs;
  return r;
}

}  // namespace tvgame
