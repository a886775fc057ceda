#include "tvgame/meta_learner.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tvgame/errors.h"

namespace tvgame {

std::size_t StepSizePool::CountFor(long horizon) {
  // floor(log2(T) / 2) = largest k with 4^k <= T, computed without rounding.
  std::size_t k = 0;
  long double power = 4.0L;
  while (power <= static_cast<long double>(horizon)) {
    ++k;
    power *= 4.0L;
  }
  return k + 1;
}

StepSizePool StepSizePool::Make(long horizon, const DrvuParams& params,
                                double c) {
  if (horizon < 2) throw std::invalid_argument("step-size pool needs T >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("pool constant c must be positive");
  StepSizePool pool;
  pool.horizon = horizon;
  pool.c = c;
  pool.lipschitz = std::max({4.0, std::sqrt(16.0 * c * params.beta),
                             std::sqrt(8.0 * c * params.beta / params.gamma)});
  pool.lambda = params.gamma * pool.lipschitz / 2.0;
  const std::size_t n = CountFor(horizon);
  const double base = 1.0 / (pool.lipschitz * std::sqrt(static_cast<double>(horizon)));
  pool.etas.resize(n);
  for (std::size_t i = 0; i < n; ++i) pool.etas[i] = std::ldexp(base, static_cast<int>(i));
  return pool;
}

MetaLearner MetaLearner::Make(std::size_t dim, long horizon, LearnerKind kind,
                              double c) {
  const StepSizePool pool =
      StepSizePool::Make(horizon, DrvuParamsFor(kind, dim, horizon), c);
  std::vector<BaseLearner> learners;
  learners.reserve(pool.etas.size() + dim);
  for (double eta : pool.etas) learners.push_back(MakeLearner(kind, dim, eta, horizon));
  for (std::size_t j = 0; j < dim; ++j) learners.push_back(BaseLearner::Dummy(dim, j));
  return MetaLearner(std::move(learners), pool.lipschitz, pool.lambda);
}

MetaLearner::MetaLearner(std::vector<BaseLearner> learners, double lipschitz,
                         double lambda)
    : dim_(learners.empty() ? 0 : learners.front().dim()),
      learners_(std::move(learners)),
      tuned_count_(0),
      lipschitz_(lipschitz),
      lambda_(lambda),
      epsilon_(1.0 / lipschitz),
      decision_(MixedStrategy::Uniform(dim_ == 0 ? 1 : dim_)) {
  if (learners_.empty()) throw std::invalid_argument("meta learner needs base learners");
  if (!(lipschitz > 0.0) || !(lambda >= 0.0)) {
    throw std::invalid_argument("meta learner needs L > 0 and lambda >= 0");
  }
  for (const BaseLearner& b : learners_) {
    if (b.dim() != dim_) throw DimensionError("base learners disagree on dimension");
    if (b.kind() != LearnerKind::kDummy) ++tuned_count_;
  }
  const double uniform = 1.0 / static_cast<double>(learners_.size());
  weights_.assign(learners_.size(), uniform);
  auxiliary_.assign(learners_.size(), uniform);
}

double MetaLearner::Correction(std::size_t i) const {
  if (round_ == 0) return 0.0;
  const double d = L1Distance(learners_[i].decision().weights(),
                              learners_[i].last_decision().weights());
  return lambda_ * d * d;
}

const MixedStrategy& MetaLearner::Decide() {
  if (decided_) throw std::logic_error("Decide() called twice in one round");
  const std::vector<double> zero(dim_, 0.0);
  const std::span<const double> optimism =
      round_ == 0 ? std::span<const double>(zero) : std::span<const double>(prev_gradient_);

  std::vector<MixedStrategy> decisions;
  decisions.reserve(learners_.size());
  std::vector<double> step(learners_.size());
  for (std::size_t i = 0; i < learners_.size(); ++i) {
    decisions.push_back(learners_[i].Predict(optimism));
    const double m_i =
        round_ == 0 ? 0.0 : Dot(decisions.back().weights(), optimism) + Correction(i);
    step[i] = auxiliary_[i] - 0.5 * epsilon_ * m_i;
  }
  MixedStrategy p = ProjectOntoSimplex(step);
  weights_.assign(p.weights().begin(), p.weights().end());
  decision_ = Mixture(weights_, decisions);
  decided_ = true;
  return decision_;
}

void MetaLearner::Feed(std::span<const double> gradient) {
  if (!decided_) throw std::logic_error("Feed() called before Decide()");
  if (gradient.size() != dim_) throw DimensionError("gradient has the wrong dimension");
  for (double g : gradient) {
    if (!std::isfinite(g)) throw std::invalid_argument("non-finite gradient");
  }

  std::vector<double> step(learners_.size());
  for (std::size_t i = 0; i < learners_.size(); ++i) {
    const double l_i = Dot(learners_[i].decision().weights(), gradient) + Correction(i);
    step[i] = auxiliary_[i] - 0.5 * epsilon_ * l_i;
  }
  MixedStrategy p_hat = ProjectOntoSimplex(step);
  auxiliary_.assign(p_hat.weights().begin(), p_hat.weights().end());

  if (round_ > 0) {
    const double v = LinfDistance(gradient, prev_gradient_);
    variation_sum_ += v * v;
  }
  epsilon_ = 1.0 / std::sqrt(lipschitz_ * lipschitz_ + variation_sum_);

  for (BaseLearner& b : learners_) {
    if (b.kind() != LearnerKind::kDummy) b.Update(gradient);
  }
  prev_gradient_.assign(gradient.begin(), gradient.end());
  ++round_;
  decided_ = false;
}

double MetaLearner::WeightEntropy() const {
  double h = 0.0;
  for (double p : weights_) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

std::pair<MetaLearner, MetaLearner> MakePlayerPair(std::size_t m, std::size_t n,
                                                   long horizon,
                                                   LearnerKind kind, double c) {
  return {MetaLearner::Make(m, horizon, kind, c),
          MetaLearner::Make(n, horizon, kind, c)};
}

}  // namespace tvgame
