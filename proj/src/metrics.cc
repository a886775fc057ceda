#include "tvgame/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "tvgame/errors.h"

namespace tvgame {
namespace {

std::string KeyOf(const PayoffMatrix& a) {
  std::string key(2 * sizeof(std::size_t) + a.entries().size() * sizeof(double), '\0');
  const std::size_t dims[2] = {a.rows(), a.cols()};
  std::memcpy(key.data(), dims, sizeof(dims));
  std::memcpy(key.data() + sizeof(dims), a.entries().data(),
              a.entries().size() * sizeof(double));
  return key;
}

}  // namespace

const NashSolution& NashCache::Solve(const PayoffMatrix& a) {
  std::string key = KeyOf(a);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  ++misses_;
  return cache_.emplace(std::move(key), SolveNash(a)).first->second;
}

MetricsAccumulator::MetricsAccumulator(std::size_t rows, std::size_t cols,
                                       std::optional<PayoffMatrix> average)
    : rows_(rows),
      cols_(cols),
      average_(std::move(average)),
      loss_sum_(rows, 0.0),
      reward_sum_(cols, 0.0),
      matrix_sum_entries_(rows * cols, 0.0) {
  if (average_ && (average_->rows() != rows || average_->cols() != cols)) {
    throw DimensionError("reference average has the wrong shape");
  }
}

void MetricsAccumulator::Step(const PayoffMatrix& a, const MixedStrategy& x,
                              const MixedStrategy& y) {
  if (a.rows() != rows_ || a.cols() != cols_ || x.size() != rows_ ||
      y.size() != cols_) {
    throw DimensionError("round inputs do not match the accumulator shape");
  }
  const std::vector<double> loss = LossVector(a, y);
  const std::vector<double> reward = RewardVector(a, x);
  const double payoff = Dot(x.weights(), loss);
  payoff_sum_ += payoff;
  for (std::size_t i = 0; i < rows_; ++i) loss_sum_[i] += loss[i];
  for (std::size_t j = 0; j < cols_; ++j) reward_sum_[j] += reward[j];
  for (std::size_t k = 0; k < matrix_sum_entries_.size(); ++k) {
    matrix_sum_entries_[k] += a.entries()[k];
  }

  last_gap_ = *std::max_element(reward.begin(), reward.end()) -
              *std::min_element(loss.begin(), loss.end());
  gap_sum_ += last_gap_;

  const NashSolution& nash = cache_.Solve(a);
  value_sum_ += nash.value;
  if (prev_matrix_) {
    path_length_ += L1Distance(nash.x_star.weights(), prev_nash_->x_star.weights()) +
                    L1Distance(nash.y_star.weights(), prev_nash_->y_star.weights());
    const double d = a.Minus(*prev_matrix_).MaxNorm();
    variation_ += d * d;
  }
  if (average_) deviation_ += a.Minus(*average_).MaxNorm();

  prev_matrix_ = a;
  prev_nash_ = nash;
  ++rounds_;
}

double MetricsAccumulator::regret_x() const {
  return payoff_sum_ - *std::min_element(loss_sum_.begin(), loss_sum_.end());
}

double MetricsAccumulator::regret_y() const {
  return *std::max_element(reward_sum_.begin(), reward_sum_.end()) - payoff_sum_;
}

double MetricsAccumulator::dynamic_ne_regret() const {
  return std::abs(payoff_sum_ - value_sum_);
}

double MetricsAccumulator::ne_regret() const {
  if (rounds_ == 0) return 0.0;
  const double t = static_cast<double>(rounds_);
  std::vector<double> scaled(matrix_sum_entries_);
  for (double& v : scaled) v /= t;
  const NashSolution nash =
      SolveNash(PayoffMatrix::Unbounded(rows_, cols_, std::move(scaled)));
  return std::abs(payoff_sum_ - t * nash.value);
}

PayoffMatrix MetricsAccumulator::cumulative_matrix() const {
  return PayoffMatrix::Unbounded(rows_, cols_, matrix_sum_entries_);
}

double MetricsAccumulator::deviation() const {
  return average_ ? deviation_ : std::numeric_limits<double>::quiet_NaN();
}

PayoffMatrix AverageMatrix(const GameSchedule& schedule) {
  std::vector<double> sum(schedule.rows() * schedule.cols(), 0.0);
  for (long t = 1; t <= schedule.horizon(); ++t) {
    const PayoffMatrix a = schedule.MatrixAt(t);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += a.entries()[k];
  }
  for (double& v : sum) v /= static_cast<double>(schedule.horizon());
  return PayoffMatrix::Unbounded(schedule.rows(), schedule.cols(), std::move(sum));
}

NonstationarityMeasures MeasureSchedule(const GameSchedule& schedule) {
  const PayoffMatrix average = AverageMatrix(schedule);
  NashCache cache;
  NonstationarityMeasures out{0.0, 0.0, 0.0, 0.0};
  std::optional<PayoffMatrix> prev;
  const NashSolution* prev_nash = nullptr;
  for (long t = 1; t <= schedule.horizon(); ++t) {
    PayoffMatrix a = schedule.MatrixAt(t);
    const NashSolution& nash = cache.Solve(a);
    if (prev) {
      out.path_length += L1Distance(nash.x_star.weights(), prev_nash->x_star.weights()) +
                         L1Distance(nash.y_star.weights(), prev_nash->y_star.weights());
      const double d = a.Minus(*prev).MaxNorm();
      out.variation += d * d;
    }
    out.deviation += a.Minus(average).MaxNorm();
    prev = std::move(a);
    prev_nash = &nash;
  }
  out.combined = out.variation + std::min(out.path_length, out.deviation);
  return out;
}

}  // namespace tvgame
