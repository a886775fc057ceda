#include "tvgame/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "tvgame/simplex_lp.h"

namespace tvgame {
namespace {

void RequireSize(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(want) + ", got " + std::to_string(got));
  }
}

std::vector<double> NormalizedOrThrow(std::vector<double> w) {
  if (w.empty()) throw DimensionError("mixed strategy needs at least one action");
  double sum = 0.0;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("mixed strategy weights must be finite and >= 0");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > MixedStrategy::kSumTolerance) {
    throw std::invalid_argument("mixed strategy weights sum to " +
                                std::to_string(sum) + ", not 1");
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> entries, bool bounded)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), bounded_(bounded) {
  if (rows_ == 0 || cols_ == 0) {
    throw DimensionError("payoff matrix needs at least one row and one column");
  }
  RequireSize(entries_.size(), rows_ * cols_, "payoff matrix entries");
  for (double v : entries_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite matrix entry");
    if (bounded_ && (v < -1.0 || v > 1.0)) {
      throw std::invalid_argument("payoff entry " + std::to_string(v) +
                                  " outside [-1, 1]");
    }
  }
}

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> entries)
    : PayoffMatrix(rows, cols, std::move(entries), true) {}

PayoffMatrix::PayoffMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : PayoffMatrix(
          rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(),
          [&] {
            std::vector<double> flat;
            const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
            for (const auto& r : rows) {
              RequireSize(r.size(), width, "payoff matrix row");
              flat.insert(flat.end(), r.begin(), r.end());
            }
            return flat;
          }(),
          true) {}

PayoffMatrix PayoffMatrix::Unbounded(std::size_t rows, std::size_t cols,
                                     std::vector<double> entries) {
  return PayoffMatrix(rows, cols, std::move(entries), false);
}

PayoffMatrix PayoffMatrix::Zeros(std::size_t rows, std::size_t cols) {
  return PayoffMatrix(rows, cols, std::vector<double>(rows * cols, 0.0), false);
}

double PayoffMatrix::MaxNorm() const {
  double best = 0.0;
  for (double v : entries_) best = std::max(best, std::abs(v));
  return best;
}

PayoffMatrix PayoffMatrix::Plus(const PayoffMatrix& other) const {
  RequireSize(other.rows_, rows_, "matrix sum rows");
  RequireSize(other.cols_, cols_, "matrix sum cols");
  std::vector<double> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), other.entries_.begin(),
                 out.begin(), std::plus<>());
  return Unbounded(rows_, cols_, std::move(out));
}

PayoffMatrix PayoffMatrix::Minus(const PayoffMatrix& other) const {
  RequireSize(other.rows_, rows_, "matrix difference rows");
  RequireSize(other.cols_, cols_, "matrix difference cols");
  std::vector<double> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), other.entries_.begin(),
                 out.begin(), std::minus<>());
  return Unbounded(rows_, cols_, std::move(out));
}

PayoffMatrix PayoffMatrix::Scaled(double factor) const {
  std::vector<double> out(entries_);
  for (double& v : out) v *= factor;
  return Unbounded(rows_, cols_, std::move(out));
}

MixedStrategy::MixedStrategy(std::vector<double> weights)
    : weights_(NormalizedOrThrow(std::move(weights))) {}

MixedStrategy::MixedStrategy(std::vector<double> weights, Trusted)
    : weights_(std::move(weights)) {}

MixedStrategy MixedStrategy::Uniform(std::size_t k) {
  if (k == 0) throw DimensionError("uniform strategy over zero actions");
  return MixedStrategy(std::vector<double>(k, 1.0 / static_cast<double>(k)),
                       Trusted{});
}

MixedStrategy MixedStrategy::Vertex(std::size_t k, std::size_t index) {
  if (index >= k) throw DimensionError("vertex index out of range");
  std::vector<double> w(k, 0.0);
  w[index] = 1.0;
  return MixedStrategy(std::move(w), Trusted{});
}

double Dot(std::span<const double> a, std::span<const double> b) {
  RequireSize(b.size(), a.size(), "dot product");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double L1Distance(std::span<const double> a, std::span<const double> b) {
  RequireSize(b.size(), a.size(), "l1 distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

double LinfDistance(std::span<const double> a, std::span<const double> b) {
  RequireSize(b.size(), a.size(), "linf distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

double LinfNorm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

std::vector<double> LossVector(const PayoffMatrix& a, const MixedStrategy& y) {
  RequireSize(y.size(), a.cols(), "loss vector");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * y[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> RewardVector(const PayoffMatrix& a, const MixedStrategy& x) {
  RequireSize(x.size(), a.rows(), "reward vector");
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += x[i] * a(i, j);
  }
  return out;
}

double Payoff(const PayoffMatrix& a, const MixedStrategy& x,
              const MixedStrategy& y) {
  RequireSize(x.size(), a.rows(), "payoff row strategy");
  return Dot(x.weights(), LossVector(a, y));
}

double DualityGap(const PayoffMatrix& a, const MixedStrategy& x,
                  const MixedStrategy& y) {
  const std::vector<double> reward = RewardVector(a, x);
  const std::vector<double> loss = LossVector(a, y);
  return *std::max_element(reward.begin(), reward.end()) -
         *std::min_element(loss.begin(), loss.end());
}

BestResponse BestResponseRow(const PayoffMatrix& a, const MixedStrategy& y) {
  const std::vector<double> loss = LossVector(a, y);
  // min_element returns the first minimum, i.e. the lowest index on ties.
  const auto idx = static_cast<std::size_t>(
      std::min_element(loss.begin(), loss.end()) - loss.begin());
  return {idx, MixedStrategy::Vertex(a.rows(), idx)};
}

BestResponse BestResponseCol(const PayoffMatrix& a, const MixedStrategy& x) {
  const std::vector<double> reward = RewardVector(a, x);
  const auto idx = static_cast<std::size_t>(
      std::max_element(reward.begin(), reward.end()) - reward.begin());
  return {idx, MixedStrategy::Vertex(a.cols(), idx)};
}

NashSolution SolveNash(const PayoffMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Shift so every entry is >= 1; the shifted game has value >= 1 and the
  // usual normalization z = x / value turns it into a bounded LP:
  //   max 1^T z  s.t.  B^T z <= 1,  z >= 0,   value(B) = 1 / sum(z).
  // The optimal duals, normalized the same way, give the column strategy.
  const double lowest = *std::min_element(a.entries().begin(), a.entries().end());
  const double shift = 1.0 - lowest;
  std::vector<double> bt(n * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) bt[j * m + i] = a(i, j) + shift;
  }
  const std::vector<double> ones_n(n, 1.0);
  const std::vector<double> ones_m(m, 1.0);
  LpSolution lp = MaximizeWithSlackBasis(n, m, bt, ones_n, ones_m);

  auto normalize = [](std::vector<double> v, const char* who) {
    double sum = 0.0;
    for (double& e : v) {
      e = std::max(e, 0.0);
      sum += e;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      throw SolverError(std::string("degenerate LP solution for ") + who);
    }
    for (double& e : v) e /= sum;
    return v;
  };
  MixedStrategy x(normalize(std::move(lp.primal), "row player"));
  MixedStrategy y(normalize(std::move(lp.dual), "column player"));
  const double value = Payoff(a, x, y);
  return NashSolution{std::move(x), std::move(y), value};
}

MixedStrategy ProjectOntoSimplex(std::span<const double> v) {
  if (v.empty()) throw DimensionError("projection of an empty vector");
  for (double e : v) {
    if (!std::isfinite(e)) throw std::invalid_argument("non-finite projection input");
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    prefix += sorted[k];
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> out(v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] - tau, 0.0);
    sum += out[i];
  }
  for (double& e : out) e /= sum;
  return MixedStrategy(std::move(out), MixedStrategy::Trusted{});
}

MixedStrategy Mixture(std::span<const double> coefficients,
                      std::span<const MixedStrategy> points) {
  RequireSize(points.size(), coefficients.size(), "mixture");
  if (points.empty()) throw DimensionError("mixture of zero points");
  const std::size_t k = points.front().size();
  std::vector<double> out(k, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    RequireSize(points[i].size(), k, "mixture component");
    if (coefficients[i] == 0.0) continue;
    for (std::size_t j = 0; j < k; ++j) out[j] += coefficients[i] * points[i][j];
  }
  double sum = 0.0;
  for (double& e : out) {
    e = std::max(e, 0.0);
    sum += e;
  }
  for (double& e : out) e /= sum;
  return MixedStrategy(std::move(out), MixedStrategy::Trusted{});
}

nlohmann::json ToJson(const PayoffMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(rows)}};
}

PayoffMatrix MatrixFromJson(const nlohmann::json& j, bool bounded) {
  try {
    // A bare array of rows is shorthand for the full object.
    const bool bare = j.is_array();
    const auto& entries = bare ? j : j.at("entries");
    const auto rows = bare ? j.size() : j.at("rows").get<std::size_t>();
    const auto cols = bare ? (j.empty() || !j.front().is_array() ? 0 : j.front().size())
                           : j.at("cols").get<std::size_t>();
    if (!entries.is_array() || entries.size() != rows) {
      throw DimensionError("matrix JSON: 'entries' must have 'rows' rows");
    }
    std::vector<double> flat;
    flat.reserve(rows * cols);
    for (const auto& row : entries) {
      if (!row.is_array() || row.size() != cols) {
        throw DimensionError("matrix JSON: each row must have 'cols' entries");
      }
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
    return bounded ? PayoffMatrix(rows, cols, std::move(flat))
                   : PayoffMatrix::Unbounded(rows, cols, std::move(flat));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("matrix JSON: ") + e.what());
  }
}

}  // namespace tvgame
