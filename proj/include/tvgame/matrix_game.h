#ifndef TVGAME_MATRIX_GAME_H_
#define TVGAME_MATRIX_GAME_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "json.hpp"
#include "tvgame/errors.h"

namespace tvgame {

// Dense row-major m x n payoff matrix. Entry (i, j) is the loss of the row
// (x) player and the reward of the column (y) player.
//
// The regular constructor enforces entries in [-1, 1]. Cumulative matrices
// (sums of per-round games) go through Unbounded(), which only requires
// finite entries.
class PayoffMatrix {
 public:
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static PayoffMatrix Unbounded(std::size_t rows, std::size_t cols,
                                std::vector<double> entries);
  static PayoffMatrix Zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const double> entries() const { return entries_; }
  bool bounded() const { return bounded_; }

  // Entrywise max norm ||A||_inf = max_ij |A_ij|.
  double MaxNorm() const;
  // A + B, A - B and s * A. Results are unbounded matrices.
  PayoffMatrix Plus(const PayoffMatrix& other) const;
  PayoffMatrix Minus(const PayoffMatrix& other) const;
  PayoffMatrix Scaled(double factor) const;

  friend bool operator==(const PayoffMatrix& a, const PayoffMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries,
               bool bounded);

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
  bool bounded_;
};

// A point on the probability simplex Delta_k.
class MixedStrategy {
 public:
  // Validates nonnegativity and unit sum (within kSumTolerance) and then
  // renormalizes so the stored weights sum to 1 as closely as doubles allow.
  explicit MixedStrategy(std::vector<double> weights);

  static MixedStrategy Uniform(std::size_t k);
  static MixedStrategy Vertex(std::size_t k, std::size_t index);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  friend bool operator==(const MixedStrategy& a, const MixedStrategy& b) {
    return a.weights_ == b.weights_;
  }

  static constexpr double kSumTolerance = 1e-12;

 private:
  struct Trusted {};
  MixedStrategy(std::vector<double> weights, Trusted);
  friend MixedStrategy ProjectOntoSimplex(std::span<const double> v);
  friend MixedStrategy Mixture(std::span<const double> coefficients,
                               std::span<const MixedStrategy> points);

  std::vector<double> weights_;
};

struct NashSolution {
  MixedStrategy x_star;
  MixedStrategy y_star;
  double value;
};

struct BestResponse {
  std::size_t index;
  MixedStrategy strategy;
};

// x^T A y.
double Payoff(const PayoffMatrix& a, const MixedStrategy& x,
              const MixedStrategy& y);
// A y, the loss vector seen by the row player.
std::vector<double> LossVector(const PayoffMatrix& a, const MixedStrategy& y);
// x^T A, the reward vector seen by the column player.
std::vector<double> RewardVector(const PayoffMatrix& a, const MixedStrategy& x);

// max_j (x^T A)_j - min_i (A y)_i. Nonnegative; zero exactly at equilibria.
double DualityGap(const PayoffMatrix& a, const MixedStrategy& x,
                  const MixedStrategy& y);

// Vertex minimizing x^T A y over x (row) or maximizing over y (column).
// Ties go to the lowest index.
BestResponse BestResponseRow(const PayoffMatrix& a, const MixedStrategy& y);
BestResponse BestResponseCol(const PayoffMatrix& a, const MixedStrategy& x);

// Exact equilibrium of the zero-sum game via the dense simplex method with
// Bland's rule. Deterministic for identical input. Accepts unbounded
// matrices; callers should rescale large cumulative matrices first.
NashSolution SolveNash(const PayoffMatrix& a);

// Euclidean projection onto the simplex, sort-then-threshold.
MixedStrategy ProjectOntoSimplex(std::span<const double> v);

// sum_i coefficients[i] * points[i]; coefficients must lie on the simplex.
MixedStrategy Mixture(std::span<const double> coefficients,
                      std::span<const MixedStrategy> points);

// Small vector helpers shared across modules.
double Dot(std::span<const double> a, std::span<const double> b);
double L1Distance(std::span<const double> a, std::span<const double> b);
double LinfDistance(std::span<const double> a, std::span<const double> b);
double LinfNorm(std::span<const double> a);

// {"rows": m, "cols": n, "entries": [[...], ...]}; unbounded matrices
// serialize the same way and are read back with bounded = false. The reader
// also accepts the bare "entries" array.
nlohmann::json ToJson(const PayoffMatrix& a);
PayoffMatrix MatrixFromJson(const nlohmann::json& j, bool bounded = true);

}  // namespace tvgame

#endif  // TVGAME_MATRIX_GAME_H_
