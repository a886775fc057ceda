#include "tvgame/simplex_lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tvgame/errors.h"

namespace tvgame {
namespace {

constexpr double kReducedCostTolerance = 1e-11;
constexpr double kPivotTolerance = 1e-12;
constexpr int kMaxPivots = 100000;

}  // namespace

LpSolution MaximizeWithSlackBasis(std::size_t rows, std::size_t cols,
                                  std::span<const double> m,
                                  std::span<const double> b,
                                  std::span<const double> c) {
  if (m.size() != rows * cols || b.size() != rows || c.size() != cols) {
    throw DimensionError("LP operand sizes do not match the declared shape");
  }
  for (double bi : b) {
    if (!(bi >= 0.0)) {
      throw SolverError("slack basis infeasible: negative right-hand side");
    }
  }

  // Tableau columns: originals [0, cols), slacks [cols, cols + rows), rhs.
  const std::size_t vars = cols + rows;
  const std::size_t width = vars + 1;
  std::vector<double> tab(rows * width, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) tab[i * width + j] = m[i * cols + j];
    tab[i * width + cols + i] = 1.0;
    tab[i * width + vars] = b[i];
  }
  // reduced[j] = c_j - c_B^T B^{-1} a_j; the last slot holds -objective.
  std::vector<double> reduced(width, 0.0);
  for (std::size_t j = 0; j < cols; ++j) reduced[j] = c[j];

  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  int pivots = 0;
  while (true) {
    std::size_t entering = vars;
    for (std::size_t j = 0; j < vars; ++j) {
      if (reduced[j] > kReducedCostTolerance) {
        entering = j;
        break;
      }
    }
    if (entering == vars) break;

    std::size_t leaving = rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      const double a = tab[i * width + entering];
      if (a <= kPivotTolerance) continue;
      const double ratio = tab[i * width + vars] / a;
      const bool tie = leaving != rows &&
                       std::abs(ratio - best_ratio) <=
                           kPivotTolerance * std::max(1.0, std::abs(best_ratio));
      if (ratio < best_ratio && !tie) {
        best_ratio = ratio;
        leaving = i;
      } else if (tie && basis[i] < basis[leaving]) {
        leaving = i;
      }
    }
    if (leaving == rows) {
      throw SolverError("LP is unbounded in column " + std::to_string(entering));
    }
    if (++pivots > kMaxPivots) {
      throw SolverError("LP pivot budget exhausted");
    }

    double* prow = &tab[leaving * width];
    const double pivot = prow[entering];
    for (std::size_t j = 0; j < width; ++j) prow[j] /= pivot;
    prow[entering] = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leaving) continue;
      double* row = &tab[i * width];
      const double factor = row[entering];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) row[j] -= factor * prow[j];
      row[entering] = 0.0;
    }
    const double factor = reduced[entering];
    for (std::size_t j = 0; j < width; ++j) reduced[j] -= factor * prow[j];
    reduced[entering] = 0.0;
    basis[leaving] = entering;
  }

  LpSolution out;
  out.primal.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) out.primal[basis[i]] = tab[i * width + vars];
  }
  out.dual.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) out.dual[i] = -reduced[cols + i];
  out.objective = -reduced[vars];
  out.pivots = pivots;
  return out;
}

}  // namespace tvgame
