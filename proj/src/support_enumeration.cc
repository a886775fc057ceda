#include "tvgame/support_enumeration.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace tvgame {
namespace {

// Gaussian elimination with partial pivoting on a dense (n x n) system.
std::optional<std::vector<double>> SolveDense(std::vector<double> a,
                                              std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) < 1e-12) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return x;
}

// Solves  sum_c M[r][c] w_c = v for every r,  sum_c w_c = 1  for (w, v),
// where M is k x k given by the accessor.
template <typename Entry>
std::optional<std::vector<double>> SolveKernel(std::size_t k, Entry entry) {
  const std::size_t n = k + 1;
  std::vector<double> sys(n * n, 0.0);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) sys[r * n + c] = entry(r, c);
    sys[r * n + k] = -1.0;
  }
  for (std::size_t c = 0; c < k; ++c) sys[k * n + c] = 1.0;
  rhs[k] = 1.0;
  return SolveDense(std::move(sys), std::move(rhs));
}

bool NextCombination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<EnumeratedEquilibrium> EnumerateSupports(const PayoffMatrix& a,
                                                       double tolerance) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    std::vector<std::size_t> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = i;
    do {
      std::vector<std::size_t> cols(k);
      for (std::size_t i = 0; i < k; ++i) cols[i] = i;
      do {
        auto ys = SolveKernel(k, [&](std::size_t r, std::size_t c) {
          return a(rows[r], cols[c]);
        });
        if (!ys) continue;
        auto xs = SolveKernel(k, [&](std::size_t r, std::size_t c) {
          return a(rows[c], cols[r]);
        });
        if (!xs) continue;
        const double v = (*ys)[k];
        if (std::abs(v - (*xs)[k]) > tolerance) continue;

        EnumeratedEquilibrium eq{std::vector<double>(m, 0.0),
                                 std::vector<double>(n, 0.0), v};
        bool nonnegative = true;
        for (std::size_t i = 0; i < k; ++i) {
          nonnegative = nonnegative && (*xs)[i] >= -tolerance && (*ys)[i] >= -tolerance;
          eq.x[rows[i]] = (*xs)[i];
          eq.y[cols[i]] = (*ys)[i];
        }
        if (!nonnegative) continue;

        bool saddle = true;
        for (std::size_t j = 0; j < n && saddle; ++j) {
          double col = 0.0;
          for (std::size_t i = 0; i < m; ++i) col += eq.x[i] * a(i, j);
          saddle = col <= v + tolerance;
        }
        for (std::size_t i = 0; i < m && saddle; ++i) {
          double row = 0.0;
          for (std::size_t j = 0; j < n; ++j) row += a(i, j) * eq.y[j];
          saddle = row >= v - tolerance;
        }
        if (saddle) return eq;
      } while (NextCombination(cols, n));
    } while (NextCombination(rows, m));
  }
  return std::nullopt;
}

}  // namespace tvgame
