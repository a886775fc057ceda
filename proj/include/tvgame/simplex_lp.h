#ifndef TVGAME_SIMPLEX_LP_H_
#define TVGAME_SIMPLEX_LP_H_

#include <cstddef>
#include <span>
#include <vector>

namespace tvgame {

struct LpSolution {
  std::vector<double> primal;  // z, one entry per column of the constraint matrix
  std::vector<double> dual;    // one multiplier per constraint row
  double objective;
  int pivots;
};

// Solves   maximize c^T z  subject to  M z <= b,  z >= 0
// where M is `rows` x `cols` (row-major) and b >= 0, so the all-slack basis
// is feasible and no phase one is needed. Dense tableau, Bland's rule for
// both the entering and the leaving variable.
//
// Throws SolverError when the problem is unbounded or the pivot budget is
// exhausted.
LpSolution MaximizeWithSlackBasis(std::size_t rows, std::size_t cols,
                                  std::span<const double> m,
                                  std::span<const double> b,
                                  std::span<const double> c);

}  // namespace tvgame

#endif  // TVGAME_SIMPLEX_LP_H_
