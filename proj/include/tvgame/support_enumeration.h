#ifndef TVGAME_SUPPORT_ENUMERATION_H_
#define TVGAME_SUPPORT_ENUMERATION_H_

#include <optional>

#include "tvgame/matrix_game.h"

namespace tvgame {

// Reference solver that shares no code with the simplex path: enumerates
// every pair of equal-size row/column supports, solves the bordered kernel
// system for each square submatrix and keeps the first candidate that is a
// saddle point of the full game. Exponential in min(m, n); intended for
// small verification matrices only.
struct EnumeratedEquilibrium {
  std::vector<double> x;
  std::vector<double> y;
  double value;
};

std::optional<EnumeratedEquilibrium> EnumerateSupports(const PayoffMatrix& a,
                                                       double tolerance = 1e-9);

}  // namespace tvgame

#endif  // TVGAME_SUPPORT_ENUMERATION_H_
