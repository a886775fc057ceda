#ifndef TVGAME_VERIFY_H_
#define TVGAME_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvgame/matrix_game.h"

namespace tvgame {

struct VerifyReport {
  std::string suite;
  long cases = 0;
  long violations = 0;
  double worst = 0.0;  // suite-specific worst observed error or slack
  nlohmann::json first_counterexample;  // null when nothing failed

  bool passed() const { return violations == 0; }
  nlohmann::json ToJson() const;
};

// Seeded loss sequence (||g||_inf <= 1) and comparator sequence for DRVU
// checks. The seed picks one of several loss shapes (i.i.d., slowly
// drifting, alternating) and comparator shapes (random walk on the simplex,
// sparse vertex switches, best fixed vertex in hindsight).
struct DrvuInstance {
  std::vector<std::vector<double>> losses;
  std::vector<MixedStrategy> comparators;
};
DrvuInstance MakeDrvuInstance(std::uint64_t seed, long horizon, std::size_t dim);

// sequences x {hedge, ogd} x {0.01, 0.1}.
VerifyReport VerifyDrvu(std::uint64_t seed, int sequences = 100,
                        long horizon = 500, std::size_t dim = 3);

// SolveNash against support enumeration on random matrices, 2 <= m, n <= 5:
// values within 1e-6 and LP strategies saddle points at 1e-8.
VerifyReport VerifyOracle(std::uint64_t seed, int matrices = 1000);

// Measure orderings and V_T <= 4 W_T over a fixed set of short simulations
// plus one seeded piecewise-constant random schedule.
VerifyReport VerifyInvariants(std::uint64_t seed);

}  // namespace tvgame

#endif  // TVGAME_VERIFY_H_
