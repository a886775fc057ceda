#ifndef TVGAME_ERRORS_H_
#define TVGAME_ERRORS_H_

#include <stdexcept>

namespace tvgame {

// Operands disagree on the number of rows, columns or actions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The LP failed to reach an optimal basis (unbounded ray or pivot budget
// exhausted). Never expected for bounded payoff matrices.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed run configuration or schedule file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tvgame

#endif  // TVGAME_ERRORS_H_
