#ifndef TVGAME_HARNESS_H_
#define TVGAME_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvgame/environments.h"
#include "tvgame/metrics.h"
#include "tvgame/players.h"

namespace tvgame {

// Schedule spec objects, keyed by "kind":
//   {"kind": "stationary", "matrix": [[1, -1], [-1, 1]]}
//   {"kind": "two_phase"}
//   {"kind": "appendix_g"}                  (alias "drifting_epochs")
//   {"kind": "periodic_drift", "matrix": ..., "scales": [1, -1]}
//   {"kind": "file", "path": "steps.json"}  or inline {"kind": "file", "steps": [...]}
//   {"kind": "adversarial_opponent", "base": {...}}
// The last one plays `base` against a best-responding y-player and is
// resolved by ParseRunConfig.
GameSchedule BuildSchedule(const nlohmann::json& spec, long horizon);

struct RunConfig {
  nlohmann::json schedule = {{"kind", "stationary"},
                             {"matrix", {{1, -1}, {-1, 1}}}};
  PlayerSpec x = PlayerSpec::TwoLayer(LearnerKind::kHedgeFixedShare);
  PlayerSpec y = PlayerSpec::TwoLayer(LearnerKind::kHedgeFixedShare);
  long horizon = 10000;
  long stride = 100;
  std::string out_dir = ".";
  std::string name = "run";  // file stem for traces, plots and summaries
  double c = 0.5;
  bool plot = true;
  // Sweep only: single-eta base learners to compare against. Empty means
  // the two-layer pool for (x.kind, T, c).
  std::vector<double> sweep_etas;
  // Seeds the randomized verification suites; simulations are deterministic.
  std::uint64_t seed = 0;
};

// JSON object with the RunConfig field names ("T" for the horizon, "x" and
// "y" for player specs). Unknown keys are rejected. Throws ConfigError.
RunConfig ParseRunConfig(const nlohmann::json& j);
RunConfig LoadRunConfig(const std::string& path);
nlohmann::json ToJson(const RunConfig& config);

struct TraceRow {
  long t;
  double reg_x, reg_y, dyn_ne_reg, ne_reg, dual_gap;
  double p_t, v_t, w_t;
  double eps_x, eps_y, meta_entropy_x, meta_entropy_y;
};

inline constexpr const char* kTraceHeader =
    "t,reg_x,reg_y,dyn_ne_reg,ne_reg,dual_gap,p_t,v_t,w_t,eps_x,eps_y,"
    "meta_entropy_x,meta_entropy_y";

void WriteTraceCsv(const std::vector<TraceRow>& rows, std::ostream& out);
std::vector<TraceRow> ReadTraceCsv(std::istream& in);

// Orderings that must hold on every prefix of every trace:
//   Reg^x <= Dual-Gap, Reg^y <= Dual-Gap, DynNE-Reg <= Dual-Gap,
// checked each round, and V_t <= 4 W_t, checked on sampled rows.
struct InvariantReport {
  long checks = 0;
  long violations = 0;
  double worst_slack = 0.0;  // most negative (bound - measure) seen
  nlohmann::json first_violation;

  bool holds() const { return violations == 0; }
};

struct RunResult {
  std::vector<TraceRow> rows;  // strictly increasing t, last row at T
  long clamped_rounds = 0;
  std::size_t distinct_matrices = 0;
  NonstationarityMeasures measures;
  InvariantReport invariants;

  const TraceRow& final_row() const { return rows.back(); }
};

// The round loop: decide x, decide y, reveal A_t, feed both, update metrics.
// A first pass over the schedule supplies Abar for W_t. Single-threaded.
RunResult Simulate(const GameSchedule& schedule, const PlayerSpec& x,
                   const PlayerSpec& y, long stride = 100, double c = 0.5);

// Builds the schedule, simulates, and writes <out>/<name>.csv,
// <out>/<name>.json (run summary) and, if enabled, <out>/<name>.svg.
RunResult RunCommand(const RunConfig& config);

struct SweepEntry {
  std::string label;   // "two_layer" or "eta_<i>"
  double eta;          // NaN for the two-layer run
  TraceRow final_row;
  std::string csv_path;
};

struct MeasureComparison {
  std::string measure;  // "individual_regret", "dyn_ne_reg", "dual_gap"
  std::size_t best_index;  // into SweepResult::single
  double best_eta;
  double best_value;
  double two_layer_value;
  double ratio;  // two_layer_value / best_value
};

struct SweepResult {
  std::vector<SweepEntry> single;
  SweepEntry two_layer;
  std::vector<MeasureComparison> comparisons;
  bool invariants_hold = true;
  nlohmann::json summary;
};

// Individual regret is max{Reg^x, Reg^y}.
double MeasureValue(const TraceRow& row, const std::string& measure);
const std::vector<std::string>& SweepMeasures();

// Self-play of single_base(eta) for every sweep eta plus two_layer self-play,
// run on worker threads and joined. Writes one CSV per run, <name>_summary.json
// and <name>.svg into out_dir.
SweepResult RunSweep(const RunConfig& config);

}  // namespace tvgame

#endif  // TVGAME_HARNESS_H_
