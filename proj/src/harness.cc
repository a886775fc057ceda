#include "tvgame/harness.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <set>
#include <sstream>

#include "tvgame/errors.h"
#include "tvgame/meta_learner.h"
#include "tvgame/svg_plot.h"

namespace tvgame {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::json RowToJson(const TraceRow& r) {
  return {{"t", r.t},
          {"reg_x", r.reg_x},
          {"reg_y", r.reg_y},
          {"dyn_ne_reg", r.dyn_ne_reg},
          {"ne_reg", r.ne_reg},
          {"dual_gap", r.dual_gap},
          {"p_t", r.p_t},
          {"v_t", r.v_t},
          {"w_t", r.w_t}};
}

nlohmann::json InvariantsToJson(const InvariantReport& r) {
  return {{"holds", r.holds()},
          {"checks", r.checks},
          {"violations", r.violations},
          {"worst_slack", r.worst_slack},
          {"first_violation", r.first_violation}};
}

nlohmann::json MeasuresToJson(const NonstationarityMeasures& m) {
  return {{"P_T", m.path_length},
          {"V_T", m.variation},
          {"W_T", m.deviation},
          {"Q_T", m.combined}};
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void CheckOrdering(InvariantReport& report, long t, const char* name,
                   double measure, double bound) {
  ++report.checks;
  const double slack = bound - measure;
  report.worst_slack = std::min(report.worst_slack, slack);
  if (slack < -1e-9 * (1.0 + std::abs(bound))) {
    if (report.violations == 0) {
      report.first_violation = {{"t", t}, {"check", name},
                                {"measure", measure}, {"bound", bound}};
    }
    ++report.violations;
  }
}

std::filesystem::path PrepareOutDir(const std::string& dir) {
  std::filesystem::path out(dir);
  std::filesystem::create_directories(out);
  return out;
}

PlotSeries SeriesFor(const std::vector<TraceRow>& rows, const std::string& measure,
                     std::string label, bool emphasized) {
  PlotSeries s;
  s.label = std::move(label);
  s.emphasized = emphasized;
  for (const TraceRow& r : rows) {
    s.t.push_back(static_cast<double>(r.t));
    s.values.push_back(MeasureValue(r, measure));
  }
  return s;
}

const char* MeasureTitle(const std::string& measure) {
  if (measure == "individual_regret") return "individual regret max{Reg^x, Reg^y}";
  if (measure == "dyn_ne_reg") return "dynamic NE-regret";
  return "duality gap";
}

std::string FormatEta(double eta) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", eta);
  return buf;
}

}  // namespace

GameSchedule BuildSchedule(const nlohmann::json& spec, long horizon) {
  try {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "stationary") {
      return GameSchedule::Stationary(MatrixFromJson(spec.at("matrix")), horizon);
    }
    if (kind == "two_phase") return GameSchedule::TwoPhase(horizon);
    if (kind == "appendix_g" || kind == "drifting_epochs") {
      return GameSchedule::DriftingEpochs(horizon);
    }
    if (kind == "periodic_drift") {
      return GameSchedule::PeriodicDrift(MatrixFromJson(spec.at("matrix")),
                                         spec.at("scales").get<std::vector<double>>(),
                                         horizon);
    }
    if (kind == "file") {
      GameSchedule s = spec.contains("path")
                           ? GameSchedule::FromFile(spec.at("path").get<std::string>())
                           : GameSchedule::FromJson({{"T", horizon}, {"steps", spec.at("steps")}});
      if (s.horizon() != horizon) {
        throw ConfigError("schedule file covers T = " + std::to_string(s.horizon()) +
                          " but the run asks for T = " + std::to_string(horizon));
      }
      return s;
    }
    if (kind == "adversarial_opponent") return BuildSchedule(spec.at("base"), horizon);
    throw ConfigError("unknown schedule kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("schedule spec: ") + e.what());
  } catch (const DimensionError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("schedule spec: ") + e.what());
  }
}

RunConfig ParseRunConfig(const nlohmann::json& j) {
  static const std::set<std::string> kKnown = {
      "schedule", "x", "y", "T", "stride", "out_dir", "name",
      "c", "plot", "sweep_etas", "seed"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.contains(key)) throw ConfigError("unknown config key: " + key);
  }
  RunConfig config;
  try {
    if (j.contains("schedule")) config.schedule = j.at("schedule");
    if (j.contains("x")) config.x = PlayerSpecFromJson(j.at("x"));
    if (j.contains("y")) config.y = PlayerSpecFromJson(j.at("y"));
    if (j.contains("T")) config.horizon = j.at("T").get<long>();
    if (j.contains("stride")) config.stride = j.at("stride").get<long>();
    if (j.contains("out_dir")) config.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("name")) config.name = j.at("name").get<std::string>();
    if (j.contains("c")) config.c = j.at("c").get<double>();
    if (j.contains("plot")) config.plot = j.at("plot").get<bool>();
    if (j.contains("sweep_etas")) {
      config.sweep_etas = j.at("sweep_etas").get<std::vector<double>>();
    }
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (!config.schedule.is_object() || !config.schedule.contains("kind")) {
    throw ConfigError("schedule spec needs a \"kind\"");
  }
  if (config.schedule.at("kind") == "adversarial_opponent") {
    if (j.contains("y") && config.y.type != PlayerSpec::Type::kAdversarialBestResponse) {
      throw ConfigError("adversarial_opponent schedule fixes the y-player");
    }
    config.y = PlayerSpec::Adversary();
  }
  if (config.horizon < 2) throw ConfigError("T must be >= 2");
  if (config.stride < 1) throw ConfigError("stride must be >= 1");
  if (!(config.c > 0.0) || !std::isfinite(config.c)) {
    throw ConfigError("c must be positive and finite");
  }
  for (double eta : config.sweep_etas) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      throw ConfigError("sweep etas must be positive and finite");
    }
  }
  if (config.name.empty() || config.name.find('/') != std::string::npos) {
    throw ConfigError("name must be a plain file stem");
  }
  return config;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return ParseRunConfig(j);
}

nlohmann::json ToJson(const RunConfig& config) {
  return {{"schedule", config.schedule},
          {"x", ToJson(config.x)},
          {"y", ToJson(config.y)},
          {"T", config.horizon},
          {"stride", config.stride},
          {"out_dir", config.out_dir},
          {"name", config.name},
          {"c", config.c},
          {"plot", config.plot},
          {"sweep_etas", config.sweep_etas},
          {"seed", config.seed}};
}

void WriteTraceCsv(const std::vector<TraceRow>& rows, std::ostream& out) {
  out << kTraceHeader << '\n';
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), ",%.12g", v);
    out << buf;
  };
  for (const TraceRow& r : rows) {
    out << r.t;
    for (double v : {r.reg_x, r.reg_y, r.dyn_ne_reg, r.ne_reg, r.dual_gap, r.p_t,
                     r.v_t, r.w_t, r.eps_x, r.eps_y, r.meta_entropy_x,
                     r.meta_entropy_y}) {
      put(v);
    }
    out << '\n';
  }
}

std::vector<TraceRow> ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw ConfigError("trace CSV: missing or unexpected header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 13) throw ConfigError("trace CSV: expected 13 columns");
    std::vector<double> v;
    for (std::size_t k = 1; k < cells.size(); ++k) v.push_back(std::strtod(cells[k].c_str(), nullptr));
    rows.push_back(TraceRow{std::stol(cells[0]), v[0], v[1], v[2], v[3], v[4],
                            v[5], v[6], v[7], v[8], v[9], v[10], v[11]});
  }
  return rows;
}

RunResult Simulate(const GameSchedule& schedule, const PlayerSpec& x,
                   const PlayerSpec& y, long stride, double c) {
  if (stride < 1) throw ConfigError("stride must be >= 1");
  const long horizon = schedule.horizon();
  const std::size_t m = schedule.rows();
  const std::size_t n = schedule.cols();
  std::unique_ptr<Player> px = MakePlayer(x, Role::kRow, m, horizon, c);
  std::unique_ptr<Player> py = MakePlayer(y, Role::kColumn, n, horizon, c);

  MetricsAccumulator acc(m, n, AverageMatrix(schedule));
  RunResult result;
  std::vector<double> gy(n);
  for (long t = 1; t <= horizon; ++t) {
    const PayoffMatrix a = schedule.MatrixAt(t);
    if (schedule.ClampedAt(t)) ++result.clamped_rounds;

    const MixedStrategy xt = px->Decide(RoundContext{&a, nullptr});
    const MixedStrategy yt = py->Decide(RoundContext{&a, &xt});
    acc.Step(a, xt, yt);
    px->Feed(LossVector(a, yt));
    const std::vector<double> reward = RewardVector(a, xt);
    for (std::size_t j = 0; j < n; ++j) gy[j] = -reward[j];
    py->Feed(gy);

    const double gap = acc.dual_gap();
    CheckOrdering(result.invariants, t, "reg_x <= dual_gap", acc.regret_x(), gap);
    CheckOrdering(result.invariants, t, "reg_y <= dual_gap", acc.regret_y(), gap);
    CheckOrdering(result.invariants, t, "dyn_ne_reg <= dual_gap",
                  acc.dynamic_ne_regret(), gap);

    if (t % stride == 0 || t == horizon) {
      CheckOrdering(result.invariants, t, "v_t <= 4 w_t", acc.variation(),
                    4.0 * acc.deviation());
      result.rows.push_back(TraceRow{t, acc.regret_x(), acc.regret_y(),
                                     acc.dynamic_ne_regret(), acc.ne_regret(), gap,
                                     acc.path_length(), acc.variation(),
                                     acc.deviation(), px->epsilon(), py->epsilon(),
                                     px->weight_entropy(), py->weight_entropy()});
    }
  }
  result.distinct_matrices = acc.nash_cache().size();
  result.measures = NonstationarityMeasures{
      acc.path_length(), acc.variation(), acc.deviation(),
      acc.variation() + std::min(acc.path_length(), acc.deviation())};
  return result;
}

RunResult RunCommand(const RunConfig& config) {
  const GameSchedule schedule = BuildSchedule(config.schedule, config.horizon);
  RunResult result = Simulate(schedule, config.x, config.y, config.stride, config.c);

  const std::filesystem::path out = PrepareOutDir(config.out_dir);
  std::ostringstream csv;
  WriteTraceCsv(result.rows, csv);
  WriteFile(out / (config.name + ".csv"), csv.str());

  nlohmann::json summary{{"config", ToJson(config)},
                         {"final", RowToJson(result.final_row())},
                         {"measures", MeasuresToJson(result.measures)},
                         {"clamped_rounds", result.clamped_rounds},
                         {"distinct_matrices", result.distinct_matrices},
                         {"invariants", InvariantsToJson(result.invariants)}};
  WriteFile(out / (config.name + ".json"), summary.dump(2) + "\n");

  if (config.plot) {
    std::vector<PlotPanel> panels;
    for (const std::string& measure : SweepMeasures()) {
      panels.push_back(PlotPanel{MeasureTitle(measure),
                                 {SeriesFor(result.rows, measure,
                                            std::string(ToString(config.x.type)) + " vs " +
                                                std::string(ToString(config.y.type)),
                                            true)}});
    }
    WriteFile(out / (config.name + ".svg"), RenderSvg(config.name, panels));
  }
  return result;
}

const std::vector<std::string>& SweepMeasures() {
  static const std::vector<std::string> kMeasures = {"individual_regret",
                                                     "dyn_ne_reg", "dual_gap"};
  return kMeasures;
}

double MeasureValue(const TraceRow& row, const std::string& measure) {
  if (measure == "individual_regret") return std::max(row.reg_x, row.reg_y);
  if (measure == "dyn_ne_reg") return row.dyn_ne_reg;
  if (measure == "dual_gap") return row.dual_gap;
  if (measure == "ne_reg") return row.ne_reg;
  throw std::invalid_argument("unknown measure: " + measure);
}

SweepResult RunSweep(const RunConfig& config) {
  const GameSchedule schedule = BuildSchedule(config.schedule, config.horizon);
  const LearnerKind kind = config.x.kind;
  std::vector<double> etas = config.sweep_etas;
  if (etas.empty()) {
    etas = StepSizePool::Make(config.horizon,
                              DrvuParamsFor(kind, schedule.rows(), config.horizon),
                              config.c)
               .etas;
  }

  struct Job {
    std::string label;
    double eta;
    PlayerSpec spec;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    jobs.push_back(Job{"eta_" + std::to_string(i + 1), etas[i],
                       PlayerSpec::SingleBase(kind, etas[i])});
  }
  jobs.push_back(Job{"two_layer", kNaN, PlayerSpec::TwoLayer(kind)});

  std::vector<std::future<RunResult>> futures;
  for (const Job& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&schedule, &config, &job] {
      return Simulate(schedule, job.spec, job.spec, config.stride, config.c);
    }));
  }
  std::vector<RunResult> results;
  for (auto& f : futures) results.push_back(f.get());

  const std::filesystem::path out = PrepareOutDir(config.out_dir);
  SweepResult sweep;
  nlohmann::json runs = nlohmann::json::array();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const std::string file = config.name + "_" + jobs[k].label + ".csv";
    std::ostringstream csv;
    WriteTraceCsv(results[k].rows, csv);
    WriteFile(out / file, csv.str());
    SweepEntry entry{jobs[k].label, jobs[k].eta, results[k].final_row(),
                     (out / file).string()};
    sweep.invariants_hold = sweep.invariants_hold && results[k].invariants.holds();
    nlohmann::json run{{"label", entry.label},
                       {"csv", file},
                       {"final", RowToJson(entry.final_row)},
                       {"invariants", InvariantsToJson(results[k].invariants)}};
    if (!std::isnan(entry.eta)) run["eta"] = entry.eta;
    runs.push_back(std::move(run));
    if (k + 1 < jobs.size()) {
      sweep.single.push_back(std::move(entry));
    } else {
      sweep.two_layer = std::move(entry);
    }
  }

  nlohmann::json table = nlohmann::json::array();
  for (const std::string& measure : SweepMeasures()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sweep.single.size(); ++i) {
      if (MeasureValue(sweep.single[i].final_row, measure) <
          MeasureValue(sweep.single[best].final_row, measure)) {
        best = i;
      }
    }
    MeasureComparison cmp;
    cmp.measure = measure;
    cmp.best_index = best;
    cmp.best_eta = sweep.single[best].eta;
    cmp.best_value = MeasureValue(sweep.single[best].final_row, measure);
    cmp.two_layer_value = MeasureValue(sweep.two_layer.final_row, measure);
    cmp.ratio = cmp.best_value > 0.0 ? cmp.two_layer_value / cmp.best_value
                : cmp.two_layer_value <= cmp.best_value
                    ? 1.0
                    : std::numeric_limits<double>::infinity();
    table.push_back({{"measure", measure},
                     {"best_label", sweep.single[best].label},
                     {"best_eta", cmp.best_eta},
                     {"best_value", cmp.best_value},
                     {"two_layer_value", cmp.two_layer_value},
                     {"ratio", std::isfinite(cmp.ratio) ? nlohmann::json(cmp.ratio)
                                                        : nlohmann::json("inf")}});
    sweep.comparisons.push_back(cmp);
  }

  sweep.summary = {{"config", ToJson(config)},
                   {"measures", MeasuresToJson(results.back().measures)},
                   {"clamped_rounds", results.back().clamped_rounds},
                   {"runs", std::move(runs)},
                   {"comparison", std::move(table)},
                   {"invariants_hold", sweep.invariants_hold}};
  WriteFile(out / (config.name + "_summary.json"), sweep.summary.dump(2) + "\n");

  if (config.plot) {
    std::vector<PlotPanel> panels;
    for (const std::string& measure : SweepMeasures()) {
      PlotPanel panel{MeasureTitle(measure), {}};
      std::set<std::size_t> shown;
      for (const MeasureComparison& cmp : sweep.comparisons) {
        if (!shown.insert(cmp.best_index).second) continue;
        panel.series.push_back(SeriesFor(results[cmp.best_index].rows, measure,
                                         "best tuning (" + cmp.measure +
                                             "), eta=" + FormatEta(cmp.best_eta),
                                         false));
      }
      panel.series.push_back(SeriesFor(results.back().rows, measure, "two-layer", true));
      panels.push_back(std::move(panel));
    }
    WriteFile(out / (config.name + ".svg"), RenderSvg(config.name, panels));
  }
  return sweep;
}

}  // namespace tvgame
