#include "tvgame/verify.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "tvgame/harness.h"
#include "tvgame/learners.h"
#include "tvgame/support_enumeration.h"

namespace tvgame {
namespace {

MixedStrategy RandomSimplexPoint(std::mt19937_64& rng, std::size_t dim) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(dim);
  double sum = 0.0;
  for (double& v : w) sum += (v = e(rng));
  for (double& v : w) v /= sum;
  return ProjectOntoSimplex(w);
}

void Record(VerifyReport& report, bool ok, const nlohmann::json& detail) {
  ++report.cases;
  if (ok) return;
  if (report.violations == 0) report.first_counterexample = detail;
  ++report.violations;
}

}  // namespace

nlohmann::json VerifyReport::ToJson() const {
  return {{"suite", suite},
          {"cases", cases},
          {"violations", violations},
          {"worst", worst},
          {"passed", passed()},
          {"first_counterexample", first_counterexample}};
}

DrvuInstance MakeDrvuInstance(std::uint64_t seed, long horizon, std::size_t dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  DrvuInstance inst;

  const int loss_shape = static_cast<int>(seed % 3);
  std::vector<double> base(dim);
  for (double& v : base) v = unit(rng);
  for (long t = 0; t < horizon; ++t) {
    std::vector<double> g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      switch (loss_shape) {
        case 0:
          g[i] = unit(rng);
          break;
        case 1:
          base[i] = std::clamp(base[i] + 0.05 * unit(rng), -1.0, 1.0);
          g[i] = base[i];
          break;
        default:
          g[i] = (t % 2 == 0 ? 1.0 : -1.0) * base[i];
          break;
      }
    }
    inst.losses.push_back(std::move(g));
  }

  const int comparator_shape = static_cast<int>((seed / 3) % 3);
  if (comparator_shape == 0) {
    MixedStrategy u = RandomSimplexPoint(rng, dim);
    for (long t = 0; t < horizon; ++t) {
      if (prob(rng) < 0.1) u = RandomSimplexPoint(rng, dim);
      inst.comparators.push_back(u);
    }
  } else if (comparator_shape == 1) {
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    MixedStrategy u = MixedStrategy::Vertex(dim, pick(rng));
    for (long t = 0; t < horizon; ++t) {
      if (prob(rng) < 0.02) u = MixedStrategy::Vertex(dim, pick(rng));
      inst.comparators.push_back(u);
    }
  } else {
    std::vector<double> total(dim, 0.0);
    for (const auto& g : inst.losses) {
      for (std::size_t i = 0; i < dim; ++i) total[i] += g[i];
    }
    const std::size_t best = static_cast<std::size_t>(
        std::min_element(total.begin(), total.end()) - total.begin());
    inst.comparators.assign(horizon, MixedStrategy::Vertex(dim, best));
  }
  return inst;
}

VerifyReport VerifyDrvu(std::uint64_t seed, int sequences, long horizon,
                        std::size_t dim) {
  VerifyReport report;
  report.suite = "drvu";
  report.worst = std::numeric_limits<double>::infinity();  // smallest rhs - lhs
  for (int s = 0; s < sequences; ++s) {
    const std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(s);
    const DrvuInstance inst = MakeDrvuInstance(instance_seed, horizon, dim);
    for (LearnerKind kind : {LearnerKind::kHedgeFixedShare, LearnerKind::kOptimisticOgd}) {
      for (double eta : {0.01, 0.1}) {
        const DrvuReport r = DrvuCheck(kind, eta, inst.losses, inst.comparators);
        report.worst = std::min(report.worst, r.rhs - r.lhs);
        Record(report, r.holds,
               {{"seed", instance_seed},
                {"kind", std::string(ToString(kind))},
                {"eta", eta},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"path_length", r.path_length},
                {"variation", r.variation},
                {"stability", r.stability}});
      }
    }
  }
  return report;
}

VerifyReport VerifyOracle(std::uint64_t seed, int matrices) {
  VerifyReport report;
  report.suite = "oracle";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, 5);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int k = 0; k < matrices; ++k) {
    const std::size_t m = size(rng);
    const std::size_t n = size(rng);
    std::vector<double> e(m * n);
    for (double& v : e) v = entry(rng);
    const PayoffMatrix a(m, n, e);

    const NashSolution lp = SolveNash(a);
    const auto enumerated = EnumerateSupports(a);
    const double gap = DualityGap(a, lp.x_star, lp.y_star);
    const double diff = enumerated ? std::abs(lp.value - enumerated->value)
                                   : std::numeric_limits<double>::infinity();
    report.worst = std::max(report.worst, diff);
    Record(report, enumerated && diff <= 1e-6 && gap <= 1e-8,
           {{"index", k},
            {"matrix", ToJson(a)},
            {"lp_value", lp.value},
            {"oracle_value", enumerated ? nlohmann::json(enumerated->value)
                                        : nlohmann::json(nullptr)},
            {"lp_gap", gap}});
  }
  return report;
}

VerifyReport VerifyInvariants(std::uint64_t seed) {
  VerifyReport report;
  report.suite = "invariants";
  report.worst = 0.0;  // most negative slack

  struct Case {
    std::string name;
    GameSchedule schedule;
    PlayerSpec x, y;
  };
  const PlayerSpec hedge = PlayerSpec::TwoLayer(LearnerKind::kHedgeFixedShare);
  const PlayerSpec ogd = PlayerSpec::TwoLayer(LearnerKind::kOptimisticOgd);
  std::vector<Case> cases;
  cases.push_back({"two_phase nash_oracle", GameSchedule::TwoPhase(2000),
                   PlayerSpec::NashOracle(), PlayerSpec::NashOracle()});
  cases.push_back({"two_phase two_layer", GameSchedule::TwoPhase(2000), hedge, hedge});
  cases.push_back({"appendix_g two_layer", GameSchedule::DriftingEpochs(4096), hedge, hedge});
  cases.push_back({"appendix_g adversary", GameSchedule::DriftingEpochs(4096), hedge,
                   PlayerSpec::Adversary()});
  cases.push_back({"appendix_g single_base", GameSchedule::DriftingEpochs(4096),
                   PlayerSpec::SingleBase(LearnerKind::kHedgeFixedShare, 0.5),
                   PlayerSpec::SingleBase(LearnerKind::kHedgeFixedShare, 0.5)});
  cases.push_back({"stationary ogd", GameSchedule::Stationary(PayoffMatrix{{1, -1}, {-1, 1}}, 2000),
                   ogd, ogd});
  cases.push_back({"periodic_drift", GameSchedule::PeriodicDrift(PayoffMatrix{{0.2, -0.7, 1}, {-0.4, 0.9, 0}},
                                                                 {1, -1, 0.5}, 1500),
                   hedge, ogd});

  // Seeded piecewise-constant random schedule.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<long> run(1, 200);
  std::vector<GameSchedule::Step> steps;
  long total = 0;
  const long horizon = 2000;
  while (total < horizon) {
    std::vector<double> e(12);
    for (double& v : e) v = entry(rng);
    const long r = std::min(run(rng), horizon - total);
    steps.push_back({PayoffMatrix(3, 4, e), r});
    total += r;
  }
  cases.push_back({"random steps seed " + std::to_string(seed),
                   GameSchedule::FromSteps(std::move(steps), horizon), hedge, hedge});

  for (const Case& c : cases) {
    const RunResult r = Simulate(c.schedule, c.x, c.y, 50);
    report.worst = std::min(report.worst, r.invariants.worst_slack);
    Record(report, r.invariants.holds(),
           {{"case", c.name}, {"first_violation", r.invariants.first_violation}});
    const NonstationarityMeasures& ms = r.measures;
    Record(report, ms.variation <= 4.0 * ms.deviation + 1e-9,
           {{"case", c.name}, {"V_T", ms.variation}, {"W_T", ms.deviation}});
  }
  return report;
}

}  // namespace tvgame
