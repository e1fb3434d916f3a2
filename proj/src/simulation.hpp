#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bb.hpp"
#include "classical.hpp"
#include "core.hpp"
#include "dist.hpp"

namespace rocsbb {

// A declarative three-group data-generating process.
struct ScenarioSpec {
  int id = 0;  // 1..4 for the builtin scenarios, 0 for custom
  Distribution dist1;
  Distribution dist2;
  Distribution dist3;
};

// The four builtin simulation scenarios:
//   1: N(0,1), N(1.5,1), N(3,1)
//   2: Gamma(2,1), Gamma(3,1), Gamma(5,2)          (shape-rate)
//   3: t_2, Beta(2,2), ChiSquare(2)
//   4: three two-component normal mixtures
ScenarioSpec builtin_scenario(int id);

// Reference true-VUS constant for a builtin scenario, with the Monte Carlo
// standard error of the run that produced it (see data/scenario_truth.json).
struct TrueVusConstant {
  double vus;
  double se;
  std::uint64_t draws;
};
TrueVusConstant reference_true_vus(int scenario_id);

ThreeGroupSample generate_dataset(const ScenarioSpec& spec,
                                  std::size_t n1, std::size_t n2, std::size_t n3,
                                  std::uint64_t seed);

// Analytic (to inversion tolerance) ROC surface of the data-generating
// process on the grid.
RocSurfaceEstimate true_surface(const ScenarioSpec& spec, const ProbabilityGrid& grid);

// Monte Carlo estimate of Pr(Y1 < Y2 < Y3).
double true_vus_mc(const ScenarioSpec& spec, std::uint64_t draws, std::uint64_t seed,
                   int threads = 0);

enum class Estimator {
  bb,
  empirical,
  kernel_nrd0,
  kernel_ucv,
  normal_parametric,
  oracle,  // returns the true surface; testing hook
};

std::string estimator_name(Estimator e);

struct StudyConfig {
  ScenarioSpec scenario;
  std::size_t n1 = 50, n2 = 50, n3 = 50;
  std::size_t n_datasets = 300;
  std::vector<Estimator> estimators{Estimator::bb, Estimator::empirical,
                                    Estimator::kernel_nrd0, Estimator::kernel_ucv};
  std::size_t bb_replicates = 2000;
  double credibility_level = 0.95;
  ProbabilityGrid grid = default_grid(50);
  std::uint64_t seed = 0;
  int threads = 0;
  // True VUS used for coverage; defaults to the builtin reference constant,
  // or a fresh Monte Carlo run for custom scenarios.
  std::optional<double> true_vus;
};

struct StudyCell {
  std::size_t dataset = 0;
  Estimator estimator = Estimator::bb;
  double emse = 0.0;
  double vus = 0.0;
  // BB only: credible interval and whether it covers the true VUS.
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  bool has_interval = false;
  bool covered = false;
  bool failed = false;  // estimator failed on this dataset; values are NaN
  std::string failure;
};

struct StudyResult {
  std::vector<StudyCell> cells;  // dataset-major, estimator order as configured
  double true_vus = 0.0;
  // Coverage rate of the BB credible interval over non-failed datasets;
  // NaN when BB was not run.
  double coverage = 0.0;
};

// Generates n_datasets datasets and records, per estimator, the EMSE against
// the true surface and the VUS estimate (plus coverage bookkeeping for BB).
StudyResult run_study(const StudyConfig& config);

inline StudyResult run_emse_study(const StudyConfig& config) { return run_study(config); }

double run_coverage_study(const StudyConfig& config);

}  // namespace rocsbb
