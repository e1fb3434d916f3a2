#pragma once

#include <cstdint>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace rocsbb {

// Flat Dirichlet(1,...,1) weight vector: one weight per observation,
// nonnegative, summing to one.
using DirichletWeights = std::vector<double>;

// Placement variables of the group-2 observations against the Bayesian
// bootstrap CDFs of groups 1 and 3.
struct PlacementDraw {
  std::vector<double> u1;  // weighted fraction of y1 <= y2[j]
  std::vector<double> u3;  // weighted fraction of y3 >  y2[j]
};

struct BbConfig {
  std::size_t replicates = 2000;
  ProbabilityGrid grid = default_grid(50);
  double credibility_level = 0.95;
  std::uint64_t seed = 0;
  int threads = 0;          // <= 0: machine parallelism
  bool keep_draws = false;  // retain the per-replicate surface matrices

  void validate() const;
};

struct BbResult {
  RocSurfaceEstimate surface;  // values = posterior mean over replicates
  VusPosterior vus;
};

// n unit-rate exponentials normalized to sum one.
DirichletWeights sample_flat_dirichlet(std::size_t n, Rng& rng);

PlacementDraw placement_draw(const ThreeGroupSample& sample,
                             const DirichletWeights& v1,
                             const DirichletWeights& v3);

// One weighted realisation of the ROC surface: at each lattice point the
// w3-weighted survival of u3 minus the w1-weighted CDF of u1, floored at 0.
Matrix surface_replicate(const PlacementDraw& draw, const DirichletWeights& w1,
                         const DirichletWeights& w3, const ProbabilityGrid& grid);

// Full Bayesian bootstrap run: fresh weight draws per replicate, pointwise
// mean surface, VUS draws with mean and equal-tailed percentile interval.
// Deterministic given (sample, config), independent of the thread count.
BbResult bb_estimate(const ThreeGroupSample& sample, const BbConfig& config);

struct CdfBand {
  std::vector<double> z;
  std::vector<double> mean;
  std::vector<double> lower;
  std::vector<double> upper;
};

// Pointwise posterior mean and percentile band of the BB-weighted ECDF of
// `values` on the z grid.
CdfBand bb_cdf_band(const std::vector<double>& values, const std::vector<double>& grid_z,
                    std::size_t b, double level, std::uint64_t seed, int threads = 1);

}  // namespace rocsbb
