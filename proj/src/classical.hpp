#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core.hpp"

namespace rocsbb {

enum class CdfMethod {
  empirical,
  kernel_nrd0,
  kernel_ucv,
  normal_parametric,
};

struct BandwidthRule {
  enum class Kind { nrd0, ucv, fixed };
  Kind kind = Kind::nrd0;
  std::optional<double> fixed_value;
};

struct UcvResult {
  double h = 0.0;
  bool hit_boundary = false;  // optimizer stopped at a search-interval endpoint
};

struct FrequentistVusResult {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t resamples = 0;
};

// Fraction of values <= z.
double empirical_cdf(const std::vector<double>& values, double z);

// Gaussian-smoothed CDF: mean of Phi((z - y_i) / h).
double kernel_cdf(const std::vector<double>& values, double h, double z);

// Rule-of-thumb bandwidth 0.9 * min{SD, IQR/1.34} * n^{-1/5}.
double bandwidth_nrd0(const std::vector<double>& values);

// Least-squares cross-validation bandwidth: minimizes the Gaussian-kernel
// UCV criterion over [lo, hi] by golden-section search. With lo/hi <= 0 the
// default interval [nrd0/20, 5*nrd0] is used.
UcvResult bandwidth_ucv(const std::vector<double>& values, double lo = 0.0, double hi = 0.0);

// The UCV objective itself, exposed for testing.
double ucv_criterion(const std::vector<double>& values, double h);

// Plug-in ROC surface: F2(F3^{-1}(1-p3)) - F2(F1^{-1}(p1)), floored at 0,
// with per-group CDFs estimated by the chosen method.
RocSurfaceEstimate plug_in_surface(const ThreeGroupSample& sample, CdfMethod method,
                                   const ProbabilityGrid& grid);

// Closed-form empirical VUS: fraction of (i,j,l) triples with
// y1_i < y2_j < y3_l (strict).
double empirical_vus(const ThreeGroupSample& sample);

// Closed-form kernel VUS with Gaussian smoothing.
double kernel_vus(const ThreeGroupSample& sample, double h1, double h2, double h3);

// Per-rule bandwidths for the three groups.
struct GroupBandwidths {
  double h1, h2, h3;
};
GroupBandwidths group_bandwidths(const ThreeGroupSample& sample, CdfMethod method);

// Nonparametric bootstrap percentile CI for the VUS; groups are resampled
// with replacement within themselves, bandwidths recomputed per resample.
FrequentistVusResult bootstrap_vus_ci(const ThreeGroupSample& sample, CdfMethod method,
                                      std::size_t resamples, double level,
                                      std::uint64_t seed, int threads = 0);

}  // namespace rocsbb
