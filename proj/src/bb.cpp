#include "bb.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "parallel.hpp"
#include "stats.hpp"
#include "weighted_ecdf.hpp"

namespace rocsbb {

namespace {

constexpr std::size_t kBlockSize = 32;

void percentile_interval(std::vector<double> draws, double level, double& lower,
                         double& upper) {
  std::sort(draws.begin(), draws.end());
  const double alpha = (1.0 - level) / 2.0;
  lower = quantile_sorted(draws, alpha);
  upper = quantile_sorted(draws, 1.0 - alpha);
}

}  // namespace

void BbConfig::validate() const {
  if (replicates < 1) throw_usage("b_replicates must be >= 1");
  if (!(credibility_level > 0.0 && credibility_level < 1.0)) {
    throw_usage("credibility level must be in (0,1)");
  }
  grid.validate();
}

DirichletWeights sample_flat_dirichlet(std::size_t n, Rng& rng) {
  if (n == 0) throw_usage("Dirichlet weight vector needs n >= 1");
  DirichletWeights w(n);
  double total = 0.0;
  for (double& wi : w) {
    wi = rng.exponential();
    total += wi;
  }
  for (double& wi : w) wi /= total;
  return w;
}

PlacementDraw placement_draw(const ThreeGroupSample& sample, const DirichletWeights& v1,
                             const DirichletWeights& v3) {
  if (v1.size() != sample.n1() || v3.size() != sample.n3()) {
    throw_usage("placement_draw: weight lengths must match group sizes");
  }
  const WeightedEcdf f1(sample.y1, v1);
  const WeightedEcdf f3(sample.y3, v3);

  PlacementDraw draw;
  draw.u1.reserve(sample.n2());
  draw.u3.reserve(sample.n2());
  for (double y : sample.y2) {
    draw.u1.push_back(f1.cdf(y));       // inclusive: y1 <= y2[j]
    draw.u3.push_back(f3.survival(y));  // strict:    y3 >  y2[j]
  }
  return draw;
}

Matrix surface_replicate(const PlacementDraw& draw, const DirichletWeights& w1,
                         const DirichletWeights& w3, const ProbabilityGrid& grid) {
  const std::size_t n2 = draw.u1.size();
  if (draw.u3.size() != n2 || w1.size() != n2 || w3.size() != n2) {
    throw_usage("surface_replicate: weight lengths must match n2");
  }
  const WeightedEcdf cdf_u1(draw.u1, w1);
  const WeightedEcdf surv_u3(draw.u3, w3);

  std::vector<double> c1(grid.np1());
  std::vector<double> s3(grid.np3());
  for (std::size_t i = 0; i < grid.np1(); ++i) c1[i] = cdf_u1.cdf(grid.p1_points[i]);
  for (std::size_t j = 0; j < grid.np3(); ++j) s3[j] = surv_u3.survival(grid.p3_points[j]);

  Matrix m(grid.np1(), grid.np3());
  for (std::size_t i = 0; i < grid.np1(); ++i) {
    for (std::size_t j = 0; j < grid.np3(); ++j) {
      m(i, j) = std::max(0.0, s3[j] - c1[i]);
    }
  }
  return m;
}

BbResult bb_estimate(const ThreeGroupSample& sample, const BbConfig& config) {
  sample.validate();
  config.validate();
  const ProbabilityGrid& grid = config.grid;
  const std::size_t b_total = config.replicates;
  const std::size_t cells = grid.np1() * grid.np3();
  const std::size_t n_blocks = (b_total + kBlockSize - 1) / kBlockSize;

  std::vector<Matrix> block_sums(n_blocks);
  std::vector<double> vus_draws(b_total);
  std::vector<Matrix> kept;
  if (config.keep_draws) kept.resize(b_total);

  for_each_block(b_total, kBlockSize, config.threads,
                 [&](std::size_t begin, std::size_t end, std::size_t blk) {
                   Matrix acc(grid.np1(), grid.np3());
                   for (std::size_t b = begin; b < end; ++b) {
                     Rng rng(substream_seed(config.seed, b));
                     const auto v1 = sample_flat_dirichlet(sample.n1(), rng);
                     const auto v3 = sample_flat_dirichlet(sample.n3(), rng);
                     const auto draw = placement_draw(sample, v1, v3);
                     const auto w1 = sample_flat_dirichlet(sample.n2(), rng);
                     const auto w3 = sample_flat_dirichlet(sample.n2(), rng);
                     Matrix m = surface_replicate(draw, w1, w3, grid);
                     for (std::size_t k = 0; k < cells; ++k) acc.data()[k] += m.data()[k];
                     vus_draws[b] = vus_from_surface(m);
                     if (config.keep_draws) kept[b] = std::move(m);
                   }
                   block_sums[blk] = std::move(acc);
                 });

  // Merge in block order: the result does not depend on the thread count.
  Matrix mean_surface(grid.np1(), grid.np3());
  for (const Matrix& blk : block_sums) {
    for (std::size_t k = 0; k < cells; ++k) mean_surface.data()[k] += blk.data()[k];
  }
  for (double& v : mean_surface.data()) v /= static_cast<double>(b_total);

  BbResult result;
  result.surface.grid = grid;
  result.surface.values = std::move(mean_surface);
  result.surface.draws = std::move(kept);
  result.vus.level = config.credibility_level;
  result.vus.mean = mean(vus_draws);
  percentile_interval(vus_draws, config.credibility_level, result.vus.lower,
                      result.vus.upper);
  result.vus.draws = std::move(vus_draws);
  return result;
}

CdfBand bb_cdf_band(const std::vector<double>& values, const std::vector<double>& grid_z,
                    std::size_t b, double level, std::uint64_t seed, int threads) {
  if (values.empty()) throw_usage("bb_cdf_band: empty sample");
  if (b < 1) throw_usage("bb_cdf_band: b must be >= 1");
  if (!(level > 0.0 && level < 1.0)) throw_usage("bb_cdf_band: level must be in (0,1)");

  const std::size_t nz = grid_z.size();
  // draws_at[k] holds the b weighted-ECDF values at grid_z[k].
  std::vector<std::vector<double>> draws_at(nz, std::vector<double>(b));

  for_each_block(b, kBlockSize, threads,
                 [&](std::size_t begin, std::size_t end, std::size_t) {
                   for (std::size_t rep = begin; rep < end; ++rep) {
                     Rng rng(substream_seed(seed, rep));
                     const auto w = sample_flat_dirichlet(values.size(), rng);
                     const WeightedEcdf f(values, w);
                     for (std::size_t k = 0; k < nz; ++k) {
                       draws_at[k][rep] = f.cdf(grid_z[k]);
                     }
                   }
                 });

  CdfBand band;
  band.z = grid_z;
  band.mean.resize(nz);
  band.lower.resize(nz);
  band.upper.resize(nz);
  for (std::size_t k = 0; k < nz; ++k) {
    band.mean[k] = mean(draws_at[k]);
    percentile_interval(std::move(draws_at[k]), level, band.lower[k], band.upper[k]);
  }
  return band;
}

}  // namespace rocsbb
