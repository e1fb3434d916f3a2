#include "classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>

#include "dist.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "weighted_ecdf.hpp"

namespace rocsbb {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void require_nonempty(const std::vector<double>& values, const char* who) {
  if (values.empty()) throw_usage(std::string(who) + ": empty input");
}

double spread_guard(const std::vector<double>& values, const char* who) {
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (*mn == *mx) throw_degenerate(std::string(who) + ": all values identical (zero spread)");
  return *mx - *mn;
}

// CDF plus generalized-inverse quantile for one group, per estimation method.
struct FittedCdf {
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;
};

FittedCdf fit_empirical(const std::vector<double>& values) {
  const std::vector<double> w(values.size(), 1.0 / static_cast<double>(values.size()));
  auto ecdf = std::make_shared<WeightedEcdf>(values, w);
  return {[ecdf](double z) { return ecdf->cdf(z); },
          [ecdf](double p) { return ecdf->quantile(p); }};
}

FittedCdf fit_kernel(const std::vector<double>& values, double h) {
  auto vals = std::make_shared<std::vector<double>>(values);
  auto cdf = [vals, h](double z) { return kernel_cdf(*vals, h, z); };
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo0 = *mn - 10.0 * h;
  const double hi0 = *mx + 10.0 * h;
  auto quantile = [cdf, lo0, hi0](double p) {
    double lo = lo0, hi = hi0;
    while (hi - lo > 1e-10) {
      double mid = 0.5 * (lo + hi);
      if (cdf(mid) >= p) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  return {cdf, quantile};
}

FittedCdf fit_normal(const std::vector<double>& values) {
  if (values.size() < 2) throw_degenerate("normal fit needs n >= 2 per group");
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  const double sigma = std::sqrt(ss / static_cast<double>(values.size()));  // MLE, divisor n
  if (!(sigma > 0.0)) throw_degenerate("normal fit: zero variance");
  return {[mu, sigma](double z) { return normal_cdf((z - mu) / sigma); },
          [mu, sigma](double p) { return mu + sigma * normal_quantile(p); }};
}

FittedCdf fit_cdf(const std::vector<double>& values, CdfMethod method, double h) {
  switch (method) {
    case CdfMethod::empirical:
      return fit_empirical(values);
    case CdfMethod::kernel_nrd0:
    case CdfMethod::kernel_ucv:
      return fit_kernel(values, h);
    case CdfMethod::normal_parametric:
      return fit_normal(values);
  }
  throw_usage("plug_in_surface: unsupported method");
}

}  // namespace

double empirical_cdf(const std::vector<double>& values, double z) {
  require_nonempty(values, "empirical_cdf");
  std::size_t count = 0;
  for (double v : values) count += (v <= z) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(values.size());
}

double kernel_cdf(const std::vector<double>& values, double h, double z) {
  require_nonempty(values, "kernel_cdf");
  if (!(h > 0.0)) throw_usage("kernel_cdf: bandwidth must be > 0");
  double s = 0.0;
  for (double v : values) s += normal_cdf((z - v) / h);
  return s / static_cast<double>(values.size());
}

double bandwidth_nrd0(const std::vector<double>& values) {
  if (values.size() < 2) throw_degenerate("bandwidth_nrd0: need n >= 2");
  spread_guard(values, "bandwidth_nrd0");
  const double sd = sample_sd(values);
  const double iqr = interquartile_range(values);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;  // IQR can vanish with heavy ties; SD cannot here
  return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

double ucv_criterion(const std::vector<double>& values, double h) {
  const auto n = static_cast<double>(values.size());
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const double d = (values[i] - values[j]) / h;
      s += normal_pdf(d / M_SQRT2) / M_SQRT2 - 2.0 * normal_pdf(d);
    }
  }
  s *= 2.0;  // ordered pairs
  return 1.0 / (2.0 * n * h * kSqrtPi) + s / (n * (n - 1.0) * h);
}

UcvResult bandwidth_ucv(const std::vector<double>& values, double lo, double hi) {
  if (values.size() < 2) throw_degenerate("bandwidth_ucv: need n >= 2");
  spread_guard(values, "bandwidth_ucv");
  if (!(lo > 0.0) || !(hi > 0.0)) {
    const double h0 = bandwidth_nrd0(values);
    lo = h0 / 20.0;
    hi = 5.0 * h0;
  }
  if (!(lo < hi)) throw_usage("bandwidth_ucv: invalid search interval");

  // Golden-section to relative tolerance 1e-4; the positive lower bound keeps
  // the h -> 0 tie pathology (criterion diverging to -inf) out of reach.
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = ucv_criterion(values, c);
  double fd = ucv_criterion(values, d);
  while ((b - a) > 1e-4 * (std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = ucv_criterion(values, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = ucv_criterion(values, d);
    }
  }
  UcvResult result;
  result.h = 0.5 * (a + b);
  const double span = hi - lo;
  result.hit_boundary = (result.h - lo) < 0.005 * span || (hi - result.h) < 0.005 * span;
  return result;
}

GroupBandwidths group_bandwidths(const ThreeGroupSample& sample, CdfMethod method) {
  switch (method) {
    case CdfMethod::kernel_nrd0:
      return {bandwidth_nrd0(sample.y1), bandwidth_nrd0(sample.y2), bandwidth_nrd0(sample.y3)};
    case CdfMethod::kernel_ucv:
      return {bandwidth_ucv(sample.y1).h, bandwidth_ucv(sample.y2).h, bandwidth_ucv(sample.y3).h};
    default:
      throw_usage("group_bandwidths: method has no bandwidth rule");
  }
}

RocSurfaceEstimate plug_in_surface(const ThreeGroupSample& sample, CdfMethod method,
                                   const ProbabilityGrid& grid) {
  sample.validate();
  grid.validate();

  double h1 = 0.0, h2 = 0.0, h3 = 0.0;
  if (method == CdfMethod::kernel_nrd0 || method == CdfMethod::kernel_ucv) {
    const auto h = group_bandwidths(sample, method);
    h1 = h.h1;
    h2 = h.h2;
    h3 = h.h3;
  }
  const FittedCdf f1 = fit_cdf(sample.y1, method, h1);
  const FittedCdf f2 = fit_cdf(sample.y2, method, h2);
  const FittedCdf f3 = fit_cdf(sample.y3, method, h3);

  RocSurfaceEstimate est;
  est.grid = grid;
  est.values = Matrix(grid.np1(), grid.np3());

  std::vector<double> f2_at_q1(grid.np1());
  std::vector<double> f2_at_q3(grid.np3());
  for (std::size_t i = 0; i < grid.np1(); ++i) {
    f2_at_q1[i] = f2.cdf(f1.quantile(grid.p1_points[i]));
  }
  for (std::size_t j = 0; j < grid.np3(); ++j) {
    f2_at_q3[j] = f2.cdf(f3.quantile(1.0 - grid.p3_points[j]));
  }
  for (std::size_t i = 0; i < grid.np1(); ++i) {
    for (std::size_t j = 0; j < grid.np3(); ++j) {
      est.values(i, j) = std::max(0.0, f2_at_q3[j] - f2_at_q1[i]);
    }
  }
  return est;
}

double empirical_vus(const ThreeGroupSample& sample) {
  sample.validate();
  std::vector<double> s1 = sample.y1;
  std::vector<double> s3 = sample.y3;
  std::sort(s1.begin(), s1.end());
  std::sort(s3.begin(), s3.end());

  unsigned long long triples = 0;
  for (double y : sample.y2) {
    const auto below = static_cast<unsigned long long>(
        std::lower_bound(s1.begin(), s1.end(), y) - s1.begin());  // y1 <  y
    const auto above = static_cast<unsigned long long>(
        s3.end() - std::upper_bound(s3.begin(), s3.end(), y));    // y3 >  y
    triples += below * above;
  }
  const double denom = static_cast<double>(sample.n1()) * static_cast<double>(sample.n2()) *
                       static_cast<double>(sample.n3());
  return static_cast<double>(triples) / denom;
}

double kernel_vus(const ThreeGroupSample& sample, double h1, double h2, double h3) {
  sample.validate();
  if (!(h1 > 0.0) || !(h2 > 0.0) || !(h3 > 0.0)) {
    throw_usage("kernel_vus: bandwidths must be > 0");
  }
  const double s12 = std::sqrt(h1 * h1 + h2 * h2);
  const double s23 = std::sqrt(h2 * h2 + h3 * h3);
  double total = 0.0;
  for (double y2 : sample.y2) {
    double a = 0.0;
    for (double y1 : sample.y1) a += normal_cdf((y2 - y1) / s12);
    double b = 0.0;
    for (double y3 : sample.y3) b += normal_cdf((y3 - y2) / s23);
    total += a * b;
  }
  const double denom = static_cast<double>(sample.n1()) * static_cast<double>(sample.n2()) *
                       static_cast<double>(sample.n3());
  return total / denom;
}

namespace {

std::vector<double> resample_group(const std::vector<double>& values, Rng& rng) {
  std::vector<double> out(values.size());
  for (double& v : out) {
    auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(values.size()));
    if (idx >= values.size()) idx = values.size() - 1;
    v = values[idx];
  }
  return out;
}

double vus_point(const ThreeGroupSample& sample, CdfMethod method) {
  switch (method) {
    case CdfMethod::empirical:
      return empirical_vus(sample);
    case CdfMethod::kernel_nrd0:
    case CdfMethod::kernel_ucv: {
      const auto h = group_bandwidths(sample, method);
      return kernel_vus(sample, h.h1, h.h2, h.h3);
    }
    default:
      throw_usage("bootstrap_vus_ci: unsupported estimator");
  }
}

}  // namespace

FrequentistVusResult bootstrap_vus_ci(const ThreeGroupSample& sample, CdfMethod method,
                                      std::size_t resamples, double level,
                                      std::uint64_t seed, int threads) {
  sample.validate();
  if (resamples < 1) throw_usage("bootstrap_vus_ci: resamples must be >= 1");
  if (!(level > 0.0 && level < 1.0)) throw_usage("bootstrap_vus_ci: level must be in (0,1)");

  FrequentistVusResult result;
  result.point = vus_point(sample, method);
  result.resamples = resamples;

  constexpr int kMaxRetries = 100;
  std::vector<double> estimates(resamples);
  for_each_block(resamples, 32, threads,
                 [&](std::size_t begin, std::size_t end, std::size_t) {
                   for (std::size_t r = begin; r < end; ++r) {
                     Rng rng(substream_seed(seed, r));
                     int attempt = 0;
                     for (;;) {
                       ThreeGroupSample boot{resample_group(sample.y1, rng),
                                             resample_group(sample.y2, rng),
                                             resample_group(sample.y3, rng)};
                       try {
                         estimates[r] = vus_point(boot, method);
                         break;
                       } catch (const Error& e) {
                         if (e.code() != ErrorCode::degenerate || ++attempt >= kMaxRetries) {
                           throw;
                         }
                         // degenerate resample (e.g. all ties under UCV): redraw
                       }
                     }
                   }
                 });

  std::sort(estimates.begin(), estimates.end());
  const double alpha = (1.0 - level) / 2.0;
  result.lower = quantile_sorted(estimates, alpha);
  result.upper = quantile_sorted(estimates, 1.0 - alpha);
  return result;
}

}  // namespace rocsbb
