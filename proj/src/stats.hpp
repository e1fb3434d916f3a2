#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rocsbb {

inline double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Sample standard deviation, divisor n-1.
inline double sample_sd(std::span<const double> x) {
  double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

// Quantile with linear interpolation between order statistics at plotting
// positions (k-1)/(n-1) (R's default, type 7). Input must be sorted.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  double pos = p * static_cast<double>(n - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo >= n - 1) return sorted[n - 1];
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  return quantile_sorted(x, p);
}

inline double interquartile_range(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  return quantile_sorted(x, 0.75) - quantile_sorted(x, 0.25);
}

}  // namespace rocsbb
