#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace rocsbb {

// Weighted empirical CDF: values with per-observation weights summing to 1.
// Shared by the Bayesian-bootstrap replicates and the classical empirical
// surface (which is the equal-weight special case); using one accumulation
// scheme keeps the two paths bit-identical under degenerate weights.
class WeightedEcdf {
public:
  WeightedEcdf(const std::vector<double>& values, const std::vector<double>& weights) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    sorted_.resize(n);
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
      sorted_[k] = values[order[k]];
      w[k] = weights[order[k]];
    }

    // prefix_[k] = mass of the k smallest observations; suffix_[k] = mass of
    // the n-k largest. Full mass is pinned to exactly 1 (the weights sum to 1
    // by construction, up to rounding).
    prefix_.assign(n + 1, 0.0);
    suffix_.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) prefix_[k + 1] = prefix_[k] + w[k];
    for (std::size_t k = n; k-- > 0;) suffix_[k] = suffix_[k + 1] + w[k];
    prefix_[n] = 1.0;
    suffix_[0] = 1.0;
  }

  // Mass at or below z.
  double cdf(double z) const {
    const auto k = static_cast<std::size_t>(
        std::upper_bound(sorted_.begin(), sorted_.end(), z) - sorted_.begin());
    return prefix_[k];
  }

  // Mass strictly above z.
  double survival(double z) const {
    const auto k = static_cast<std::size_t>(
        std::upper_bound(sorted_.begin(), sorted_.end(), z) - sorted_.begin());
    return suffix_[k];
  }

  // Generalized inverse inf{x : F(x) >= p}.
  double quantile(double p) const {
    const auto it = std::lower_bound(prefix_.begin() + 1, prefix_.end(), p);
    const auto k = static_cast<std::size_t>(it - (prefix_.begin() + 1));
    return sorted_[std::min(k, sorted_.size() - 1)];
  }

  const std::vector<double>& sorted_values() const { return sorted_; }

private:
  std::vector<double> sorted_;
  std::vector<double> prefix_;
  std::vector<double> suffix_;
};

}  // namespace rocsbb
