#include "core.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace rocsbb {

namespace {

void check_group(const std::vector<double>& y, const char* name) {
  if (y.empty()) throw_usage(std::string(name) + " is empty; each group needs at least one observation");
  for (double v : y) {
    if (!std::isfinite(v)) throw_data(std::string("non-finite value in ") + name);
  }
}

}  // namespace

void ThreeGroupSample::validate() const {
  check_group(y1, "group 1");
  check_group(y2, "group 2");
  check_group(y3, "group 3");
}

void ProbabilityGrid::validate() const {
  auto check_axis = [](const std::vector<double>& p, const char* name) {
    if (p.empty()) throw_usage(std::string(name) + " grid axis is empty");
    double prev = -1.0;
    for (double v : p) {
      if (!(v >= 0.0 && v <= 1.0)) throw_usage(std::string(name) + " grid point outside [0,1]");
      if (v <= prev) throw_usage(std::string(name) + " grid points must be strictly increasing");
      prev = v;
    }
  };
  check_axis(p1_points, "p1");
  check_axis(p3_points, "p3");
}

ProbabilityGrid default_grid(std::size_t n_points) {
  if (n_points < 2) throw_usage("grid needs at least 2 points per axis");
  constexpr double lo = 0.0001;
  constexpr double hi = 0.9999;
  std::vector<double> p(n_points);
  const double step = (hi - lo) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    p[i] = lo + step * static_cast<double>(i);
  }
  p.back() = hi;
  return ProbabilityGrid{p, p};
}

double vus_from_surface(const Matrix& surface) {
  if (surface.size() == 0) throw_usage("vus_from_surface: empty matrix");
  double s = 0.0;
  for (double v : surface.data()) s += v;
  return s / static_cast<double>(surface.size());
}

double vus_from_surface(const Matrix& surface, const ProbabilityGrid& grid) {
  if (surface.rows() != grid.np1() || surface.cols() != grid.np3()) {
    throw_usage("vus_from_surface: matrix shape does not match the grid");
  }
  return vus_from_surface(surface);
}

double emse(const Matrix& estimate, const Matrix& truth) {
  if (!estimate.same_shape(truth) || estimate.size() == 0) {
    throw_usage("emse: matrix dimensions do not match");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < estimate.size(); ++k) {
    const double d = estimate.data()[k] - truth.data()[k];
    s += d * d;
  }
  return s / static_cast<double>(estimate.size());
}

}  // namespace rocsbb
