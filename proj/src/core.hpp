#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace rocsbb {

// Row-major matrix of surface values; rows index p1, columns index p3.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Raw continuous test outcomes for the three ordered groups. Group 3 is
// expected to tend to higher values than group 2, which tends higher than
// group 1, but this is not enforced.
struct ThreeGroupSample {
  std::vector<double> y1;
  std::vector<double> y2;
  std::vector<double> y3;

  std::size_t n1() const { return y1.size(); }
  std::size_t n2() const { return y2.size(); }
  std::size_t n3() const { return y3.size(); }

  // Throws on empty groups or non-finite entries.
  void validate() const;
};

// Evaluation lattice on the unit square.
struct ProbabilityGrid {
  std::vector<double> p1_points;
  std::vector<double> p3_points;

  std::size_t np1() const { return p1_points.size(); }
  std::size_t np3() const { return p3_points.size(); }

  void validate() const;
};

// n_points equidistant values from 0.0001 to 0.9999, used on both axes.
// The offset endpoints avoid degenerate quantile evaluations at 0 and 1.
ProbabilityGrid default_grid(std::size_t n_points);

struct RocSurfaceEstimate {
  ProbabilityGrid grid;
  Matrix values;
  // Per-replicate matrices, retained only on request.
  std::vector<Matrix> draws;
};

struct VusPosterior {
  std::vector<double> draws;
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
};

// Grid-average VUS of a surface matrix (flat average over all lattice
// entries, matching the discretised double integral on an equidistant grid).
double vus_from_surface(const Matrix& surface);

// Same, with a shape check against the grid.
double vus_from_surface(const Matrix& surface, const ProbabilityGrid& grid);

// Grid-averaged squared pointwise discrepancy between two surfaces.
double emse(const Matrix& estimate, const Matrix& truth);

}  // namespace rocsbb
