#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gammareg {

// Strictly increasing, finite abscissae; at least two of them.
class Grid1D {
 public:
  explicit Grid1D(std::vector<double> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }
  double front() const noexcept { return nodes_.front(); }
  double back() const noexcept { return nodes_.back(); }
  std::span<const double> nodes() const noexcept { return nodes_; }

  // Index of the node equal to x, if any.
  std::optional<std::size_t> find(double x) const;
  // Index i with nodes[i] <= x <= nodes[i+1]; requires front() <= x <= back().
  std::size_t segment(double x) const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::vector<double> nodes_;
};

Grid1D make_uniform_grid(double a, double b, std::size_t n);

// Symmetric grid clustered at 0: node k of K = (n-1)/2 on each side sits at
// R * (k/K)^p with R = max(|a|, |b|), clipped to [a, b]. Clipped duplicates
// collapse onto the boundary, so asymmetric intervals yield fewer than n nodes.
Grid1D make_graded_grid(double a, double b, std::size_t n, double p);

// Function values on a Grid1D, read as a piecewise-linear function.
class SampledFn1D {
 public:
  SampledFn1D(Grid1D grid, std::vector<double> values);

  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double x(std::size_t i) const noexcept { return grid_[i]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

// Samples fn at every node of grid.
template <typename Fn>
SampledFn1D sample(const Grid1D& grid, Fn&& fn) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = fn(grid[i]);
  return SampledFn1D(grid, std::move(values));
}

double eval_pl(const SampledFn1D& f, double x);

// F(x_0) = 0, F(x_k) = trapezoid integral of f over [x_0, x_k].
SampledFn1D cumulative_trapezoid(const SampledFn1D& f);

// Tensor grid with a membership mask. Nodes are addressed (ix, iy); masked
// nodes are numbered 0..masked_count()-1 in row-major order (y outer, x inner).
class Grid2D {
 public:
  static constexpr double kDefaultDiskTolerance = 1e-12;

  // Mask = unit disk x^2 + y^2 <= 1 + tolerance.
  Grid2D(Grid1D xs, Grid1D ys, double tolerance = kDefaultDiskTolerance);
  // Explicit mask, indexed iy * xs.size() + ix.
  Grid2D(Grid1D xs, Grid1D ys, std::vector<bool> mask);

  const Grid1D& xs() const noexcept { return xs_; }
  const Grid1D& ys() const noexcept { return ys_; }
  std::size_t nx() const noexcept { return xs_.size(); }
  std::size_t ny() const noexcept { return ys_.size(); }
  double tolerance() const noexcept { return tolerance_; }

  bool masked(std::size_t ix, std::size_t iy) const noexcept {
    return index_[iy * nx() + ix] >= 0;
  }
  // Masked-node number of (ix, iy), or nullopt when off-mask.
  std::optional<std::size_t> masked_index(std::size_t ix, std::size_t iy) const;
  std::size_t masked_count() const noexcept { return cells_.size(); }
  // (ix, iy) of masked node k.
  std::pair<std::size_t, std::size_t> cell(std::size_t k) const noexcept {
    return cells_[k];
  }
  double x_of(std::size_t k) const noexcept { return xs_[cells_[k].first]; }
  double y_of(std::size_t k) const noexcept { return ys_[cells_[k].second]; }

  // True when the mask is exactly the unit disk at the recorded tolerance.
  bool is_unit_disk() const;

 private:
  void index_mask(const std::vector<bool>& mask);

  Grid1D xs_;
  Grid1D ys_;
  double tolerance_ = kDefaultDiskTolerance;
  std::vector<long> index_;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
};

// n x n uniform grid on [-1, 1]^2 masked to the unit disk.
Grid2D make_disk_grid(std::size_t n,
                      double tolerance = Grid2D::kDefaultDiskTolerance);

// Values on the masked nodes of a Grid2D; off-mask values are absent.
class SampledFn2D {
 public:
  SampledFn2D(Grid2D grid, std::vector<double> values);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }
  std::optional<double> at(std::size_t ix, std::size_t iy) const;

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

template <typename Fn>
SampledFn2D sample(const Grid2D& grid, Fn&& fn) {
  std::vector<double> values(grid.masked_count());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = fn(grid.x_of(k), grid.y_of(k));
  }
  return SampledFn2D(grid, std::move(values));
}

}  // namespace gammareg
